#pragma once

#include <filesystem>
#include <string>

#include "elastica/curve.hpp"

namespace elastica {

// "%.17g" so doubles round-trip exactly
std::string format_double(double v);

// CSV with header "x,y"
void write_curve_csv(const std::filesystem::path& path, const DiscreteCurve& curve);
DiscreteCurve read_curve_csv(const std::filesystem::path& path);

// {"points": [[x, y], ...]}
void write_curve_json(const std::filesystem::path& path, const DiscreteCurve& curve);
DiscreteCurve read_curve_json(const std::filesystem::path& path);

// dispatches on the file extension
DiscreteCurve read_curve(const std::filesystem::path& path);

}  // namespace elastica
