#include "elastica/curve_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "elastica/errors.hpp"

namespace elastica {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path.string());
  return in;
}

double parse_number(const std::string& text, const std::filesystem::path& path, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (text.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InvalidInput(path.string() + ":" + std::to_string(line) + ": bad number '" + text + "'");
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_curve_csv(const std::filesystem::path& path, const DiscreteCurve& curve) {
  auto out = open_out(path);
  out << "x,y\n";
  for (const auto& p : curve.points()) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

DiscreteCurve read_curve_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  std::vector<Vec2> pts;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    if (lineno == 1 && line.rfind("x,y", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw InvalidInput(path.string() + ":" + std::to_string(lineno) + ": expected 'x,y'");
    }
    pts.push_back({parse_number(line.substr(0, comma), path, lineno),
                   parse_number(line.substr(comma + 1), path, lineno)});
  }
  return DiscreteCurve(std::move(pts));
}

void write_curve_json(const std::filesystem::path& path, const DiscreteCurve& curve) {
  auto out = open_out(path);
  // hand-written so every coordinate keeps 17 significant digits
  out << "{\"points\": [";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (i) out << ", ";
    out << '[' << format_double(curve[i].x) << ", " << format_double(curve[i].y) << ']';
  }
  out << "]}\n";
}

DiscreteCurve read_curve_json(const std::filesystem::path& path) {
  auto in = open_in(path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
    throw InvalidInput(path.string() + ": expected an object with a \"points\" array");
  }
  std::vector<Vec2> pts;
  for (const auto& p : doc["points"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw InvalidInput(path.string() + ": every point must be [x, y]");
    }
    pts.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return DiscreteCurve(std::move(pts));
}

DiscreteCurve read_curve(const std::filesystem::path& path) {
  if (path.extension() == ".json") return read_curve_json(path);
  return read_curve_csv(path);
}

}  // namespace elastica
