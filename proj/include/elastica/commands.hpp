#pragma once

#include <filesystem>
#include <ostream>
#include <vector>

#include "elastica/catalog.hpp"
#include "elastica/config.hpp"

namespace elastica {

enum ExitCode { kExitOk = 0, kExitNumeric = 1, kExitConfig = 2 };

// Each command writes its artifacts under cfg.out and a summary to `out`;
// errors go to `err`.
int cmd_flow(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_catalog(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// the initial curve described by the config, n segments
DiscreteCurve initial_curve(const RunConfig& cfg);

// catalog.json written by cmd_catalog; curve files are resolved relative to it
void write_catalog(const std::filesystem::path& dir, const Catalog& catalog);
std::vector<EquilibriumRecord> read_catalog(const std::filesystem::path& file);

}  // namespace elastica
