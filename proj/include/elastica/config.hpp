#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "elastica/flow.hpp"

namespace elastica {

// Invalid configuration. The message starts with an anchor: "file:line",
// "--override key" or "default".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { flow, catalog, sweep, verify };
std::string to_string(Command c);

struct InitialSpec {
  std::string generator = "sine";  // segment, sine, arc, hermite, loop, random, file
  double amplitude = 0.2;
  int wavenumber = 1;
  double height = 0.3;   // arc
  double speed = 1.0;    // hermite
  double radius = 1.0;   // loop
  std::size_t knots = 6;  // random
  std::string file;
};

struct CatalogOptions {
  double A = 30.0;
  int points_per_decade = 16;
  int energy_points = 20;
  int phase_points = 12;
  bool refine = false;  // doubles every grid density
  std::string path;     // catalog.json used by flow for the verdict
};

struct SweepOptions {
  double E_min = 1e-6;  // in units of lambda^4
  double E_max = 1e6;
  int points = 121;
  bool negative = true;  // also sweep E in (-lambda^4/4, 0)
};

struct VerifyOptions {
  bool mutation = false;  // run the energy-decay check with the sign of V flipped
  double grad_tol = 1e-6;
  std::size_t n = 256;
  int random_curves = 200;
  int variation_pairs = 20;
};

struct RunConfig {
  Command mode = Command::flow;
  double lambda = 2.0;
  BoundarySpec bc = BoundarySpec::navier(1.0, 0.0);
  InitialSpec initial;
  Schedule schedule;
  std::size_t n = 256;
  std::filesystem::path out = "run";
  std::uint64_t seed = 1;
  CatalogOptions catalog;
  SweepOptions sweep;
  VerifyOptions verify;

  std::string source_text;  // config file contents, verbatim
  nlohmann::json effective;  // after overrides
  std::vector<std::string> overrides;

  EnergyParams energy_params() const { return bc.energy_params(lambda); }
};

// Reads the JSON config (or starts from defaults when path is empty), applies
// dotted "key=value" overrides whose values are parsed as JSON when possible,
// and validates every field. Throws ConfigError.
RunConfig load_config(Command mode, const std::optional<std::filesystem::path>& path,
                      const std::vector<std::string>& overrides,
                      const std::optional<std::filesystem::path>& out = std::nullopt);

// same, from text already in memory; `origin` names it in messages
RunConfig parse_config(Command mode, const std::string& text, const std::string& origin,
                       const std::vector<std::string>& overrides);

}  // namespace elastica
