#include "elastica/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace elastica {

using nlohmann::json;

std::string to_string(Command c) {
  switch (c) {
    case Command::flow: return "flow";
    case Command::catalog: return "catalog";
    case Command::sweep: return "sweep";
    case Command::verify: return "verify";
  }
  return "unknown";
}

namespace {

const std::map<std::string, std::set<std::string>> kSchema = {
    {"", {"mode", "params", "bc", "initial", "schedule", "out", "seed", "catalog", "sweep", "verify"}},
    {"params", {"lambda", "alpha"}},
    {"bc", {"kind", "R", "tau0", "tau1"}},
    {"initial", {"generator", "amplitude", "wavenumber", "height", "speed", "radius", "knots", "file"}},
    {"schedule", {"dt", "t_end", "n", "snapshot_every", "grad_tol", "allow_halving"}},
    {"catalog", {"A", "points_per_decade", "energy_points", "phase_points", "refine", "path"}},
    {"sweep", {"E_min", "E_max", "points", "negative"}},
    {"verify", {"mutation", "grad_tol", "n", "random_curves", "variation_pairs"}},
};

std::vector<std::string> split_key(const std::string& key) {
  std::vector<std::string> parts;
  std::stringstream ss(key);
  std::string p;
  while (std::getline(ss, p, '.')) parts.push_back(p);
  return parts;
}

class Reader {
 public:
  Reader(const json& root, const std::string& text, const std::string& origin,
         const std::set<std::string>& overridden)
      : root_(root), text_(text), origin_(origin), overridden_(overridden) {}

  std::string anchor(const std::string& key) const {
    if (overridden_.count(key)) return "--override " + key;
    if (!find(key)) return "default " + key;
    std::size_t pos = 0;
    for (const auto& part : split_key(key)) {
      const auto at = text_.find("\"" + part + "\"", pos);
      if (at == std::string::npos) return origin_ + ": " + key;
      pos = at + part.size() + 2;
    }
    const auto line = 1 + std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n');
    return origin_ + ":" + std::to_string(line) + ": " + key;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError(anchor(key) + ": " + msg);
  }

  const json* find(const std::string& key) const {
    const json* node = &root_;
    for (const auto& part : split_key(key)) {
      if (!node->is_object()) return nullptr;
      auto it = node->find(part);
      if (it == node->end()) return nullptr;
      node = &*it;
    }
    return node;
  }

  double number(const std::string& key, double fallback) const {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number()) fail(key, "expected a number, got " + v->dump());
    const double x = v->get<double>();
    if (!std::isfinite(x)) fail(key, "must be finite");
    return x;
  }

  long long integer(const std::string& key, long long fallback) const {
    const json* v = find(key);
    if (!v) return fallback;
    if (v->is_number_integer() || v->is_number_unsigned()) return v->get<long long>();
    if (v->is_number_float()) {
      const double x = v->get<double>();
      if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9e15) return static_cast<long long>(x);
    }
    fail(key, "expected an integer, got " + v->dump());
  }

  bool boolean(const std::string& key, bool fallback) const {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(key, "expected true or false, got " + v->dump());
    return v->get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) const {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_string()) fail(key, "expected a string, got " + v->dump());
    return v->get<std::string>();
  }

  Vec2 vec(const std::string& key, Vec2 fallback) const {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number())
      fail(key, "expected [x, y], got " + v->dump());
    return {(*v)[0].get<double>(), (*v)[1].get<double>()};
  }

  void check_keys(const json& node, const std::string& prefix) const {
    auto schema = kSchema.find(prefix);
    if (schema == kSchema.end() || !node.is_object()) return;
    for (auto it = node.begin(); it != node.end(); ++it) {
      const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
      if (!schema->second.count(it.key())) fail(key, "unknown key");
      if (kSchema.count(key)) {
        if (!it->is_object()) fail(key, "expected an object");
        check_keys(*it, key);
      }
    }
  }

 private:
  const json& root_;
  const std::string& text_;
  const std::string& origin_;
  const std::set<std::string>& overridden_;
};

bool known_key(const std::string& key) {
  const auto parts = split_key(key);
  if (parts.empty() || parts.size() > 2) return false;
  if (parts.size() == 1) return kSchema.at("").count(parts[0]) && !kSchema.count(parts[0]);
  auto it = kSchema.find(parts[0]);
  return it != kSchema.end() && it->second.count(parts[1]);
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

RunConfig parse_config(Command mode, const std::string& text, const std::string& origin,
                       const std::vector<std::string>& overrides) {
  json root = json::object();
  const bool blank = text.find_first_not_of(" \t\r\n") == std::string::npos;
  if (!blank) {
    try {
      root = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(origin + ":" + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) +
                        ": malformed JSON (" + e.what() + ")");
    }
    if (!root.is_object()) throw ConfigError(origin + ":1: top level must be a JSON object");
  }

  std::set<std::string> overridden;
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--override " + item + ": expected key=value");
    const std::string key = item.substr(0, eq), raw = item.substr(eq + 1);
    if (!known_key(key)) throw ConfigError("--override " + key + ": unknown key");
    json value;
    try {
      value = json::parse(raw);
    } catch (const json::parse_error&) {
      value = raw;
    }
    const auto parts = split_key(key);
    json* node = &root;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      if (!node->contains(parts[i]) || !(*node)[parts[i]].is_object()) (*node)[parts[i]] = json::object();
      node = &(*node)[parts[i]];
    }
    (*node)[parts.back()] = value;
    overridden.insert(key);
  }

  const Reader r(root, text, origin, overridden);
  r.check_keys(root, "");

  RunConfig cfg;
  cfg.mode = mode;
  cfg.source_text = text;
  cfg.overrides = overrides;
  if (const json* m = r.find("mode")) {
    if (!m->is_string() || m->get<std::string>() != to_string(mode))
      r.fail("mode", "config is for " + m->dump() + " but the subcommand is " + to_string(mode));
  }

  const double default_lambda = mode == Command::flow ? 2.0 : 1.0;
  cfg.lambda = r.number("params.lambda", default_lambda);
  if (cfg.lambda == 0.0) r.fail("params.lambda", "Let λ ≠ 0 (got 0)");
  const double alpha = r.number("params.alpha", 0.0);

  const std::string kind = r.string("bc.kind", "navier");
  const double R = r.number("bc.R", 1.0);
  if (!(R > 0.0)) r.fail("bc.R", "R must be positive");
  if (kind == "navier") {
    cfg.bc = BoundarySpec::navier(R, alpha);
    if (r.find("bc.tau0")) r.fail("bc.tau0", "tangents only apply to clamped mode");
    if (r.find("bc.tau1")) r.fail("bc.tau1", "tangents only apply to clamped mode");
  } else if (kind == "clamped") {
    const Vec2 t0 = r.vec("bc.tau0", {0.0, 1.0}), t1 = r.vec("bc.tau1", {0.0, 1.0});
    if (std::abs(norm(t0) - 1.0) > 1e-9) r.fail("bc.tau0", "|tau0| = 1 required");
    if (std::abs(norm(t1) - 1.0) > 1e-9) r.fail("bc.tau1", "|tau1| = 1 required");
    if (alpha != 0.0) r.fail("params.alpha", "alpha only enters the Navier problem");
    cfg.bc = BoundarySpec::clamped(R, normalized(t0), normalized(t1));
  } else {
    r.fail("bc.kind", "expected \"navier\" or \"clamped\", got \"" + kind + "\"");
  }

  auto& in = cfg.initial;
  in.generator = r.string("initial.generator", kind == "clamped" ? "loop" : "sine");
  static const std::set<std::string> generators = {"segment", "sine", "arc", "hermite", "loop", "random", "file"};
  if (!generators.count(in.generator)) r.fail("initial.generator", "unknown generator \"" + in.generator + "\"");
  in.amplitude = r.number("initial.amplitude", in.amplitude);
  in.wavenumber = static_cast<int>(r.integer("initial.wavenumber", in.wavenumber));
  if (in.wavenumber < 1) r.fail("initial.wavenumber", "must be at least 1");
  in.height = r.number("initial.height", in.height);
  in.speed = r.number("initial.speed", in.speed);
  if (!(in.speed > 0.0)) r.fail("initial.speed", "must be positive");
  in.radius = r.number("initial.radius", in.radius);
  if (!(in.radius > 0.0)) r.fail("initial.radius", "must be positive");
  const long long knots = r.integer("initial.knots", static_cast<long long>(in.knots));
  if (knots < 2) r.fail("initial.knots", "needs at least 2 interior knots");
  in.knots = static_cast<std::size_t>(knots);
  in.file = r.string("initial.file", "");
  if (in.generator == "file") {
    if (in.file.empty()) r.fail("initial.file", "generator \"file\" needs initial.file");
    if (!std::filesystem::exists(in.file)) r.fail("initial.file", "no such file: " + in.file);
  }
  if (in.generator == "arc" && in.height == 0.0) r.fail("initial.height", "arc height must be nonzero");

  auto& s = cfg.schedule;
  s.dt = r.number("schedule.dt", 1e-5);
  if (!(s.dt > 0.0)) r.fail("schedule.dt", "dt must be positive");
  s.t_end = r.number("schedule.t_end", 10.0);
  if (!(s.t_end >= 0.0)) r.fail("schedule.t_end", "t_end must be non-negative");
  const long long n = r.integer("schedule.n", 256);
  if (n < static_cast<long long>(DiscreteCurve::kMinSegments)) r.fail("schedule.n", "n must be at least 8");
  if (n > 1 << 20) r.fail("schedule.n", "n is unreasonably large");
  cfg.n = static_cast<std::size_t>(n);
  const long long every = r.integer("schedule.snapshot_every", 500);
  if (every < 1) r.fail("schedule.snapshot_every", "must be at least 1");
  s.snapshot_every = static_cast<std::size_t>(every);
  s.grad_tol = r.number("schedule.grad_tol", 1e-6);
  if (!(s.grad_tol > 0.0)) r.fail("schedule.grad_tol", "must be positive");
  s.allow_halving = r.boolean("schedule.allow_halving", false);

  cfg.out = r.string("out", "run");
  if (cfg.out.empty()) r.fail("out", "output directory must not be empty");
  const long long seed = r.integer("seed", 1);
  if (seed < 0) r.fail("seed", "must be non-negative");
  cfg.seed = static_cast<std::uint64_t>(seed);

  auto& c = cfg.catalog;
  c.A = r.number("catalog.A", c.A);
  c.points_per_decade = static_cast<int>(r.integer("catalog.points_per_decade", c.points_per_decade));
  if (c.points_per_decade < 1) r.fail("catalog.points_per_decade", "must be at least 1");
  c.energy_points = static_cast<int>(r.integer("catalog.energy_points", c.energy_points));
  if (c.energy_points < 1) r.fail("catalog.energy_points", "must be at least 1");
  c.phase_points = static_cast<int>(r.integer("catalog.phase_points", c.phase_points));
  if (c.phase_points < 1) r.fail("catalog.phase_points", "must be at least 1");
  c.refine = r.boolean("catalog.refine", false);
  c.path = r.string("catalog.path", "");
  if (!c.path.empty() && !std::filesystem::exists(c.path)) r.fail("catalog.path", "no such file: " + c.path);
  if (mode == Command::catalog && kind == "navier" && !(std::abs(alpha) < std::abs(cfg.lambda)))
    r.fail("params.alpha", "the Navier search needs |alpha| < |lambda|");

  auto& w = cfg.sweep;
  w.E_min = r.number("sweep.E_min", w.E_min);
  w.E_max = r.number("sweep.E_max", w.E_max);
  if (!(w.E_min > 0.0)) r.fail("sweep.E_min", "must be positive");
  if (!(w.E_max > w.E_min)) r.fail("sweep.E_max", "must exceed E_min");
  w.points = static_cast<int>(r.integer("sweep.points", w.points));
  if (w.points < 2) r.fail("sweep.points", "must be at least 2");
  w.negative = r.boolean("sweep.negative", w.negative);

  auto& v = cfg.verify;
  v.mutation = r.boolean("verify.mutation", false);
  v.grad_tol = r.number("verify.grad_tol", v.grad_tol);
  if (!(v.grad_tol > 0.0)) r.fail("verify.grad_tol", "must be positive");
  const long long vn = r.integer("verify.n", static_cast<long long>(v.n));
  if (vn < 64) r.fail("verify.n", "must be at least 64");
  v.n = static_cast<std::size_t>(vn);
  v.random_curves = static_cast<int>(r.integer("verify.random_curves", v.random_curves));
  if (v.random_curves < 1) r.fail("verify.random_curves", "must be at least 1");
  v.variation_pairs = static_cast<int>(r.integer("verify.variation_pairs", v.variation_pairs));
  if (v.variation_pairs < 1) r.fail("verify.variation_pairs", "must be at least 1");

  root["mode"] = to_string(mode);
  cfg.effective = root;
  return cfg;
}

RunConfig load_config(Command mode, const std::optional<std::filesystem::path>& path,
                      const std::vector<std::string>& overrides, const std::optional<std::filesystem::path>& out) {
  std::string text;
  std::string origin = "default";
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError(path->string() + ": cannot open config file");
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    origin = path->string();
  }
  RunConfig cfg = parse_config(mode, text, origin, overrides);
  if (out) {
    if (out->empty()) throw ConfigError("--out: output directory must not be empty");
    cfg.out = *out;
    cfg.effective["out"] = out->string();
  }
  return cfg;
}

}  // namespace elastica
