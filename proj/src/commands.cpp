#include "elastica/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include <json.hpp>

#include "elastica/curve_io.hpp"
#include "elastica/errors.hpp"
#include "elastica/flow.hpp"
#include "elastica/generators.hpp"
#include "elastica/geometry.hpp"
#include "elastica/monitor.hpp"
#include "elastica/orbit.hpp"
#include "elastica/verify.hpp"

namespace elastica {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json report_json(const EnergyReport& r) {
  return {{"total", r.total},
          {"bending", r.bending},
          {"length_term", r.length_term},
          {"linear_term", r.linear_term},
          {"gradient_norm_sq", r.gradient_norm_sq}};
}

json verdict_json(const ConvergenceVerdict& v) {
  json j = {{"converged", v.converged},
            {"final_grad_norm", v.final_grad_norm},
            {"final_distance", v.final_distance},
            {"final_curvature_distance", v.final_curvature_distance},
            {"dt_lipschitz_estimate", v.dt_lipschitz_estimate},
            {"speed_bound", v.speed_bound},
            {"distance_monotone", v.distance_monotone},
            {"limit_constant", v.limit_constant},
            {"limit_reflected", v.limit_reflected}};
  j["limit"] = v.limit ? json(*v.limit) : json(nullptr);
  return j;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

json manifest_base(const RunConfig& cfg) {
  return {{"command", to_string(cfg.mode)},
          {"config", cfg.effective},
          {"config_text", cfg.source_text},
          {"overrides", cfg.overrides}};
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InvalidInput("cannot create output directory " + dir.string() + ": " + ec.message());
}

void print_report(std::ostream& out, const char* label, const EnergyReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-8s %16.10f %16.10f %16.10f %16.10f %12.4e\n", label, r.total, r.bending,
                r.length_term, r.linear_term, r.gradient_norm_sq);
  out << buf;
}

}  // namespace

DiscreteCurve initial_curve(const RunConfig& cfg) {
  const auto& in = cfg.initial;
  const double R = cfg.bc.R;
  if (in.generator == "segment") return segment_curve(R, cfg.n);
  if (in.generator == "sine") return sine_curve(R, in.amplitude, in.wavenumber, cfg.n);
  if (in.generator == "arc") return arc_curve(R, in.height, cfg.n);
  if (in.generator == "hermite") return hermite_curve(R, cfg.bc.tau0, cfg.bc.tau1, in.speed, cfg.n);
  if (in.generator == "loop") return loop_curve(R, in.radius, cfg.n);
  if (in.generator == "random") {
    std::mt19937_64 rng(cfg.seed);
    return random_spline_curve(R, in.knots, in.amplitude, cfg.n, rng);
  }
  if (in.generator == "file") return resample_arclength(read_curve(in.file), cfg.n);
  throw InvalidInput("unknown generator " + in.generator);
}

void write_catalog(const fs::path& dir, const Catalog& catalog) {
  prepare_dir(dir / "curves");
  json arr = json::array();
  for (std::size_t i = 0; i < catalog.records.size(); ++i) {
    const auto& r = catalog.records[i];
    char name[32];
    std::snprintf(name, sizeof name, "record_%03zu.csv", i);
    const fs::path rel = fs::path("curves") / name;
    write_curve_csv(dir / rel, r.curve);
    arr.push_back({{"E", r.E},
                   {"N", r.N},
                   {"segment", to_string(r.segment)},
                   {"sign", r.sign},
                   {"length", r.length},
                   {"energy", r.energy},
                   {"residuals", {{"stationary", r.stationary_residual}, {"boundary", r.bc_residual}}},
                   {"curve_file", rel.generic_string()}});
  }
  write_json(dir / "catalog.json", arr);
}

std::vector<EquilibriumRecord> read_catalog(const fs::path& file) {
  std::ifstream f(file);
  if (!f) throw InvalidInput("cannot open catalog " + file.string());
  json arr;
  try {
    arr = json::parse(f);
  } catch (const json::exception& e) {
    throw InvalidInput("malformed catalog " + file.string() + ": " + e.what());
  }
  if (!arr.is_array()) throw InvalidInput(file.string() + ": catalog must be a JSON array");
  std::vector<EquilibriumRecord> out;
  for (const auto& j : arr) {
    try {
      DiscreteCurve curve = read_curve(file.parent_path() / j.at("curve_file").get<std::string>());
      EquilibriumRecord r{curve, curvature(curve)};
      r.E = j.at("E").get<double>();
      r.N = j.at("N").get<int>();
      const auto seg = j.at("segment").get<std::string>();
      r.segment = seg == "L1" ? SegmentKind::L1 : seg == "L2" ? SegmentKind::L2 : SegmentKind::L0;
      r.sign = j.value("sign", 1);
      r.length = j.at("length").get<double>();
      r.energy = j.at("energy").get<double>();
      r.stationary_residual = j.at("residuals").at("stationary").get<double>();
      r.bc_residual = j.at("residuals").at("boundary").get<double>();
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw InvalidInput(file.string() + ": bad record: " + e.what());
    }
  }
  return out;
}

int cmd_flow(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto params = cfg.energy_params();
  std::vector<EquilibriumRecord> catalog;
  if (!cfg.catalog.path.empty()) catalog = read_catalog(cfg.catalog.path);
  const DiscreteCurve initial = initial_curve(cfg);
  prepare_dir(cfg.out / "snapshots");

  Trajectory tr;
  try {
    tr = run(initial, cfg.bc, params, cfg.schedule);
  } catch (const StepFailure& e) {
    err << "solver failure: " << e.what() << '\n';
    json m = manifest_base(cfg);
    m["termination"] = "step_failure";
    m["error"] = e.what();
    m["final_time"] = e.state().time;
    write_json(cfg.out / "manifest.json", m);
    return kExitNumeric;
  }

  const DiscreteCurve& limit = tr.states.back().curve;
  {
    std::ofstream f(cfg.out / "trajectory.csv");
    f << "t,energy,bending,length,grad_norm_sq,hausdorff_to_limit\n";
    for (const auto& s : tr.states) {
      f << format_double(s.time) << ',' << format_double(s.report.total) << ',' << format_double(s.report.bending)
        << ',' << format_double(s.curve.length()) << ',' << format_double(s.report.gradient_norm_sq) << ','
        << format_double(hausdorff_distance(s.curve, limit)) << '\n';
    }
  }
  {
    std::ofstream f(cfg.out / "steps.csv");
    f << "t,dt,energy,bending,length,grad_norm_sq,max_speed\n";
    for (const auto& h : tr.history) {
      f << format_double(h.t) << ',' << format_double(h.dt) << ',' << format_double(h.energy) << ','
        << format_double(h.bending) << ',' << format_double(h.length) << ',' << format_double(h.grad_norm_sq) << ','
        << format_double(h.max_speed) << '\n';
    }
  }
  json snaps = json::array();
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    char name[40];
    std::snprintf(name, sizeof name, "snapshot_%05zu.csv", i);
    write_curve_csv(cfg.out / "snapshots" / name, tr.states[i].curve);
    snaps.push_back({{"t", tr.states[i].time}, {"file", (fs::path("snapshots") / name).generic_string()}});
  }

  json m = manifest_base(cfg);
  m["termination"] = to_string(tr.termination);
  m["final_time"] = tr.states.back().time;
  m["steps"] = tr.history.size() - 1;
  m["halvings"] = tr.halvings;
  m["coercive"] = tr.coercive;
  m["dissipation"] = tr.dissipation;
  m["initial"] = report_json(tr.states.front().report);
  m["final"] = report_json(tr.states.back().report);
  m["snapshots"] = snaps;
  m["files"] = {{"trajectory", "trajectory.csv"}, {"steps", "steps.csv"}};
  if (!catalog.empty()) {
    const auto v = verdict(tr, catalog, {cfg.schedule.grad_tol, 1e-3});
    write_json(cfg.out / "verdict.json", verdict_json(v));
    m["files"]["verdict"] = "verdict.json";
    out << (v.converged ? "PASS" : "FAIL") << " convergence verdict: grad " << v.final_grad_norm << ", distance "
        << v.final_distance << ", curvature distance " << v.final_curvature_distance << '\n';
  }
  write_json(cfg.out / "manifest.json", m);

  out << "termination " << to_string(tr.termination) << " at t = " << tr.states.back().time << " after "
      << tr.history.size() - 1 << " steps, " << tr.states.size() << " snapshots in " << cfg.out.string() << '\n';
  char head[160];
  std::snprintf(head, sizeof head, "%-8s %16s %16s %16s %16s %12s\n", "", "total", "bending", "length_term",
                "linear_term", "grad_norm_sq");
  out << head;
  print_report(out, "initial", tr.states.front().report);
  print_report(out, "final", tr.states.back().report);
  if (tr.termination == Termination::energy_increase) {
    err << "energy increased beyond tolerance at t = " << tr.states.back().time << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

int cmd_catalog(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const int scale = cfg.catalog.refine ? 2 : 1;
  Catalog cat;
  if (cfg.bc.mode == BoundaryMode::navier) {
    NavierSearch s;
    s.points_per_decade = cfg.catalog.points_per_decade * scale;
    cat = find_navier_equilibria(cfg.lambda, cfg.bc.alpha, cfg.bc.R, cfg.catalog.A, s);
  } else {
    ClampedSearch s;
    s.energy_points = cfg.catalog.energy_points * scale;
    s.phase_points = cfg.catalog.phase_points * scale;
    cat = find_clamped_equilibria(cfg.lambda, cfg.bc.tau0, cfg.bc.tau1, cfg.bc.R, cfg.catalog.A, s);
  }
  std::sort(cat.records.begin(), cat.records.end(),
            [](const EquilibriumRecord& a, const EquilibriumRecord& b) { return a.energy < b.energy; });
  prepare_dir(cfg.out);
  write_catalog(cfg.out, cat);
  json m = manifest_base(cfg);
  m["records"] = cat.records.size();
  m["warnings"] = cat.warnings;
  m["files"] = {{"catalog", "catalog.json"}};
  write_json(cfg.out / "manifest.json", m);

  out << cat.records.size() << " equilibria with energy <= " << cfg.catalog.A << '\n';
  char line[200];
  std::snprintf(line, sizeof line, "%4s %18s %16s %4s %4s %12s %10s %10s\n", "#", "energy", "E", "N", "seg",
                "length", "stat_res", "bc_res");
  out << line;
  for (std::size_t i = 0; i < cat.records.size(); ++i) {
    const auto& r = cat.records[i];
    std::snprintf(line, sizeof line, "%4zu %18.10f %16.8g %4d %4s %12.8f %10.2e %10.2e\n", i, r.energy, r.E, r.N,
                  to_string(r.segment).c_str(), r.length, r.stationary_residual, r.bc_residual);
    out << line;
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const double lambda = cfg.lambda, alpha = cfg.bc.alpha;
  const double l4 = std::pow(lambda, 4);
  const auto& w = cfg.sweep;
  std::vector<double> grid;
  const double a = std::log10(w.E_min), b = std::log10(w.E_max);
  if (w.negative) {
    const double top = std::log10(0.25 * (1.0 - 1e-6));
    const double lo = std::min(a, top);
    for (int i = w.points - 1; i >= 0; --i) grid.push_back(-l4 * std::pow(10.0, lo + (top - lo) * i / (w.points - 1)));
  }
  for (int i = 0; i < w.points; ++i) grid.push_back(l4 * std::pow(10.0, a + (b - a) * i / (w.points - 1)));

  prepare_dir(cfg.out);
  std::ofstream f(cfg.out / "sweep.csv");
  f << "E,L,L1,L2,int_kappa_sq,lower_bound\n";
  for (double E : grid) {
    f << format_double(E) << ',' << format_double(period_L(E, lambda)) << ',';
    const double FA = potential(alpha, lambda);
    bool partial = FA < E;
    if (partial && E < 0.0) {
      const auto ext = kappa_extremes(E, lambda);
      partial = alpha > ext.kappa_m && alpha < ext.kappa_M;
    }
    if (partial) {
      const auto p = partial_periods(E, lambda, alpha);
      f << format_double(p.L1) << ',' << format_double(p.L2) << ',';
    } else {
      f << ",,";
    }
    f << format_double(kappa_sq_per_period(E, lambda)) << ',';
    if (E > 0.0) f << format_double(std::pow(kappa_extremes(E, lambda).kappa_M, 3) / (8.0 * std::sqrt(E)));
    f << '\n';
  }
  json m = manifest_base(cfg);
  m["rows"] = grid.size();
  m["files"] = {{"sweep", "sweep.csv"}};
  write_json(cfg.out / "manifest.json", m);
  out << grid.size() << " rows written to " << (cfg.out / "sweep.csv").string() << '\n';
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto report = run_verify(cfg.verify, cfg.seed, out);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  prepare_dir(cfg.out);
  json m = manifest_base(cfg);
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"seconds", c.seconds}});
  m["checks"] = checks;
  m["seconds"] = seconds;
  m["all_pass"] = report.all_pass();
  write_json(cfg.out / "verify.json", m);
  out << (report.all_pass() ? "all checks passed" : "some checks FAILED") << " in " << seconds << " s\n";
  return report.all_pass() ? kExitOk : kExitNumeric;
}

}  // namespace elastica
