#include "elastica/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "elastica/catalog.hpp"
#include "elastica/energy.hpp"
#include "elastica/flow.hpp"
#include "elastica/generators.hpp"
#include "elastica/geometry.hpp"
#include "elastica/monitor.hpp"
#include "elastica/orbit.hpp"

namespace elastica {

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string format_check(const CheckResult& c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.1f s)", c.seconds);
  return std::string(c.pass ? "PASS" : "FAIL") + " [" + std::to_string(c.id) + "] " + c.name + ": " + c.detail + buf;
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

template <class F>
CheckResult timed(int id, const std::string& name, F&& body) {
  CheckResult c;
  c.id = id;
  c.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail += std::string(c.detail.empty() ? "" : "; ") + "error: " + e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

const BoundarySpec kSineBc = BoundarySpec::navier(1.0, 0.0);
constexpr double kSineLambda = 2.0;

Trajectory sine_run(std::size_t n, double dt, double t_end, std::size_t every, double grad_tol, double sign) {
  Schedule s;
  s.dt = dt;
  s.t_end = t_end;
  s.snapshot_every = every;
  s.grad_tol = grad_tol;
  s.step_options.velocity_sign = sign;
  return run(sine_curve(1.0, 0.2, 1, n), kSineBc, kSineBc.energy_params(kSineLambda), s);
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

}  // namespace

CheckResult check_energy_decay(const VerifyOptions& opt) {
  return timed(1, "energy decay identity", [&](CheckResult& c) {
    const double sign = opt.mutation ? -1.0 : 1.0;
    const double dt = 1e-5, t_end = 2e-3;
    double res[3];
    for (int k = 0; k < 3; ++k) {
      const int m = 1 << k;
      const auto tr = sine_run(opt.n, dt / m, t_end, static_cast<std::size_t>(m), 0.0, sign);
      if (tr.termination == Termination::energy_increase) {
        c.detail = "energy increased at t = " + sci(tr.states.back().time) + " with dt = " + sci(dt / m);
        return;
      }
      res[k] = max_of(energy_decay_residual(tr));
    }
    const double r1 = res[0] / res[1], r2 = res[1] / res[2];
    c.pass = res[0] < 5e-2 && r1 >= 1.7 && r2 >= 1.7;
    c.detail = "max residual " + sci(res[0]) + " (< 5e-2), halving ratios " + sci(r1) + ", " + sci(r2) + " (>= 1.7)";
  });
}

CheckResult check_navier_convergence(const VerifyOptions& opt) {
  return timed(2, "navier convergence to the segment", [&](CheckResult& c) {
    const auto tr = sine_run(opt.n, 1e-5, 10.0, 500, opt.grad_tol, 1.0);
    const auto& last = tr.states.back();
    const double g = std::sqrt(last.report.gradient_norm_sq);
    const double d = hausdorff_distance(last.curve, segment_curve(1.0, opt.n));
    const double target = kSineLambda * kSineLambda * 1.0;
    const double de = std::abs(last.report.total - target);
    const auto cat = find_navier_equilibria(kSineLambda, 0.0, 1.0, tr.states.front().report.total);
    const auto v = verdict(tr, cat.records, {opt.grad_tol, 1e-3});
    c.pass = tr.termination == Termination::converged && g < opt.grad_tol && d < 1e-4 && de < 1e-6 && v.converged;
    c.detail = "grad " + sci(g) + ", hausdorff to segment " + sci(d) + " (< 1e-4), |E - 4| " + sci(de) +
               " (< 1e-6), verdict " + (v.converged ? "converged" : "not converged") + " at t = " + sci(last.time);
  });
}

CheckResult check_clamped_convergence(const VerifyOptions& opt) {
  return timed(3, "clamped convergence", [&](CheckResult& c) {
    const Vec2 up{0.0, 1.0};
    const auto bc = BoundarySpec::clamped(0.5, up, up);
    Schedule s;
    s.dt = 1e-4;
    s.t_end = 20.0;
    s.snapshot_every = 1000;
    s.grad_tol = opt.grad_tol;
    const std::size_t n = 256;
    const auto tr = run(loop_curve(0.5, 1.0, n), bc, bc.energy_params(1.0), s);
    const auto& last = tr.states.back();
    const double g = std::sqrt(last.report.gradient_norm_sq);
    const auto cat = find_clamped_equilibria(1.0, up, up, 0.5, tr.states.front().report.total);
    double d = std::numeric_limits<double>::infinity();
    for (const auto& r : cat.records) d = std::min(d, hausdorff_distance(last.curve, r.curve));
    c.pass = tr.termination == Termination::converged && g < opt.grad_tol && d < 1e-3;
    c.detail = "stationary residual " + sci(g) + " (< " + sci(opt.grad_tol) + "), hausdorff to catalog " + sci(d) +
               " (< 1e-3) over " + std::to_string(cat.records.size()) + " records, E = " + sci(last.report.total);
  });
}

double ode_period(double E, double lambda) {
  const auto ext = kappa_extremes(E, lambda);
  const double w = std::max(ext.kappa_M, std::abs(lambda));
  const double h = 0.01 / w;
  OrbitIntegrator orbit(lambda, ext.kappa_M, 0.0, 0.0, h / 8.0);
  orbit.advance(h);
  double s = h;
  for (;;) {
    OrbitIntegrator next = orbit;
    next.advance(h);
    if (next.point().kappa_s >= 0.0) break;
    orbit = next;
    s += h;
    if (s > 1e6 / w) throw NumericError("ode_period: no turning point found");
  }
  double lo = 0.0, hi = h;
  for (int it = 0; it < 80 && hi - lo > 1e-16 * s; ++it) {
    const double mid = 0.5 * (lo + hi);
    OrbitIntegrator probe = orbit;
    probe.advance(mid);
    (probe.point().kappa_s < 0.0 ? lo : hi) = mid;
  }
  return 2.0 * (s + 0.5 * (lo + hi));
}

CheckResult check_first_integrals(const VerifyOptions&) {
  return timed(4, "first-integral machinery", [&](CheckResult& c) {
    const double lambda = 1.0, alpha = 0.5;
    double split = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double E = std::pow(10.0, -6.0 + 12.0 * i / 49.0);
      const auto p = partial_periods(E, lambda, alpha);
      const double L = period_L(E, lambda);
      split = std::max(split, std::abs(L - p.L1 - p.L2) / L);
    }
    const double sample[] = {-0.2, -0.1, -1e-2, -1e-3, 1e-3, 0.05, 0.5, 3.0, 40.0, 1e3};
    double period = 0.0;
    for (double E : sample) period = std::max(period, std::abs(period_L(E, lambda) - ode_period(E, lambda)) / period_L(E, lambda));
    double drift = 0.0;
    for (double E : {-0.2, -0.05, 0.1, 10.0}) {
      const auto ext = kappa_extremes(E, lambda);
      const double L = period_L(E, lambda);
      const auto orbit = reconstruct({lambda, E, 0.5 * (ext.kappa_M + (E > 0 ? -ext.kappa_M : ext.kappa_m)), 1}, 2.0 * L, 400);
      drift = std::max(drift, orbit.max_drift);
    }
    c.pass = split < 1e-9 && period < 1e-8 && drift < 1e-8;
    c.detail = "|L - L1 - L2|/L " + sci(split) + " (< 1e-9), period vs ODE " + sci(period) + " (< 1e-8), drift " +
               sci(drift) + " (< 1e-8)";
  });
}

CheckResult check_asymptotics(const VerifyOptions&) {
  return timed(5, "asymptotics near the separatrix and at high energy", [&](CheckResult& c) {
    const double lambda = 1.0;
    bool up_neg = true, up_pos = true;
    double prev = 0.0;
    for (int k = 1; k <= 10; ++k) {
      const double L = period_L(-0.2 * std::pow(10.0, -0.8 * (k - 1)), lambda);
      if (k > 1 && !(L > prev)) up_neg = false;
      prev = L;
    }
    for (int k = 1; k <= 10; ++k) {
      const double L = period_L(std::pow(10.0, 1.0 - 0.8 * (k - 1)), lambda);
      if (k > 1 && !(L > prev)) up_pos = false;
      prev = L;
    }
    bool l2_down = true;
    double prev2 = std::numeric_limits<double>::infinity();
    for (double E : {1.0, 1e2, 1e4}) {
      const double L2 = partial_periods(E, lambda, 0.5).L2;
      if (!(L2 < prev2)) l2_down = false;
      prev2 = L2;
    }
    const auto blow = energy_blowup_check(lambda, {1e2, 1e4, 1e6});
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < blow.E.size(); ++i) margin = std::min(margin, blow.integral[i] / blow.lower_bound[i]);
    c.pass = up_neg && up_pos && l2_down && blow.bound_holds;
    c.detail = std::string("L increasing toward 0 from below: ") + (up_neg ? "yes" : "no") +
               ", from above: " + (up_pos ? "yes" : "no") + ", L2 decreasing: " + (l2_down ? "yes" : "no") +
               ", min int(kappa^2)/bound " + sci(margin) + " (> 1)";
  });
}

CheckResult check_finiteness(const VerifyOptions&) {
  return timed(6, "finite catalog and fixed points", [&](CheckResult& c) {
    NavierSearch coarse, fine;
    fine.points_per_decade = 2 * coarse.points_per_decade;
    const auto a = find_navier_equilibria(1.0, 0.0, 1.0, 30.0, coarse);
    const auto b = find_navier_equilibria(1.0, 0.0, 1.0, 30.0, fine);
    bool same = a.records.size() == b.records.size();
    for (std::size_t i = 0; same && i < a.records.size(); ++i)
      same = std::abs(a.records[i].energy - b.records[i].energy) < 1e-8;
    const auto bc = BoundarySpec::navier(1.0, 0.0);
    const auto params = bc.energy_params(1.0);
    double drift = 0.0;
    for (const auto& r : a.records) {
      FlowState st = make_state(r.curve, 0.0, bc, params);
      for (int k = 0; k < 100; ++k) st = step(st, 1e-5, bc, params);
      drift = std::max(drift, hausdorff_distance(r.curve, st.curve));
    }
    c.pass = same && !a.records.empty() && drift < 1e-6;
    c.detail = std::to_string(a.records.size()) + " records at " + std::to_string(coarse.points_per_decade) + "/decade, " +
               std::to_string(b.records.size()) + " at " + std::to_string(fine.points_per_decade) +
               "/decade, max drift over 100 steps " + sci(drift) + " (< 1e-6)";
  });
}

CheckResult check_coercivity(const VerifyOptions& opt, std::uint64_t seed) {
  return timed(7, "coercivity bound", [&](CheckResult& c) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> knots(2, 8);
    std::uniform_real_distribution<double> amp(0.05, 1.0);
    const EnergyParams params{1.0, 0.5, BoundaryMode::navier};
    int violations = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < opt.random_curves; ++i) {
      const auto curve = random_spline_curve(1.0, static_cast<std::size_t>(knots(rng)), amp(rng), 256, rng);
      const auto r = coercivity_check(curve, params);
      if (!r.bound_holds) ++violations;
      worst = std::min(worst, r.energy / r.lower_bound);
    }
    c.pass = violations == 0;
    c.detail = std::to_string(violations) + " violations in " + std::to_string(opt.random_curves) + " curves, C = " +
               sci(coercivity_constant(0.5, 1.0)) + ", min E/bound " + sci(worst);
  });
}

CheckResult check_first_variation(const VerifyOptions& opt, std::uint64_t seed) {
  return timed(8, "first variation", [&](CheckResult& c) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<int> modes(1, 4);
    std::uniform_real_distribution<double> amp(0.05, 0.3), unit(0.0, 1.0);
    const EnergyParams params{1.0, 0.5, BoundaryMode::navier};
    double worst = 0.0;
    int redraws = 0;
    for (int i = 0; i < opt.variation_pairs; ++i) {
      const auto curve = random_fourier_curve(1.0, static_cast<std::size_t>(modes(rng)), amp(rng), 512, rng);
      const auto s = curve.arclength();
      const double L = curve.length();
      const ScalarField v = velocity_field(curve, params);
      for (;;) {
        const double a = (0.05 + 0.45 * unit(rng)) * L;
        const double b = a + (0.25 + 0.2 * unit(rng)) * L;
        const double height = 0.5 + unit(rng);
        ScalarField phi(s.size(), 0.0), mag(s.size(), 0.0), prod(s.size(), 0.0);
        for (std::size_t j = 0; j < s.size(); ++j) {
          if (s[j] <= a || s[j] >= b) continue;
          const double q = std::sin(std::numbers::pi * (s[j] - a) / (b - a));
          phi[j] = height * q * q * q * q;
          prod[j] = v[j] * phi[j];
          mag[j] = std::abs(prod[j]);
        }
        // bumps on which int V phi nearly cancels make the relative error meaningless
        if (std::abs(integrate(curve, prod)) < 0.1 * integrate(curve, mag)) {
          ++redraws;
          continue;
        }
        worst = std::max(worst, first_variation_check(curve, params, phi).relative_error);
        break;
      }
    }
    c.pass = worst < 1e-3;
    c.detail = "max relative error " + sci(worst) + " (< 1e-3) over " + std::to_string(opt.variation_pairs) +
               " pairs at n = 512, " + std::to_string(redraws) + " cancelling bumps redrawn";
  });
}

CheckResult check_evolution_identities(const VerifyOptions&) {
  return timed(9, "evolution identities", [&](CheckResult& c) {
    EvolutionResiduals r[3];
    const std::size_t ns[3] = {64, 128, 256};
    for (int k = 0; k < 3; ++k) {
      const double scale = 64.0 / static_cast<double>(ns[k]);
      const auto tr = sine_run(ns[k], 4e-5 * scale * scale, 2e-3, 1, 0.0, 1.0);
      r[k] = evolution_identity_residuals(tr, 1e-3);
    }
    const double k1 = r[0].kappa / r[1].kappa, k2 = r[1].kappa / r[2].kappa;
    const double d1 = r[0].line_element / r[1].line_element, d2 = r[1].line_element / r[2].line_element;
    const double bnd = std::max({r[0].boundary_kappa_rate, r[1].boundary_kappa_rate, r[2].boundary_kappa_rate});
    c.pass = k1 >= 1.5 && k2 >= 1.5 && d1 >= 1.5 && d2 >= 1.5 && bnd < 1e-8;
    c.detail = "kappa residual " + sci(r[0].kappa) + " -> " + sci(r[1].kappa) + " -> " + sci(r[2].kappa) +
               ", line element " + sci(r[0].line_element) + " -> " + sci(r[1].line_element) + " -> " +
               sci(r[2].line_element) + " (ratios >= 1.5), end kappa rate " + sci(bnd) + " (< 1e-8)";
  });
}

VerifyReport run_verify(const VerifyOptions& opt, std::uint64_t seed, std::ostream& log) {
  VerifyReport report;
  auto add = [&](CheckResult c) {
    log << format_check(c) << std::endl;
    report.checks.push_back(std::move(c));
  };
  add(check_energy_decay(opt));
  add(check_navier_convergence(opt));
  add(check_clamped_convergence(opt));
  add(check_first_integrals(opt));
  add(check_asymptotics(opt));
  add(check_finiteness(opt));
  add(check_coercivity(opt, seed));
  add(check_first_variation(opt, seed));
  add(check_evolution_identities(opt));
  return report;
}

}  // namespace elastica
