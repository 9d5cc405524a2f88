#include "elastica/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "elastica/banded.hpp"
#include "elastica/geometry.hpp"
#include "elastica/kernels.hpp"

namespace elastica {

namespace {

constexpr double kEndpointTolerance = 1e-8;
constexpr double kMinStep = 1e-14;

// mirror of the neighbour across the normal line through the end node
Vec2 ghost_node(const Vec2& end, const Vec2& neighbour, const Vec2& tau) {
  const Vec2 nu = perp(tau);
  const Vec2 d = neighbour - end;
  return end - dot(d, tau) * tau + dot(d, nu) * nu;
}

double centered_curvature(const Vec2& pm, const Vec2& p, const Vec2& pp) {
  const Vec2 d1 = 0.5 * (pp - pm);
  const Vec2 d2 = pp - 2.0 * p + pm;
  const double g = norm(d1);
  return cross(d1, d2) / (g * g * g);
}

// I + dt * 2 D4 / h^4 on the n-1 interior nodes
PentadiagonalSolver stabilizer(std::size_t m, double dt, double h, BoundaryMode mode) {
  const double c = 2.0 * dt / (h * h * h * h);
  std::vector<double> e(m, c), lo(m, -4.0 * c), d(m, 1.0 + 6.0 * c), up(m, -4.0 * c), f(m, c);
  const double corner = mode == BoundaryMode::navier ? 5.0 : 7.0;
  d.front() = 1.0 + corner * c;
  d.back() = 1.0 + corner * c;
  return PentadiagonalSolver(std::move(e), std::move(lo), std::move(d), std::move(up), std::move(f));
}

void check_consistent(const BoundarySpec& bc, const EnergyParams& params) {
  bc.validate();
  params.validate();
  if (params.mode != bc.mode) throw InvalidInput("boundary mode and energy mode disagree");
  if (bc.mode == BoundaryMode::navier && params.alpha != bc.alpha) {
    throw InvalidInput("Navier alpha differs between boundary spec and energy parameters");
  }
}

StepRecord record_of(const FlowState& s, double dt, const BoundarySpec& bc, double lambda) {
  const auto fields = closure_fields(s.curve, bc, lambda);
  double vmax = 0.0;
  for (double v : fields.velocity) vmax = std::max(vmax, std::abs(v));
  return {s.time, dt, s.report.total, s.report.bending, s.curve.length(), s.report.gradient_norm_sq, vmax};
}

}  // namespace

BoundarySpec BoundarySpec::navier(double R, double alpha) {
  BoundarySpec bc;
  bc.mode = BoundaryMode::navier;
  bc.R = R;
  bc.alpha = alpha;
  return bc;
}

BoundarySpec BoundarySpec::clamped(double R, Vec2 tau0, Vec2 tau1) {
  BoundarySpec bc;
  bc.mode = BoundaryMode::clamped;
  bc.R = R;
  bc.tau0 = tau0;
  bc.tau1 = tau1;
  return bc;
}

EnergyParams BoundarySpec::energy_params(double lambda) const {
  return {lambda, mode == BoundaryMode::navier ? alpha : 0.0, mode};
}

void BoundarySpec::validate() const {
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidInput("R must be positive");
  if (mode == BoundaryMode::clamped) {
    for (const Vec2& t : {tau0, tau1}) {
      if (std::abs(norm(t) - 1.0) > 1e-12) throw InvalidInput("clamped tangents must be unit vectors");
    }
  } else if (!std::isfinite(alpha)) {
    throw InvalidInput("alpha must be finite");
  }
}

ClosureFields closure_fields(const DiscreteCurve& curve, const BoundarySpec& bc, double lambda) {
  const auto p = curve.points();
  const std::size_t n = curve.segments();
  ClosureFields f;
  f.kappa.assign(n + 1, 0.0);
  f.velocity.assign(n + 1, 0.0);
  f.normal.resize(n + 1);
  kernels::omp::curvature_interior(p, f.kappa);
  for (std::size_t i = 1; i < n; ++i) f.normal[i] = perp(normalized(p[i + 1] - p[i - 1]));

  if (bc.mode == BoundaryMode::navier) {
    f.kappa[0] = bc.alpha;
    f.kappa[n] = bc.alpha;
    f.normal[0] = perp(normalized(-1.5 * p[0] + 2.0 * p[1] - 0.5 * p[2]));
    f.normal[n] = perp(normalized(1.5 * p[n] - 2.0 * p[n - 1] + 0.5 * p[n - 2]));
  } else {
    f.kappa[0] = centered_curvature(ghost_node(p[0], p[1], bc.tau0), p[0], p[1]);
    f.kappa[n] = centered_curvature(p[n - 1], p[n], ghost_node(p[n], p[n - 1], bc.tau1));
    f.normal[0] = perp(bc.tau0);
    f.normal[n] = perp(bc.tau1);
  }
  kernels::omp::velocity_interior(curve.arclength(), f.kappa, lambda, f.velocity);
  return f;
}

EnergyReport flow_energy(const DiscreteCurve& curve, const BoundarySpec& bc, double lambda) {
  const auto f = closure_fields(curve, bc, lambda);
  ScalarField k2(f.kappa.size()), v2(f.kappa.size());
  for (std::size_t i = 0; i < k2.size(); ++i) {
    k2[i] = f.kappa[i] * f.kappa[i];
    v2[i] = f.velocity[i] * f.velocity[i];
  }
  EnergyReport r;
  r.bending = integrate(curve, k2);
  r.length_term = lambda * lambda * curve.length();
  if (bc.mode == BoundaryMode::navier) r.linear_term = -2.0 * bc.alpha * integrate(curve, f.kappa);
  r.total = r.bending + r.length_term + r.linear_term;
  r.gradient_norm_sq = integrate(curve, v2);
  return r;
}

double boundary_residual(const DiscreteCurve& curve, const BoundarySpec& bc, double lambda) {
  const std::size_t n = curve.segments();
  double r = distance(curve.front(), bc.left()) + distance(curve.back(), bc.right());
  const auto f = closure_fields(curve, bc, lambda);
  if (bc.mode == BoundaryMode::navier) {
    r += std::abs(f.kappa[0] - bc.alpha) + std::abs(f.kappa[n] - bc.alpha);
  } else {
    const Vec2 t0 = normalized(curve[1] - ghost_node(curve[0], curve[1], bc.tau0));
    const Vec2 t1 = normalized(ghost_node(curve[n], curve[n - 1], bc.tau1) - curve[n - 1]);
    r += norm(t0 - bc.tau0) + norm(t1 - bc.tau1);
  }
  return r;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::reached_t_end: return "reached_t_end";
    case Termination::converged: return "converged";
    case Termination::energy_increase: return "energy_increase";
  }
  return "unknown";
}

FlowState make_state(DiscreteCurve curve, double time, const BoundarySpec& bc, const EnergyParams& params) {
  EnergyReport report = flow_energy(curve, bc, params.lambda);
  return {std::move(curve), time, report};
}

FlowState step(const FlowState& state, double dt, const BoundarySpec& bc, const EnergyParams& params,
               const StepOptions& options) {
  check_consistent(bc, params);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("dt must be positive");
  if (dt < kMinStep) {
    std::ostringstream msg;
    msg << "time step " << dt << " fell below 1e-14 at t = " << state.time;
    throw Stagnation(msg.str());
  }

  const DiscreteCurve& c = state.curve;
  const std::size_t n = c.segments();
  const std::size_t m = n - 1;
  const auto f = closure_fields(c, bc, params.lambda);

  std::vector<double> rx(m), ry(m);
  for (std::size_t i = 1; i < n; ++i) {
    const double g = -dt * options.velocity_sign * f.velocity[i];
    rx[i - 1] = g * f.normal[i].x;
    ry[i - 1] = g * f.normal[i].y;
  }

  std::vector<Vec2> pts(c.points().begin(), c.points().end());
  try {
    const auto solver = stabilizer(m, dt, c.length() / static_cast<double>(n), bc.mode);
    const auto dx = solver.solve(rx);
    const auto dy = solver.solve(ry);
    for (std::size_t i = 1; i < n; ++i) pts[i] += Vec2{dx[i - 1], dy[i - 1]};
    for (const auto& q : pts) {
      if (!std::isfinite(q.x) || !std::isfinite(q.y)) throw NumericError("non-finite node after update");
    }
    DiscreteCurve next = resample_arclength(DiscreteCurve(std::move(pts)), n);
    FlowState out = make_state(std::move(next), state.time + dt, bc, params);
    if (!std::isfinite(out.report.total) || !std::isfinite(out.report.gradient_norm_sq)) {
      throw NumericError("non-finite energy after update");
    }
    return out;
  } catch (const Stagnation&) {
    throw;
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg << "step failed at t = " << state.time << ": " << e.what();
    throw StepFailure(msg.str(), state);
  }
}

Trajectory run(const DiscreteCurve& initial, const BoundarySpec& bc, const EnergyParams& params,
               const Schedule& schedule) {
  check_consistent(bc, params);
  if (!(schedule.dt > 0.0) || !(schedule.t_end >= 0.0)) throw InvalidInput("dt must be positive and t_end non-negative");
  if (schedule.snapshot_every == 0) throw InvalidInput("snapshot_every must be positive");
  if (distance(initial.front(), bc.left()) > kEndpointTolerance ||
      distance(initial.back(), bc.right()) > kEndpointTolerance) {
    throw InvalidInput("initial curve endpoints do not match (0,0) and (R,0)");
  }

  std::vector<Vec2> pts(initial.points().begin(), initial.points().end());
  pts.front() = bc.left();
  pts.back() = bc.right();
  DiscreteCurve start = resample_arclength(DiscreteCurve(std::move(pts)), initial.segments());

  Trajectory traj;
  traj.bc = bc;
  traj.params = params;
  traj.schedule = schedule;
  traj.coercive = bc.mode == BoundaryMode::clamped || params.coercive();

  FlowState current = make_state(std::move(start), 0.0, bc, params);
  traj.states.push_back(current);
  traj.history.push_back(record_of(current, 0.0, bc, params.lambda));

  const double g_stop = schedule.grad_tol * schedule.grad_tol;
  if (current.report.gradient_norm_sq < g_stop) {
    traj.termination = Termination::converged;
    return traj;
  }

  std::size_t k = 0;
  double dt = schedule.dt;
  bool last_saved = true;
  while (schedule.t_end - current.time > std::max(1e-9 * dt, 4.0 * kMinStep)) {
    const double h = std::min(dt, schedule.t_end - current.time);
    std::optional<FlowState> next;
    try {
      next.emplace(step(current, h, bc, params, schedule.step_options));
    } catch (StepFailure& e) {
      std::ostringstream msg;
      msg << e.what() << " (run reached t = " << current.time << ")";
      throw StepFailure(msg.str(), e.state());
    }
    const double tol = 1e-10 * std::max(1.0, std::abs(current.report.total));
    if (next->report.total > current.report.total + tol) {
      if (schedule.allow_halving && traj.halvings < schedule.max_halvings) {
        dt *= 0.5;
        ++traj.halvings;
        if (dt < kMinStep) throw Stagnation("time step fell below 1e-14 while halving");
        continue;
      }
      traj.termination = Termination::energy_increase;
      break;
    }
    traj.dissipation += h * next->report.gradient_norm_sq;
    current = std::move(*next);
    ++k;
    traj.history.push_back(record_of(current, h, bc, params.lambda));
    last_saved = k % schedule.snapshot_every == 0;
    if (last_saved) traj.states.push_back(current);
    if (current.report.gradient_norm_sq < g_stop) {
      traj.termination = Termination::converged;
      break;
    }
  }
  if (!last_saved) traj.states.push_back(current);
  return traj;
}

std::vector<double> energy_decay_residual(const Trajectory& traj) {
  std::vector<const FlowState*> s;
  for (const auto& st : traj.states) s.push_back(&st);
  if (s.size() < 3) throw InvalidInput("energy decay residual needs at least 3 snapshots");
  const double spacing = s[1]->time - s[0]->time;
  // a final partial interval is dropped
  if (std::abs((s.back()->time - s[s.size() - 2]->time) - spacing) > 1e-9 * spacing) s.pop_back();
  if (s.size() < 3) throw InvalidInput("energy decay residual needs at least 3 equally spaced snapshots");
  std::vector<double> out;
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    const double dt_k = s[k + 1]->time - s[k - 1]->time;
    if (std::abs(dt_k - 2.0 * spacing) > 1e-9 * spacing) throw InvalidInput("snapshots are not equally spaced");
    const double g = s[k]->report.gradient_norm_sq;
    const double rate = (s[k + 1]->report.total - s[k - 1]->report.total) / dt_k;
    out.push_back(std::abs(rate + g) / std::max(1.0, g));
  }
  return out;
}

namespace {

// intersection of the line p + t nu with polyline b near index i, nearest in |t|
Vec2 project_along_normal(const Vec2& p, const Vec2& nu, std::span<const Vec2> b, std::size_t i) {
  const std::size_t segs = b.size() - 1;
  double best_t = std::numeric_limits<double>::infinity();
  Vec2 best = p;
  for (std::size_t width = 4; width <= segs; width *= 4) {
    const std::size_t lo = i > width ? i - width : 0;
    const std::size_t hi = std::min(segs, i + width);
    for (std::size_t j = lo; j < hi; ++j) {
      const Vec2 e = b[j + 1] - b[j];
      const double det = cross(nu, e);
      if (det == 0.0) continue;
      // p + t nu = b_j + u e
      const Vec2 w = b[j] - p;
      const double t = cross(w, e) / det;
      const double u = cross(w, nu) / det;
      if (u < -1e-12 || u > 1.0 + 1e-12) continue;
      if (std::abs(t) < std::abs(best_t)) {
        best_t = t;
        best = b[j] + u * e;
      }
    }
    if (std::isfinite(best_t)) break;
  }
  if (!std::isfinite(best_t)) throw NumericError("normal line does not meet the next snapshot");
  return best;
}

}  // namespace

EvolutionResiduals evolution_identity_residuals(const FlowState& a, const FlowState& b,
                                                const BoundarySpec& bc, const EnergyParams& params) {
  check_consistent(bc, params);
  const double dt = b.time - a.time;
  if (!(dt > 0.0)) throw InvalidInput("snapshots must be strictly increasing in time");
  if (a.curve.segments() != b.curve.segments()) throw InvalidInput("snapshots must share the node count");
  const std::size_t n = a.curve.segments();

  struct Terms {
    ClosureFields f;
    ScalarField kappa_rate;  // predicted d/dt kappa at fixed arclength fraction
  };
  auto terms = [&](const DiscreteCurve& c) {
    Terms t{closure_fields(c, bc, params.lambda), {}};
    const ScalarField vss = second_derivative_s(c, t.f.velocity);
    const ScalarField ks = derivative_s(c, t.f.kappa);
    ScalarField kv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) kv[i] = t.f.kappa[i] * t.f.velocity[i];
    const ScalarField cum = cumulative_integral(c, kv);
    const auto& s = c.arclength();
    t.kappa_rate.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      const double k = t.f.kappa[i];
      const double shift = s[i] / c.length() * cum[n] - cum[i];
      t.kappa_rate[i] = -vss[i] - k * k * t.f.velocity[i] + ks[i] * shift;
    }
    return t;
  };
  const Terms ta = terms(a.curve), tb = terms(b.curve);

  EvolutionResiduals r;
  for (std::size_t i = 1; i < n; ++i) {
    const double observed = (tb.f.kappa[i] - ta.f.kappa[i]) / dt;
    const double predicted = 0.5 * (ta.kappa_rate[i] + tb.kappa_rate[i]);
    r.kappa = std::max(r.kappa, std::abs(observed - predicted));
  }
  r.boundary_kappa_rate = (std::abs(tb.f.kappa[0] - ta.f.kappa[0]) + std::abs(tb.f.kappa[n] - ta.f.kappa[n])) / dt;

  // follow each node of a along its normal onto b
  const auto pa = a.curve.points();
  std::vector<Vec2> image(n + 1);
  image[0] = b.curve.front();
  image[n] = b.curve.back();
  for (std::size_t i = 1; i < n; ++i) image[i] = project_along_normal(pa[i], ta.f.normal[i], b.curve.points(), i);
  for (std::size_t i = 0; i < n; ++i) {
    const double la = distance(pa[i], pa[i + 1]);
    const double lb = distance(image[i], image[i + 1]);
    const double observed = (lb - la) / (dt * la);
    const double kv_a = 0.5 * (ta.f.kappa[i] * ta.f.velocity[i] + ta.f.kappa[i + 1] * ta.f.velocity[i + 1]);
    const double kv_b = 0.5 * (tb.f.kappa[i] * tb.f.velocity[i] + tb.f.kappa[i + 1] * tb.f.velocity[i + 1]);
    r.line_element = std::max(r.line_element, std::abs(observed - 0.5 * (kv_a + kv_b)));
  }
  return r;
}

EvolutionResiduals evolution_identity_residuals(const Trajectory& traj, double t_from) {
  if (traj.states.size() < 2) throw InvalidInput("evolution identities need at least 2 snapshots");
  EvolutionResiduals worst;
  for (std::size_t k = 0; k + 1 < traj.states.size(); ++k) {
    if (traj.states[k].time < t_from) continue;
    const double gap = traj.states[k + 1].time - traj.states[k].time;
    if (gap > 10.0 * traj.schedule.dt * (1.0 + 1e-12)) {
      throw InvalidInput("snapshots are more than 10 dt apart");
    }
    const auto r = evolution_identity_residuals(traj.states[k], traj.states[k + 1], traj.bc, traj.params);
    worst.kappa = std::max(worst.kappa, r.kappa);
    worst.line_element = std::max(worst.line_element, r.line_element);
    worst.boundary_kappa_rate = std::max(worst.boundary_kappa_rate, r.boundary_kappa_rate);
  }
  return worst;
}

}  // namespace elastica
