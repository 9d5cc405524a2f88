#include "elastica/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "elastica/errors.hpp"
#include "elastica/geometry.hpp"

namespace elastica {

SetDistance distance_to_set(const DiscreteCurve& curve, const std::vector<EquilibriumRecord>& catalog) {
  if (catalog.empty()) throw InvalidInput("distance_to_set needs a nonempty catalog");
  SetDistance best{std::numeric_limits<double>::infinity(), 0, false};
  const DiscreteCurve mirrored = reflect(curve);
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const double d = hausdorff_distance(curve, catalog[i].curve);
    if (d < best.distance) best = {d, i, false};
    // distance to the reflected record equals that of the reflected curve
    const double r = hausdorff_distance(mirrored, catalog[i].curve);
    if (r < best.distance) best = {r, i, true};
  }
  return best;
}

namespace {

double speed_between(const Trajectory& traj, double t0, double t1) {
  double v = 0.0;
  for (const auto& rec : traj.history) {
    if (rec.t < t0 - 1e-15 || rec.t > t1 + 1e-15) continue;
    v = std::max(v, rec.max_speed);
  }
  return v;
}

}  // namespace

LipschitzEstimate lipschitz_estimate(const Trajectory& traj, const std::vector<EquilibriumRecord>& catalog) {
  LipschitzEstimate out;
  if (traj.states.size() < 2) return out;
  std::vector<double> d(traj.states.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = distance_to_set(traj.states[i].curve, catalog).distance;
  for (std::size_t i = 1; i < d.size(); ++i) {
    const double dt = traj.states[i].time - traj.states[i - 1].time;
    if (dt > 0.0) out.rate = std::max(out.rate, std::abs(d[i] - d[i - 1]) / dt);
  }
  out.speed_bound = speed_between(traj, traj.states.front().time, traj.states.back().time);
  return out;
}

double curvature_distance(const DiscreteCurve& a, const DiscreteCurve& b) {
  const std::size_t n = std::max(a.segments(), b.segments());
  const ScalarField ka = curvature(resample_arclength(a, n));
  const ScalarField kb = curvature(resample_arclength(b, n));
  double d = 0.0;
  for (std::size_t i = 0; i < ka.size(); ++i) d = std::max(d, std::abs(ka[i] - kb[i]));
  return d;
}

ConvergenceVerdict verdict(const Trajectory& traj, const std::vector<EquilibriumRecord>& catalog,
                           const Tolerances& tol) {
  ConvergenceVerdict v;
  if (traj.states.empty()) return v;
  const FlowState& last = traj.states.back();
  v.final_grad_norm = std::sqrt(std::max(0.0, last.report.gradient_norm_sq));
  if (catalog.empty()) return v;

  const std::size_t count = std::min<std::size_t>(10, traj.states.size());
  const std::size_t first = traj.states.size() - count;
  std::vector<SetDistance> tail;
  for (std::size_t i = first; i < traj.states.size(); ++i) tail.push_back(distance_to_set(traj.states[i].curve, catalog));

  v.limit = tail.back().index;
  v.limit_reflected = tail.back().reflected;
  v.final_distance = tail.back().distance;
  v.distance_monotone = true;
  v.limit_constant = true;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    if (tail[i].distance > tail[i - 1].distance + 1e-10) v.distance_monotone = false;
    if (tail[i].index != tail[0].index || tail[i].reflected != tail[0].reflected) v.limit_constant = false;
  }

  const DiscreteCurve& target = catalog[*v.limit].curve;
  v.final_curvature_distance =
      curvature_distance(v.limit_reflected ? reflect(last.curve) : last.curve, target);

  const LipschitzEstimate lip = lipschitz_estimate(traj, catalog);
  v.dt_lipschitz_estimate = lip.rate;
  v.speed_bound = lip.speed_bound;

  v.converged = v.final_grad_norm < tol.grad && v.final_distance < tol.dist &&
                v.final_curvature_distance < tol.dist && v.distance_monotone && v.limit_constant;
  return v;
}

std::vector<double> dyadic_gradient_minima(const Trajectory& traj) {
  std::vector<double> out;
  if (traj.history.size() < 2) return out;
  const double t1 = traj.history[1].t;
  if (!(t1 > 0.0)) return out;
  double lo = 0.0, hi = t1;
  std::size_t i = 0;
  while (i < traj.history.size()) {
    double m = std::numeric_limits<double>::infinity();
    for (; i < traj.history.size() && traj.history[i].t <= hi * (1.0 + 1e-12); ++i)
      m = std::min(m, std::sqrt(std::max(0.0, traj.history[i].grad_norm_sq)));
    if (std::isfinite(m)) out.push_back(m);
    lo = hi;
    hi = lo * 2.0;
  }
  return out;
}

DissipationBalance dissipation_balance(const Trajectory& traj) {
  DissipationBalance b;
  b.dissipation = traj.dissipation;
  if (!traj.history.empty()) b.energy_drop = traj.history.front().energy - traj.history.back().energy;
  return b;
}

}  // namespace elastica
