#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "elastica/catalog.hpp"
#include "elastica/curve.hpp"
#include "elastica/flow.hpp"

namespace elastica {

struct SetDistance {
  double distance = 0.0;
  std::size_t index = 0;
  bool reflected = false;  // attained by the y -> -y copy of the record
};

// minimum Hausdorff distance to the records and their reflections
SetDistance distance_to_set(const DiscreteCurve& curve, const std::vector<EquilibriumRecord>& catalog);

struct LipschitzEstimate {
  double rate = 0.0;       // max |d(t2) - d(t1)| / (t2 - t1) over consecutive snapshots
  double speed_bound = 0.0;  // max |V| over the steps covered by the snapshots
};
LipschitzEstimate lipschitz_estimate(const Trajectory& traj, const std::vector<EquilibriumRecord>& catalog);

// sup |kappa_a - kappa_b| after resampling both to the finer node count
double curvature_distance(const DiscreteCurve& a, const DiscreteCurve& b);

struct Tolerances {
  double grad = 1e-6;
  double dist = 1e-3;
};

struct ConvergenceVerdict {
  bool converged = false;
  std::optional<std::size_t> limit;
  bool limit_reflected = false;
  double final_grad_norm = 0.0;
  double final_distance = 0.0;
  double final_curvature_distance = 0.0;
  double dt_lipschitz_estimate = 0.0;
  double speed_bound = 0.0;
  bool distance_monotone = false;  // over the last 10 snapshots, up to 1e-10
  bool limit_constant = false;     // same record over the last 10 snapshots
};

// converged iff the gradient norm and both distances are below tolerance,
// the distance is non-increasing at the end and the closest record is fixed
ConvergenceVerdict verdict(const Trajectory& traj, const std::vector<EquilibriumRecord>& catalog,
                           const Tolerances& tol = {});

// Minimum gradient norm over [0, t1], [t1, 2 t1], [2 t1, 4 t1], ... where t1 is
// the first recorded step time; on a converging run these minima decrease.
std::vector<double> dyadic_gradient_minima(const Trajectory& traj);

struct DissipationBalance {
  double dissipation = 0.0;  // sum of dt * grad_norm_sq
  double energy_drop = 0.0;  // E(0) - E(end)
};
DissipationBalance dissipation_balance(const Trajectory& traj);

}  // namespace elastica
