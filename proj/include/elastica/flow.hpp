#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "elastica/curve.hpp"
#include "elastica/energy.hpp"
#include "elastica/errors.hpp"

namespace elastica {

struct BoundarySpec {
  BoundaryMode mode = BoundaryMode::navier;
  double R = 1.0;
  Vec2 tau0{1.0, 0.0};
  Vec2 tau1{1.0, 0.0};
  double alpha = 0.0;

  static BoundarySpec navier(double R, double alpha);
  static BoundarySpec clamped(double R, Vec2 tau0, Vec2 tau1);

  Vec2 left() const { return {0.0, 0.0}; }
  Vec2 right() const { return {R, 0.0}; }
  EnergyParams energy_params(double lambda) const;
  void validate() const;
};

struct FlowState {
  DiscreteCurve curve;
  double time = 0.0;
  EnergyReport report;
};

// Curvature and velocity fields with the boundary closure used by the flow.
// Navier: end curvatures equal alpha. Clamped: a ghost node mirrors the first
// interior node across the normal line at the end, so the centered tangent at
// the end is the prescribed one. In both modes V = 0 at the ends.
struct ClosureFields {
  ScalarField kappa;
  ScalarField velocity;
  std::vector<Vec2> normal;
};
ClosureFields closure_fields(const DiscreteCurve& curve, const BoundarySpec& bc, double lambda);

// energy and gradient norm from the closure fields
EnergyReport flow_energy(const DiscreteCurve& curve, const BoundarySpec& bc, double lambda);

// boundary data mismatch: endpoint positions plus the closure tangent or
// curvature deviation
double boundary_residual(const DiscreteCurve& curve, const BoundarySpec& bc, double lambda);

class StepFailure : public NumericError {
 public:
  StepFailure(const std::string& what, FlowState state)
      : NumericError(what), state_(std::move(state)) {}
  const FlowState& state() const { return state_; }

 private:
  FlowState state_;
};

class Stagnation : public NumericError {
 public:
  using NumericError::NumericError;
};

struct StepOptions {
  // -1 runs the flow with the wrong sign; used to check that the
  // diagnostics notice
  double velocity_sign = 1.0;
};

FlowState make_state(DiscreteCurve curve, double time, const BoundarySpec& bc, const EnergyParams& params);

// One linearly implicit step: the fourth-order part is stabilized by
// (I + dt S) with S = 2 D4 / h^4 on interior nodes, then nodes are
// redistributed to equal chords. Endpoints stay bitwise fixed.
FlowState step(const FlowState& state, double dt, const BoundarySpec& bc, const EnergyParams& params,
               const StepOptions& options = {});

struct Schedule {
  double dt = 1e-5;
  double t_end = 1.0;
  std::size_t snapshot_every = 100;
  double grad_tol = 1e-6;  // stop once the L2 norm of V is below this
  bool allow_halving = false;
  int max_halvings = 20;
  StepOptions step_options;
};

enum class Termination { reached_t_end, converged, energy_increase };
std::string to_string(Termination t);

struct StepRecord {
  double t = 0.0;
  double dt = 0.0;
  double energy = 0.0;
  double bending = 0.0;
  double length = 0.0;
  double grad_norm_sq = 0.0;
  double max_speed = 0.0;
};

struct Trajectory {
  std::vector<FlowState> states;   // snapshots, first and last always kept
  std::vector<StepRecord> history;  // every accepted step, starting at t = 0
  BoundarySpec bc;
  EnergyParams params;
  Schedule schedule;
  Termination termination = Termination::reached_t_end;
  bool coercive = true;
  int halvings = 0;
  double dissipation = 0.0;  // sum of dt * grad_norm_sq after each step
};

// pre: initial endpoints within 1e-8 of (0,0) and (R,0); they are snapped
// exactly and the curve is redistributed to equal chords first
Trajectory run(const DiscreteCurve& initial, const BoundarySpec& bc, const EnergyParams& params,
               const Schedule& schedule);

// |(E_{k+1} - E_{k-1}) / (t_{k+1} - t_{k-1}) + G_k| / max(1, G_k) at every
// interior snapshot; needs >= 3 equally spaced snapshots
std::vector<double> energy_decay_residual(const Trajectory& traj);

struct EvolutionResiduals {
  double kappa = 0.0;         // d/dt kappa + V_ss + kappa^2 V, with the reparametrization term
  double line_element = 0.0;  // d/dt log ds - kappa V
  double boundary_kappa_rate = 0.0;  // |d/dt kappa| at the two endpoints
};
EvolutionResiduals evolution_identity_residuals(const FlowState& a, const FlowState& b,
                                                const BoundarySpec& bc, const EnergyParams& params);
// max over consecutive snapshot pairs starting at or after t_from; snapshots
// must be at most 10 dt apart
EvolutionResiduals evolution_identity_residuals(const Trajectory& traj, double t_from = 0.0);

}  // namespace elastica
