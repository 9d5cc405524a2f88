#pragma once

#include "elastica/curve.hpp"

namespace elastica {

enum class BoundaryMode { clamped, navier };

struct EnergyParams {
  double lambda = 1.0;
  double alpha = 0.0;  // only enters the Navier energy
  BoundaryMode mode = BoundaryMode::navier;

  // throws InvalidInput unless lambda is finite and nonzero and alpha finite
  void validate() const;
  // |alpha| < |lambda|, the regime where the energy controls bending and length
  bool coercive() const;
};

struct EnergyReport {
  double total = 0.0;
  double bending = 0.0;       // int kappa^2 ds
  double length_term = 0.0;   // lambda^2 L
  double linear_term = 0.0;   // -2 alpha int kappa ds (Navier only)
  double gradient_norm_sq = 0.0;  // int V^2 ds
};

// Trapezoid quadrature on the one-sided-ends curvature field.
EnergyReport energy(const DiscreteCurve& curve, const EnergyParams& params);

// V = 2 kappa_ss + kappa^3 - lambda^2 kappa. Endpoint values are 0 since the
// endpoints are fixed; in Navier mode the end curvatures are taken as alpha
// when forming kappa_ss, in clamped mode kappa_ss next to each end uses a
// one-sided four-node formula.
ScalarField velocity_field(const DiscreteCurve& curve, const EnergyParams& params);

// largest C with E >= C (int kappa^2 + L), from the Young inequality split;
// needs |alpha| < |lambda|
double coercivity_constant(double alpha, double lambda);

struct CoercivityResult {
  bool bound_holds = false;
  double constant = 0.0;
  double energy = 0.0;        // E_{lambda,alpha}
  double lower_bound = 0.0;   // C (int kappa^2 + L)
};
CoercivityResult coercivity_check(const DiscreteCurve& curve, const EnergyParams& params);

struct VariationResult {
  double analytic = 0.0;           // int V phi ds
  double finite_difference = 0.0;  // central difference of the energy
  double relative_error = 0.0;
};
// Directional derivative along phi * normal, finite difference step 1e-5 by
// default. phi must vanish at both ends (PreconditionViolation otherwise);
// its arclength derivative should too, unless the curve meets the natural
// boundary condition, or a boundary term is missing.
VariationResult first_variation_check(const DiscreteCurve& curve, const EnergyParams& params,
                                      const ScalarField& phi, double step = 0.0);

}  // namespace elastica
