#pragma once

#include <cstddef>
#include <vector>

#include "elastica/curve.hpp"

namespace elastica {

// F(kappa) = kappa^4/4 - lambda^2 kappa^2/2; stationary curves satisfy
// kappa_s^2 + F(kappa) = E.
double potential(double kappa, double lambda);

struct KappaExtremes {
  double kappa_m = 0.0;
  double kappa_M = 0.0;
};
// E > -lambda^4/4. For E > 0 the orbit spans [-kappa_M, kappa_M]; for E <= 0
// it stays in the positive well [kappa_m, kappa_M] (or its mirror image).
KappaExtremes kappa_extremes(double E, double lambda);

// int_lo^hi kappa^power dkappa / sqrt(E - F(kappa)) on the orbit through
// [kappa_m, kappa_M]; both inverse square root end singularities are removed
// by kappa = kappa_m + u^2 and kappa = kappa_M - u^2.
double orbit_integral(double E, double lambda, double lo, double hi, int power = 0);

// arclength period of kappa; E in (-lambda^4/4, 0) or (0, inf)
double period_L(double E, double lambda);

struct PartialPeriods {
  double L1 = 0.0;  // from kappa_m up to alpha and back
  double L2 = 0.0;  // from alpha up to kappa_M and back
};
// needs F(alpha) < E; for E < 0 alpha must lie in the positive well
PartialPeriods partial_periods(double E, double lambda, double alpha);

// int kappa^2 ds over one period
double kappa_sq_per_period(double E, double lambda);

struct OrbitParams {
  double lambda = 1.0;
  double E = 0.0;
  double kappa0 = 0.0;
  int sign0 = 1;  // sign of kappa_s at s = 0
  void validate() const;
};

// state of the stationary ODE 2 kappa'' = lambda^2 kappa - kappa^3 together with
// the curve it generates and two running integrals
struct OrbitPoint {
  double kappa = 0.0, kappa_s = 0.0, theta = 0.0, x = 0.0, y = 0.0;
  double int_kappa_sq = 0.0, int_kappa = 0.0;
};

// RK4 with substep at most max_step; first-integral drift normalized by
// max(1, |E|) is tracked in the returned value
class OrbitIntegrator {
 public:
  OrbitIntegrator(const OrbitParams& orbit, double theta0, double max_step);
  // raw initial data; no orbit validation (kappa_s0 = 0 at kappa0 = |lambda| is allowed)
  OrbitIntegrator(double lambda, double kappa0, double kappa_s0, double theta0, double max_step);

  // advance by ds using ceil(ds / max_step) equal substeps
  void advance(double ds);
  void advance_fixed(double ds, std::size_t substeps);

  const OrbitPoint& point() const { return state_; }
  double arclength() const { return s_; }
  double max_drift() const { return drift_; }

 private:
  void rk4(double h);
  double lambda_;
  double level_;
  OrbitPoint state_;
  double max_step_;
  double s_ = 0.0;
  double drift_ = 0.0;
};

// substep used by reconstruct for node spacing h
double orbit_substep(double E, double lambda, double h);

struct ReconstructedOrbit {
  DiscreteCurve curve;
  ScalarField kappa;
  ScalarField kappa_s;
  ScalarField theta;
  double int_kappa_sq = 0.0;
  double int_kappa = 0.0;
  double max_drift = 0.0;
};

// Integrates the stationary ODE from (kappa0, sign0 sqrt(E - F(kappa0))) and
// builds n equal-arclength segments starting at the origin with direction
// theta0. Throws NumericError if the normalized first-integral drift exceeds
// 1e-8.
ReconstructedOrbit reconstruct(const OrbitParams& orbit, double total_length, std::size_t n,
                               double theta0 = 0.0);

}  // namespace elastica
