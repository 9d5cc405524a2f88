#include "elastica/energy.hpp"

#include <algorithm>
#include <cmath>

#include "elastica/errors.hpp"
#include "elastica/geometry.hpp"
#include "elastica/kernels.hpp"

namespace elastica {

void EnergyParams::validate() const {
  if (!std::isfinite(lambda) || lambda == 0.0) throw InvalidInput("lambda must be finite and nonzero");
  if (!std::isfinite(alpha)) throw InvalidInput("alpha must be finite");
}

bool EnergyParams::coercive() const { return std::abs(alpha) < std::abs(lambda); }

EnergyReport energy(const DiscreteCurve& curve, const EnergyParams& params) {
  params.validate();
  const ScalarField kappa = curvature(curve);
  ScalarField sq(kappa.size());
  for (std::size_t i = 0; i < kappa.size(); ++i) sq[i] = kappa[i] * kappa[i];

  EnergyReport r;
  r.bending = integrate(curve, sq);
  r.length_term = params.lambda * params.lambda * curve.length();
  if (params.mode == BoundaryMode::navier) r.linear_term = -2.0 * params.alpha * integrate(curve, kappa);
  r.total = r.bending + r.length_term + r.linear_term;

  const ScalarField v = velocity_field(curve, params);
  for (std::size_t i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
  r.gradient_norm_sq = integrate(curve, sq);
  return r;
}

namespace {

// second derivative at x of the cubic through (x[j], f[j]), j = 0..3
double lagrange_second(const double* x, const double* f, double at) {
  double out = 0.0;
  for (int j = 0; j < 4; ++j) {
    double num = 0.0, den = 1.0;
    for (int k = 0; k < 4; ++k) {
      if (k == j) continue;
      num += at - x[k];
      den *= x[j] - x[k];
    }
    out += f[j] * 2.0 * num / den;
  }
  return out;
}

}  // namespace

ScalarField velocity_field(const DiscreteCurve& curve, const EnergyParams& params) {
  params.validate();
  ScalarField kappa = curvature(curve);
  if (params.mode == BoundaryMode::navier) {
    kappa.front() = params.alpha;
    kappa.back() = params.alpha;
  }
  ScalarField v(kappa.size(), 0.0);
  const auto& s = curve.arclength();
  kernels::omp::velocity_interior(s, kappa, params.lambda, v);
  if (params.mode == BoundaryMode::clamped) {
    // the one-sided end curvature is only O(h^2), so kappa_ss next to the
    // ends comes from nodes 1..4 (and their mirror) instead
    const std::size_t n = curve.segments();
    const double lam2 = params.lambda * params.lambda;
    auto patch = [&](std::size_t i, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
      const double x[4] = {s[a], s[b], s[c], s[d]};
      const double f[4] = {kappa[a], kappa[b], kappa[c], kappa[d]};
      const double k = kappa[i];
      v[i] = 2.0 * lagrange_second(x, f, s[i]) + k * k * k - lam2 * k;
    };
    patch(1, 1, 2, 3, 4);
    patch(n - 1, n - 1, n - 2, n - 3, n - 4);
  }
  return v;
}

double coercivity_constant(double alpha, double lambda) {
  if (!std::isfinite(alpha) || !std::isfinite(lambda) || !(std::abs(alpha) < std::abs(lambda))) {
    throw PreconditionViolation("coercivity needs |alpha| < |lambda|");
  }
  // min{1 - eps, lambda^2 - alpha^2/eps} is largest where the two branches meet
  const double b = lambda * lambda - 1.0;
  const double a2 = alpha * alpha;
  double eps;
  if (b > 0.0) {
    eps = 2.0 * a2 / (b + std::sqrt(b * b + 4.0 * a2));
  } else {
    eps = 0.5 * (-b + std::sqrt(b * b + 4.0 * a2));
  }
  return 1.0 - eps;
}

CoercivityResult coercivity_check(const DiscreteCurve& curve, const EnergyParams& params) {
  params.validate();
  CoercivityResult r;
  r.constant = coercivity_constant(params.alpha, params.lambda);
  const ScalarField kappa = curvature(curve);
  ScalarField sq(kappa.size());
  for (std::size_t i = 0; i < kappa.size(); ++i) sq[i] = kappa[i] * kappa[i];
  const double bending = integrate(curve, sq);
  r.energy = bending - 2.0 * params.alpha * integrate(curve, kappa) +
             params.lambda * params.lambda * curve.length();
  r.lower_bound = r.constant * (bending + curve.length());
  r.bound_holds = r.energy >= r.lower_bound - 1e-12 * std::max(1.0, std::abs(r.energy));
  return r;
}

VariationResult first_variation_check(const DiscreteCurve& curve, const EnergyParams& params,
                                      const ScalarField& phi, double step) {
  params.validate();
  if (phi.size() != curve.size()) throw InvalidInput("bump must have one value per node");
  const auto tn = tangent_normal(curve);
  double phi_max = 0.0;
  for (double v : phi) phi_max = std::max(phi_max, std::abs(v));
  if (phi_max == 0.0) throw InvalidInput("bump is identically zero");
  if (phi.front() != 0.0 || phi.back() != 0.0) throw PreconditionViolation("bump must vanish at both endpoints");
  if (step <= 0.0) step = 1e-5;

  auto shifted = [&](double h) {
    std::vector<Vec2> pts(curve.points().begin(), curve.points().end());
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] += (h * phi[i]) * tn.normal[i];
    return DiscreteCurve(std::move(pts));
  };
  const double ep = energy(shifted(step), params).total;
  const double em = energy(shifted(-step), params).total;

  const ScalarField v = velocity_field(curve, params);
  ScalarField prod(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) prod[i] = v[i] * phi[i];

  VariationResult r;
  r.analytic = integrate(curve, prod);
  r.finite_difference = (ep - em) / (2.0 * step);
  const double scale = std::max(std::abs(r.analytic), std::abs(r.finite_difference));
  r.relative_error = scale > 0.0 ? std::abs(r.analytic - r.finite_difference) / scale : 0.0;
  return r;
}

}  // namespace elastica
