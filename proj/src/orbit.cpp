#include "elastica/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elastica/errors.hpp"
#include "elastica/quadrature.hpp"

namespace elastica {

namespace {

constexpr double kDriftLimit = 1e-8;

struct Orbit {
  double top;     // kappa_M
  double bottom;  // -kappa_M for E > 0, kappa_m for E < 0
  double b;       // lambda^2 - sqrt(lambda^4 + 4E), the other root in kappa^2
};

Orbit orbit_of(double E, double lambda) {
  const auto ext = kappa_extremes(E, lambda);
  const double l2 = lambda * lambda;
  const double s = std::sqrt(l2 * l2 + 4.0 * E);
  return {ext.kappa_M, ext.kappa_m, -4.0 * E / (l2 + s)};
}

double weight(double kappa, int power) {
  switch (power) {
    case 0: return 1.0;
    case 1: return kappa;
    case 2: return kappa * kappa;
    default: return std::pow(kappa, power);
  }
}

}  // namespace

double potential(double kappa, double lambda) {
  const double k2 = kappa * kappa;
  return 0.25 * k2 * k2 - 0.5 * lambda * lambda * k2;
}

KappaExtremes kappa_extremes(double E, double lambda) {
  if (!std::isfinite(lambda) || lambda == 0.0) throw InvalidInput("lambda must be finite and nonzero");
  const double l2 = lambda * lambda;
  if (!std::isfinite(E) || !(E > -0.25 * l2 * l2)) {
    throw OutOfDomain("first-integral level must exceed -lambda^4/4");
  }
  const double s = std::sqrt(l2 * l2 + 4.0 * E);
  KappaExtremes r;
  r.kappa_M = std::sqrt(l2 + s);
  // lambda^2 - s without cancellation
  r.kappa_m = E > 0.0 ? -r.kappa_M : std::sqrt(-4.0 * E / (l2 + s));
  return r;
}

double orbit_integral(double E, double lambda, double lo, double hi, int power) {
  if (E == 0.0) throw OutOfDomain("E = 0 is the separatrix; the orbit never closes");
  const Orbit o = orbit_of(E, lambda);
  const double slack = 1e-12 * std::max(1.0, o.top);
  if (lo > hi) throw InvalidInput("orbit integral needs lo <= hi");
  if (lo < o.bottom - slack || hi > o.top + slack) throw OutOfDomain("integration range leaves the orbit");
  lo = std::max(lo, o.bottom);
  hi = std::min(hi, o.top);
  const double mid = 0.5 * (o.bottom + o.top);
  const QuadratureTolerance tol{1e-11, 1e-11, 50};
  double total = 0.0;

  if (lo < mid) {
    const double end = std::min(hi, mid);
    auto f = [&](double u) {
      const double k = o.bottom + u * u;
      // E - F = (kappa - bottom) Q / 4
      const double q = E > 0.0 ? (2.0 * o.top - u * u) * (k * k - o.b)
                               : (o.top - k) * (o.top + k) * (2.0 * o.bottom + u * u);
      return 4.0 * weight(k, power) / std::sqrt(q);
    };
    total += adaptive_simpson(f, std::sqrt(lo - o.bottom), std::sqrt(end - o.bottom), tol);
  }
  if (hi > mid) {
    const double start = std::max(lo, mid);
    auto f = [&](double u) {
      const double k = o.top - u * u;
      // E - F = (top - kappa) Q / 4
      const double k2b = E > 0.0 ? k * k - o.b : (k - o.bottom) * (k + o.bottom);
      return 4.0 * weight(k, power) / std::sqrt((2.0 * o.top - u * u) * k2b);
    };
    total += adaptive_simpson(f, std::sqrt(o.top - hi), std::sqrt(o.top - start), tol);
  }
  return total;
}

double period_L(double E, double lambda) {
  const Orbit o = orbit_of(E, lambda);
  return 2.0 * orbit_integral(E, lambda, o.bottom, o.top);
}

PartialPeriods partial_periods(double E, double lambda, double alpha) {
  const Orbit o = orbit_of(E, lambda);
  if (!(potential(alpha, lambda) < E)) throw OutOfDomain("partial periods need F(alpha) < E");
  if (E < 0.0 && alpha < 0.0) throw OutOfDomain("for E < 0 alpha must lie in the positive well");
  return {2.0 * orbit_integral(E, lambda, o.bottom, alpha), 2.0 * orbit_integral(E, lambda, alpha, o.top)};
}

double kappa_sq_per_period(double E, double lambda) {
  const Orbit o = orbit_of(E, lambda);
  return 2.0 * orbit_integral(E, lambda, o.bottom, o.top, 2);
}

void OrbitParams::validate() const {
  const auto ext = kappa_extremes(E, lambda);
  if (sign0 != 1 && sign0 != -1) throw InvalidInput("sign0 must be +1 or -1");
  if (!std::isfinite(kappa0)) throw InvalidInput("kappa0 must be finite");
  const double slack = 1e-12 * std::max(1.0, std::abs(E));
  if (potential(kappa0, lambda) > E + slack) {
    throw InvalidInput("kappa0 is outside the orbit: F(kappa0) > E");
  }
  (void)ext;
}

OrbitIntegrator::OrbitIntegrator(const OrbitParams& orbit, double theta0, double max_step)
    : OrbitIntegrator(orbit.lambda, orbit.kappa0,
                      orbit.sign0 * std::sqrt(std::max(0.0, orbit.E - potential(orbit.kappa0, orbit.lambda))),
                      theta0, max_step) {
  orbit.validate();
  level_ = orbit.E;
}

OrbitIntegrator::OrbitIntegrator(double lambda, double kappa0, double kappa_s0, double theta0, double max_step)
    : lambda_(lambda), level_(kappa_s0 * kappa_s0 + potential(kappa0, lambda)), max_step_(max_step) {
  if (!(max_step > 0.0)) throw InvalidInput("orbit substep must be positive");
  state_.kappa = kappa0;
  state_.kappa_s = kappa_s0;
  state_.theta = theta0;
}

void OrbitIntegrator::rk4(double h) {
  const double l2 = lambda_ * lambda_;
  auto rhs = [l2](const OrbitPoint& p) {
    OrbitPoint d;
    d.kappa = p.kappa_s;
    d.kappa_s = 0.5 * (l2 * p.kappa - p.kappa * p.kappa * p.kappa);
    d.theta = p.kappa;
    d.x = std::cos(p.theta);
    d.y = std::sin(p.theta);
    d.int_kappa_sq = p.kappa * p.kappa;
    d.int_kappa = p.kappa;
    return d;
  };
  auto axpy = [](const OrbitPoint& p, double a, const OrbitPoint& d) {
    return OrbitPoint{p.kappa + a * d.kappa, p.kappa_s + a * d.kappa_s, p.theta + a * d.theta,
                      p.x + a * d.x, p.y + a * d.y, p.int_kappa_sq + a * d.int_kappa_sq,
                      p.int_kappa + a * d.int_kappa};
  };
  const OrbitPoint k1 = rhs(state_);
  const OrbitPoint k2 = rhs(axpy(state_, 0.5 * h, k1));
  const OrbitPoint k3 = rhs(axpy(state_, 0.5 * h, k2));
  const OrbitPoint k4 = rhs(axpy(state_, h, k3));
  const double w = h / 6.0;
  state_.kappa += w * (k1.kappa + 2.0 * k2.kappa + 2.0 * k3.kappa + k4.kappa);
  state_.kappa_s += w * (k1.kappa_s + 2.0 * k2.kappa_s + 2.0 * k3.kappa_s + k4.kappa_s);
  state_.theta += w * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta);
  state_.x += w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
  state_.y += w * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
  state_.int_kappa_sq += w * (k1.int_kappa_sq + 2.0 * k2.int_kappa_sq + 2.0 * k3.int_kappa_sq + k4.int_kappa_sq);
  state_.int_kappa += w * (k1.int_kappa + 2.0 * k2.int_kappa + 2.0 * k3.int_kappa + k4.int_kappa);
  s_ += h;
  const double level = state_.kappa_s * state_.kappa_s + potential(state_.kappa, lambda_);
  drift_ = std::max(drift_, std::abs(level - level_) / std::max(1.0, std::abs(level_)));
}

void OrbitIntegrator::advance_fixed(double ds, std::size_t substeps) {
  if (ds == 0.0) return;
  const double h = ds / static_cast<double>(std::max<std::size_t>(substeps, 1));
  for (std::size_t i = 0; i < std::max<std::size_t>(substeps, 1); ++i) rk4(h);
}

void OrbitIntegrator::advance(double ds) {
  if (ds <= 0.0) return;
  advance_fixed(ds, static_cast<std::size_t>(std::ceil(ds / max_step_)));
}

double orbit_substep(double E, double lambda, double h) {
  const double omega = std::max(kappa_extremes(E, lambda).kappa_M, std::abs(lambda));
  return std::min(h / 8.0, 0.002 / omega);
}

ReconstructedOrbit reconstruct(const OrbitParams& orbit, double total_length, std::size_t n, double theta0) {
  orbit.validate();
  if (!(total_length > 0.0) || !std::isfinite(total_length)) throw InvalidInput("total length must be positive");
  if (n < DiscreteCurve::kMinSegments) throw InvalidInput("reconstruct needs n >= 8");
  const double h = total_length / static_cast<double>(n);
  const auto substeps = static_cast<std::size_t>(std::ceil(h / orbit_substep(orbit.E, orbit.lambda, h)));

  OrbitIntegrator integ(orbit, theta0, h);
  std::vector<Vec2> pts(n + 1);
  ScalarField kappa(n + 1), kappa_s(n + 1), theta(n + 1);
  auto save = [&](std::size_t i) {
    const auto& p = integ.point();
    pts[i] = {p.x, p.y};
    kappa[i] = p.kappa;
    kappa_s[i] = p.kappa_s;
    theta[i] = p.theta;
  };
  save(0);
  for (std::size_t i = 1; i <= n; ++i) {
    integ.advance_fixed(h, substeps);
    save(i);
  }
  if (integ.max_drift() > kDriftLimit) {
    throw NumericError("first-integral drift " + std::to_string(integ.max_drift()) +
                       " exceeds 1e-8; refine the reconstruction");
  }
  ReconstructedOrbit out{DiscreteCurve(std::move(pts)), std::move(kappa), std::move(kappa_s), std::move(theta),
                         integ.point().int_kappa_sq, integ.point().int_kappa, integ.max_drift()};
  return out;
}

}  // namespace elastica
