#include "elastica/generators.hpp"

#include <cmath>
#include <numbers>

#include "elastica/errors.hpp"
#include "elastica/geometry.hpp"
#include "elastica/spline.hpp"

namespace elastica {

namespace {

constexpr std::size_t kDense = 8;  // dense samples per output segment before resampling

template <class F>
DiscreteCurve sampled(std::size_t n, F&& at) {
  if (n < DiscreteCurve::kMinSegments) throw InvalidInput("generators need n >= 8");
  const std::size_t m = kDense * n;
  std::vector<Vec2> pts(m + 1);
  for (std::size_t i = 0; i <= m; ++i) pts[i] = at(static_cast<double>(i) / static_cast<double>(m));
  return resample_arclength(DiscreteCurve(std::move(pts)), n);
}

void check_R(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) throw InvalidInput("R must be positive");
}

}  // namespace

DiscreteCurve segment_curve(double R, std::size_t n) {
  check_R(R);
  if (n < DiscreteCurve::kMinSegments) throw InvalidInput("generators need n >= 8");
  std::vector<Vec2> pts(n + 1);
  for (std::size_t i = 0; i <= n; ++i) pts[i] = {R * static_cast<double>(i) / static_cast<double>(n), 0.0};
  pts.back() = {R, 0.0};
  return DiscreteCurve(std::move(pts));
}

DiscreteCurve sine_curve(double R, double amplitude, int wavenumber, std::size_t n) {
  check_R(R);
  if (amplitude == 0.0) return segment_curve(R, n);
  const double k = wavenumber * std::numbers::pi / R;
  auto c = sampled(n, [&](double t) {
    const double x = R * t;
    return Vec2{x, amplitude * std::sin(k * x)};
  });
  std::vector<Vec2> pts(c.points().begin(), c.points().end());
  pts.front() = {0.0, 0.0};
  pts.back() = {R, 0.0};
  return DiscreteCurve(std::move(pts));
}

DiscreteCurve arc_curve(double R, double height, std::size_t n) {
  check_R(R);
  if (height == 0.0) return segment_curve(R, n);
  // circle through (0,0), (R,0), (R/2, height)
  const double yc = (height * height - 0.25 * R * R) / (2.0 * height);
  const double r = std::abs(height - yc);
  const Vec2 centre{0.5 * R, yc};
  const double a0 = std::atan2(-yc, -0.5 * R);
  const double a1 = std::atan2(-yc, 0.5 * R);
  const double two_pi = 2.0 * std::numbers::pi;
  // clockwise over the top for height > 0, counter-clockwise under otherwise
  const double sweep = height > 0.0 ? -std::fmod(a0 - a1 + two_pi, two_pi) : std::fmod(a1 - a0 + two_pi, two_pi);
  auto c = sampled(n, [&](double t) {
    const double a = a0 + t * sweep;
    return centre + Vec2{r * std::cos(a), r * std::sin(a)};
  });
  std::vector<Vec2> pts(c.points().begin(), c.points().end());
  pts.front() = {0.0, 0.0};
  pts.back() = {R, 0.0};
  return DiscreteCurve(std::move(pts));
}

DiscreteCurve hermite_curve(double R, Vec2 tau0, Vec2 tau1, double speed, std::size_t n) {
  check_R(R);
  if (!(speed > 0.0)) throw InvalidInput("Hermite speed must be positive");
  const Vec2 p1{R, 0.0};
  const Vec2 m0 = speed * normalized(tau0), m1 = speed * normalized(tau1);
  auto c = sampled(n, [&](double t) {
    const double t2 = t * t, t3 = t2 * t;
    return (3.0 * t2 - 2.0 * t3) * p1 + (t3 - 2.0 * t2 + t) * m0 + (t3 - t2) * m1;
  });
  std::vector<Vec2> pts(c.points().begin(), c.points().end());
  pts.front() = {0.0, 0.0};
  pts.back() = p1;
  return DiscreteCurve(std::move(pts));
}

DiscreteCurve loop_curve(double R, double radius, std::size_t n) {
  check_R(R);
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidInput("loop radius must be positive");
  auto c = sampled(n, [&](double t) {
    const double a = 2.0 * std::numbers::pi * t;
    const double drift = R * t * t * (3.0 - 2.0 * t);
    return Vec2{radius * (std::cos(a) - 1.0) + drift, radius * std::sin(a)};
  });
  std::vector<Vec2> pts(c.points().begin(), c.points().end());
  pts.front() = {0.0, 0.0};
  pts.back() = {R, 0.0};
  return DiscreteCurve(std::move(pts));
}

DiscreteCurve random_spline_curve(double R, std::size_t knots, double amplitude, std::size_t n,
                                  std::mt19937_64& rng) {
  check_R(R);
  if (knots < 2) throw InvalidInput("random spline needs at least 2 interior knots");
  std::uniform_real_distribution<double> height(-amplitude, amplitude);
  std::vector<Vec2> ctrl(knots + 2);
  for (std::size_t i = 0; i < ctrl.size(); ++i) {
    const double x = R * static_cast<double>(i) / static_cast<double>(ctrl.size() - 1);
    ctrl[i] = {x, (i == 0 || i + 1 == ctrl.size()) ? 0.0 : height(rng)};
  }
  const CubicSpline2D spline(ctrl);
  const double T = spline.parameter_end();
  auto c = sampled(n, [&](double t) { return spline(t * T); });
  std::vector<Vec2> pts(c.points().begin(), c.points().end());
  pts.front() = {0.0, 0.0};
  pts.back() = {R, 0.0};
  return DiscreteCurve(std::move(pts));
}

DiscreteCurve random_fourier_curve(double R, std::size_t modes, double amplitude, std::size_t n,
                                   std::mt19937_64& rng) {
  check_R(R);
  if (modes < 1) throw InvalidInput("random Fourier curve needs at least one mode");
  std::uniform_real_distribution<double> coef(-amplitude, amplitude);
  std::vector<double> c(modes);
  for (std::size_t k = 0; k < modes; ++k) c[k] = coef(rng) / static_cast<double>((k + 1) * (k + 1));
  auto curve = sampled(n, [&](double t) {
    double y = 0.0;
    for (std::size_t k = 0; k < modes; ++k) y += c[k] * std::sin(static_cast<double>(k + 1) * std::numbers::pi * t);
    return Vec2{R * t, y};
  });
  std::vector<Vec2> pts(curve.points().begin(), curve.points().end());
  pts.front() = {0.0, 0.0};
  pts.back() = {R, 0.0};
  return DiscreteCurve(std::move(pts));
}

}  // namespace elastica
