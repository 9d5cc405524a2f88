#include "elastica/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elastica/errors.hpp"
#include "elastica/kernels.hpp"
#include "elastica/spline.hpp"

namespace elastica {

namespace {

constexpr int kMaxResampleIterations = 50;

void require_same_size(const DiscreteCurve& c, const ScalarField& f) {
  if (f.size() != c.size()) {
    throw InvalidInput("field has " + std::to_string(f.size()) + " values for a curve with " +
                       std::to_string(c.size()) + " nodes");
  }
}

}  // namespace

DiscreteCurve resample_arclength(const DiscreteCurve& curve, std::size_t n) {
  if (n < DiscreteCurve::kMinSegments) {
    throw InvalidInput("resampling needs at least " + std::to_string(DiscreteCurve::kMinSegments) +
                       " segments");
  }
  if (curve.length() < 1e-12) throw InvalidInput("curve length is below 1e-12");

  const CubicSpline2D spline(curve.points());
  const auto knot_s = spline.knot_arclength();
  const double total = knot_s.back();
  const auto& knots = spline.knots();

  // parameters whose cumulative chord lengths are k * total / n
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(n);
    auto it = std::upper_bound(knot_s.begin(), knot_s.end(), target);
    std::size_t j = it == knot_s.begin() ? 0 : static_cast<std::size_t>(it - knot_s.begin()) - 1;
    j = std::min(j, knots.size() - 2);
    const double frac = (target - knot_s[j]) / (knot_s[j + 1] - knot_s[j]);
    t[k] = knots[j] + frac * (knots[j + 1] - knots[j]);
  }
  t.front() = 0.0;
  t.back() = spline.parameter_end();

  std::vector<Vec2> pts(n + 1);
  auto place = [&]() {
    for (std::size_t k = 0; k <= n; ++k) pts[k] = spline(t[k]);
    pts.front() = curve.front();
    pts.back() = curve.back();
  };
  place();

  for (int iter = 0; iter < kMaxResampleIterations; ++iter) {
    double chord_total = 0.0;
    for (std::size_t k = 0; k < n; ++k) chord_total += distance(pts[k], pts[k + 1]);
    const double h = chord_total / static_cast<double>(n);
    double worst = 0.0, running = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      running += distance(pts[k - 1], pts[k]);
      const double err = running - h * static_cast<double>(k);
      worst = std::max(worst, std::abs(err));
      t[k] -= err / norm(spline.derivative(t[k]));
    }
    if (worst <= 1e-14 * chord_total) break;
    place();
  }
  return DiscreteCurve(std::move(pts));
}

TangentNormal tangent_normal(const DiscreteCurve& curve) {
  const auto p = curve.points();
  const std::size_t n = curve.segments();
  TangentNormal tn;
  tn.tangent.resize(n + 1);
  tn.normal.resize(n + 1);
  tn.tangent[0] = normalized(-1.5 * p[0] + 2.0 * p[1] - 0.5 * p[2]);
  tn.tangent[n] = normalized(1.5 * p[n] - 2.0 * p[n - 1] + 0.5 * p[n - 2]);
  for (std::size_t i = 1; i < n; ++i) tn.tangent[i] = normalized(p[i + 1] - p[i - 1]);
  for (std::size_t i = 0; i <= n; ++i) tn.normal[i] = perp(tn.tangent[i]);
  return tn;
}

ScalarField curvature(const DiscreteCurve& curve) {
  const auto p = curve.points();
  const std::size_t n = curve.segments();
  ScalarField kappa(n + 1);
  kernels::omp::curvature_interior(p, kappa);
  auto one_sided = [](const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d, double orient) {
    const Vec2 d1 = orient * (-1.5 * a + 2.0 * b - 0.5 * c);
    const Vec2 d2 = 2.0 * a - 5.0 * b + 4.0 * c - d;
    const double g = norm(d1);
    return cross(d1, d2) / (g * g * g);
  };
  kappa[0] = one_sided(p[0], p[1], p[2], p[3], 1.0);
  kappa[n] = one_sided(p[n], p[n - 1], p[n - 2], p[n - 3], -1.0);
  return kappa;
}

ScalarField derivative_s(const DiscreteCurve& curve, const ScalarField& f) {
  require_same_size(curve, f);
  const auto& s = curve.arclength();
  const std::size_t n = curve.segments();
  ScalarField out(n + 1);
  for (std::size_t i = 1; i < n; ++i) {
    const double hm = s[i] - s[i - 1], hp = s[i + 1] - s[i];
    out[i] = (hm * hm * f[i + 1] + (hp * hp - hm * hm) * f[i] - hp * hp * f[i - 1]) /
             (hm * hp * (hm + hp));
  }
  // one-sided three-point formulas
  auto edge = [](double h1, double h2, double f0, double f1, double f2) {
    const double H = h1 + h2;
    return (-(2.0 * h1 + h2) / (h1 * H)) * f0 + (H / (h1 * h2)) * f1 - (h1 / (h2 * H)) * f2;
  };
  out[0] = edge(s[1] - s[0], s[2] - s[1], f[0], f[1], f[2]);
  out[n] = -edge(s[n] - s[n - 1], s[n - 1] - s[n - 2], f[n], f[n - 1], f[n - 2]);
  return out;
}

ScalarField second_derivative_s(const DiscreteCurve& curve, const ScalarField& f) {
  require_same_size(curve, f);
  const auto& s = curve.arclength();
  const std::size_t n = curve.segments();
  ScalarField out(n + 1);
  for (std::size_t i = 1; i < n; ++i) {
    const double hm = s[i] - s[i - 1], hp = s[i + 1] - s[i];
    out[i] = 2.0 * (hm * f[i + 1] - (hm + hp) * f[i] + hp * f[i - 1]) / (hm * hp * (hm + hp));
  }
  auto edge = [](const double* ss, const double* ff) {
    // second derivative at ss[0] of the cubic through four points
    double total = 0.0;
    for (int j = 0; j < 4; ++j) {
      double denom = 1.0, num = 0.0;
      for (int k = 0; k < 4; ++k) {
        if (k == j) continue;
        denom *= ss[j] - ss[k];
      }
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          if (a == j || b == j || a == b) continue;
          double prod = 1.0;
          for (int k = 0; k < 4; ++k) {
            if (k != j && k != a && k != b) prod *= ss[0] - ss[k];
          }
          num += prod;
        }
      }
      total += ff[j] * num / denom;
    }
    return total;
  };
  const double s_lo[4] = {s[0], s[1], s[2], s[3]};
  const double f_lo[4] = {f[0], f[1], f[2], f[3]};
  const double s_hi[4] = {s[n], s[n - 1], s[n - 2], s[n - 3]};
  const double f_hi[4] = {f[n], f[n - 1], f[n - 2], f[n - 3]};
  out[0] = edge(s_lo, f_lo);
  out[n] = edge(s_hi, f_hi);
  return out;
}

double integrate(const DiscreteCurve& curve, const ScalarField& f) {
  require_same_size(curve, f);
  double total = 0.0;
  for (std::size_t i = 0; i < curve.segments(); ++i) total += 0.5 * curve.chord(i) * (f[i] + f[i + 1]);
  return total;
}

ScalarField cumulative_integral(const DiscreteCurve& curve, const ScalarField& f) {
  require_same_size(curve, f);
  ScalarField out(curve.size(), 0.0);
  for (std::size_t i = 0; i < curve.segments(); ++i) {
    out[i + 1] = out[i] + 0.5 * curve.chord(i) * (f[i] + f[i + 1]);
  }
  return out;
}

double directed_hausdorff(const DiscreteCurve& from, const DiscreteCurve& to) {
  return kernels::omp::directed_hausdorff(from.points(), to.points());
}

double hausdorff_distance(const DiscreteCurve& a, const DiscreteCurve& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double sobolev_norm(const DiscreteCurve& curve, int k, double p) {
  if (k < 0) throw InvalidInput("Sobolev order must be non-negative");
  if (!(p >= 2.0)) throw InvalidInput("Sobolev exponent must be >= 2");
  ScalarField d = curvature(curve);
  const double L = curve.length();
  double total = 0.0;
  for (int order = 0; order <= k; ++order) {
    if (order > 0) d = derivative_s(curve, d);
    ScalarField powered(d.size());
    if (std::isinf(p)) {
      double m = 0.0;
      for (double v : d) m = std::max(m, std::abs(v));
      total += std::pow(L, order + 1) * m;
      continue;
    }
    for (std::size_t i = 0; i < d.size(); ++i) powered[i] = std::pow(std::abs(d[i]), p);
    total += std::pow(L, order + 1 - 1.0 / p) * std::pow(integrate(curve, powered), 1.0 / p);
  }
  return total;
}

DiscreteCurve reflect(const DiscreteCurve& curve) {
  std::vector<Vec2> pts(curve.points().begin(), curve.points().end());
  for (auto& q : pts) q.y = -q.y;
  return DiscreteCurve(std::move(pts));
}

DiscreteCurve reverse(const DiscreteCurve& curve) {
  std::vector<Vec2> pts(curve.points().rbegin(), curve.points().rend());
  return DiscreteCurve(std::move(pts));
}

DiscreteCurve dilate(const DiscreteCurve& curve, double factor) {
  if (!(factor > 0.0)) throw InvalidInput("dilation factor must be positive");
  std::vector<Vec2> pts(curve.points().begin(), curve.points().end());
  for (auto& q : pts) q *= factor;
  return DiscreteCurve(std::move(pts));
}

DiscreteCurve rigid_motion(const DiscreteCurve& curve, double angle, const Vec2& shift) {
  std::vector<Vec2> pts(curve.points().begin(), curve.points().end());
  for (auto& q : pts) q = rotate(q, angle) + shift;
  return DiscreteCurve(std::move(pts));
}

}  // namespace elastica
