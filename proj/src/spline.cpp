#include "elastica/spline.hpp"

#include <algorithm>
#include <array>

#include "elastica/banded.hpp"
#include "elastica/errors.hpp"

namespace elastica {

namespace {

// second derivatives of a not-a-knot cubic spline through (t_i, y_i)
std::vector<double> not_a_knot_moments(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t m = t.size() - 1;
  std::vector<double> h(m);
  for (std::size_t i = 0; i < m; ++i) h[i] = t[i + 1] - t[i];

  const std::size_t k = m - 1;  // unknowns M_1 .. M_{m-1}
  std::vector<double> sub(k, 0.0), diag(k, 0.0), super(k, 0.0), rhs(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t i = j + 1;
    sub[j] = h[i - 1];
    diag[j] = 2.0 * (h[i - 1] + h[i]);
    super[j] = h[i];
    rhs[j] = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
  }
  // M_0 = ((h0 + h1) M_1 - h0 M_2) / h1, and symmetrically at the far end
  const double h0 = h[0], h1 = h[1];
  diag[0] += h0 * (h0 + h1) / h1;
  super[0] -= h0 * h0 / h1;
  const double ha = h[m - 2], hb = h[m - 1];
  diag[k - 1] += hb * (ha + hb) / ha;
  sub[k - 1] -= hb * hb / ha;

  std::vector<double> inner;
  if (k == 1) {
    inner = {rhs[0] / diag[0]};
  } else {
    inner = solve_tridiagonal(sub, diag, super, rhs);
  }
  std::vector<double> M(m + 1);
  for (std::size_t j = 0; j < k; ++j) M[j + 1] = inner[j];
  M[0] = ((h0 + h1) * M[1] - h0 * M[2]) / h1;
  M[m] = ((ha + hb) * M[m - 1] - hb * M[m - 2]) / ha;
  return M;
}

constexpr std::array<double, 5> kGaussNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                               0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights = {0.2369268850561891, 0.4786286704993665,
                                                 0.5688888888888889, 0.4786286704993665,
                                                 0.2369268850561891};

}  // namespace

CubicSpline2D::CubicSpline2D(std::span<const Vec2> points) : values_(points.begin(), points.end()) {
  if (values_.size() < 4) throw InvalidInput("cubic spline needs at least 4 points");
  knots_.resize(values_.size());
  knots_[0] = 0.0;
  for (std::size_t i = 1; i < values_.size(); ++i) {
    const double h = distance(values_[i], values_[i - 1]);
    if (!(h > 0.0)) throw InvalidInput("cubic spline points must be distinct");
    knots_[i] = knots_[i - 1] + h;
  }
  std::vector<double> xs(values_.size()), ys(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    xs[i] = values_[i].x;
    ys[i] = values_[i].y;
  }
  const auto mx = not_a_knot_moments(knots_, xs);
  const auto my = not_a_knot_moments(knots_, ys);
  second_.resize(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) second_[i] = {mx[i], my[i]};
}

std::size_t CubicSpline2D::interval(double t) const {
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  std::size_t i = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
  return std::min(i, knots_.size() - 2);
}

Vec2 CubicSpline2D::operator()(double t) const {
  const std::size_t i = interval(t);
  const double h = knots_[i + 1] - knots_[i];
  const double a = knots_[i + 1] - t, b = t - knots_[i];
  return second_[i] * (a * a * a / (6.0 * h)) + second_[i + 1] * (b * b * b / (6.0 * h)) +
         (values_[i] / h - second_[i] * (h / 6.0)) * a +
         (values_[i + 1] / h - second_[i + 1] * (h / 6.0)) * b;
}

Vec2 CubicSpline2D::derivative(double t) const {
  const std::size_t i = interval(t);
  const double h = knots_[i + 1] - knots_[i];
  const double a = knots_[i + 1] - t, b = t - knots_[i];
  return second_[i] * (-a * a / (2.0 * h)) + second_[i + 1] * (b * b / (2.0 * h)) +
         (values_[i + 1] - values_[i]) / h - (second_[i + 1] - second_[i]) * (h / 6.0);
}

double CubicSpline2D::piece_length(double u0, double u1) const {
  const double mid = 0.5 * (u0 + u1), half = 0.5 * (u1 - u0);
  double sum = 0.0;
  for (std::size_t q = 0; q < kGaussNodes.size(); ++q) {
    sum += kGaussWeights[q] * norm(derivative(mid + half * kGaussNodes[q]));
  }
  return sum * half;
}

double CubicSpline2D::arclength(double t0, double t1) const {
  if (t1 < t0) return -arclength(t1, t0);
  const std::size_t i0 = interval(t0), i1 = interval(t1);
  if (i0 == i1) return piece_length(t0, t1);
  double total = piece_length(t0, knots_[i0 + 1]);
  for (std::size_t i = i0 + 1; i < i1; ++i) total += piece_length(knots_[i], knots_[i + 1]);
  return total + piece_length(knots_[i1], t1);
}

std::vector<double> CubicSpline2D::knot_arclength() const {
  std::vector<double> s(knots_.size(), 0.0);
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    s[i + 1] = s[i] + piece_length(knots_[i], knots_[i + 1]);
  }
  return s;
}

}  // namespace elastica
