#pragma once

#include <span>
#include <vector>

#include "elastica/vec2.hpp"

namespace elastica {

// Parametric not-a-knot cubic spline through planar points, parametrized by
// cumulative chord length.
class CubicSpline2D {
 public:
  explicit CubicSpline2D(std::span<const Vec2> points);

  double parameter_end() const { return knots_.back(); }
  const std::vector<double>& knots() const { return knots_; }

  Vec2 operator()(double t) const;
  Vec2 derivative(double t) const;

  // arclength of the spline over [t0, t1], Gauss-Legendre per knot interval
  double arclength(double t0, double t1) const;
  // arclength from 0 to every knot
  std::vector<double> knot_arclength() const;

 private:
  std::size_t interval(double t) const;
  double piece_length(double u0, double u1) const;

  std::vector<double> knots_;
  std::vector<Vec2> values_;
  std::vector<Vec2> second_;
};

}  // namespace elastica
