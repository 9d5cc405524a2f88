#pragma once

#include <cstddef>
#include <vector>

#include "elastica/curve.hpp"

namespace elastica {

struct TangentNormal {
  std::vector<Vec2> tangent;
  std::vector<Vec2> normal;  // tangent turned by +pi/2
};

// Refit to n equal-chord segments along a not-a-knot cubic spline through the
// nodes. Endpoints are copied exactly. Idempotent on curves that already have
// equal chords.
DiscreteCurve resample_arclength(const DiscreteCurve& curve, std::size_t n);

// Second-order differences: centered in the interior, one-sided at the ends.
// The node index is taken as the parameter, so the result is accurate for
// curves with (nearly) equal chords.
TangentNormal tangent_normal(const DiscreteCurve& curve);
ScalarField curvature(const DiscreteCurve& curve);

// arclength derivatives of a nodal field, second order on nonuniform nodes
ScalarField derivative_s(const DiscreteCurve& curve, const ScalarField& f);
ScalarField second_derivative_s(const DiscreteCurve& curve, const ScalarField& f);

// trapezoid rule in arclength
double integrate(const DiscreteCurve& curve, const ScalarField& f);
// running trapezoid integral, out[0] = 0
ScalarField cumulative_integral(const DiscreteCurve& curve, const ScalarField& f);

// Exact Hausdorff distance between the two polylines viewed as point sets.
double hausdorff_distance(const DiscreteCurve& a, const DiscreteCurve& b);
double directed_hausdorff(const DiscreteCurve& from, const DiscreteCurve& to);

// sum_{i<=k} L^{i+1-1/p} || d^i kappa / ds^i ||_{L^p}, unchanged by dilation;
// derivatives by repeated differencing, p >= 2 (p = inf allowed)
double sobolev_norm(const DiscreteCurve& curve, int k, double p);

// y -> -y
DiscreteCurve reflect(const DiscreteCurve& curve);
DiscreteCurve reverse(const DiscreteCurve& curve);
DiscreteCurve dilate(const DiscreteCurve& curve, double factor);
// rotate about the origin, then translate
DiscreteCurve rigid_motion(const DiscreteCurve& curve, double angle, const Vec2& shift);

}  // namespace elastica
