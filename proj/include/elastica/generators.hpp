#pragma once

#include <cstddef>
#include <random>

#include "elastica/curve.hpp"

namespace elastica {

// Built-in curves with endpoints (0,0) and (R,0), n equal-chord segments.

DiscreteCurve segment_curve(double R, std::size_t n);

// graph of amplitude * sin(wavenumber * pi * x / R)
DiscreteCurve sine_curve(double R, double amplitude, int wavenumber, std::size_t n);

// circular arc through both endpoints rising to the given height at x = R/2
// (negative height bends downward)
DiscreteCurve arc_curve(double R, double height, std::size_t n);

// cubic Hermite curve with end derivatives speed * tau0 and speed * tau1
DiscreteCurve hermite_curve(double R, Vec2 tau0, Vec2 tau1, double speed, std::size_t n);

// one counterclockwise loop of the given radius leaving (0,0) and arriving at
// (R,0) with vertical tangent, drifted sideways by a smoothstep in x
DiscreteCurve loop_curve(double R, double radius, std::size_t n);

// graph of a random not-a-knot spline through `knots` interior points with
// heights uniform in [-amplitude, amplitude]
DiscreteCurve random_spline_curve(double R, std::size_t knots, double amplitude, std::size_t n,
                                  std::mt19937_64& rng);

// graph of sum_k c_k sin(k pi x / R), k = 1..modes, c_k uniform in
// [-amplitude, amplitude] / k^2; smooth, unlike the spline curves
DiscreteCurve random_fourier_curve(double R, std::size_t modes, double amplitude, std::size_t n,
                                   std::mt19937_64& rng);

}  // namespace elastica
