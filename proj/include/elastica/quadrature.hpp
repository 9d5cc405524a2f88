#pragma once

#include <cmath>
#include <functional>

namespace elastica {

struct QuadratureTolerance {
  double absolute = 1e-11;
  double relative = 1e-11;
  int max_depth = 50;
};

// Adaptive Simpson with Richardson correction. Throws NumericError when the
// recursion depth is exhausted before the local tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureTolerance& tol = {});

}  // namespace elastica
