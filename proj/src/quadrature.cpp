#include "elastica/quadrature.hpp"

#include <algorithm>
#include <vector>

#include "elastica/errors.hpp"

namespace elastica {

namespace {

struct Panel {
  double a, fa, m, fm, b, fb, whole;
};

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const Panel& p, double eps, int depth) {
  const double lm = 0.5 * (p.a + p.m), rm = 0.5 * (p.m + p.b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(p.a, p.fa, flm, p.m, p.fm);
  const double right = simpson(p.m, p.fm, frm, p.b, p.fb);
  const double delta = left + right - p.whole;
  if (std::abs(delta) <= 15.0 * eps || p.m <= p.a || p.b <= p.m) return left + right + delta / 15.0;
  if (depth <= 0) throw NumericError("adaptive quadrature did not converge");
  return refine(f, {p.a, p.fa, lm, flm, p.m, p.fm, left}, 0.5 * eps, depth - 1) +
         refine(f, {p.m, p.fm, rm, frm, p.b, p.fb, right}, 0.5 * eps, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        const QuadratureTolerance& tol) {
  if (a == b) return 0.0;
  if (b < a) return -adaptive_simpson(f, b, a, tol);

  // coarse pass to set the relative scale
  constexpr int kPanels = 16;
  const double h = (b - a) / kPanels;
  std::vector<double> x(2 * kPanels + 1), fx(2 * kPanels + 1);
  double rough = 0.0;
  for (int i = 0; i <= 2 * kPanels; ++i) {
    x[i] = i == 2 * kPanels ? b : a + 0.5 * h * i;
    fx[i] = f(x[i]);
    if (!std::isfinite(fx[i])) throw NumericError("integrand is not finite");
  }
  for (int k = 0; k < kPanels; ++k) rough += simpson(x[2 * k], fx[2 * k], fx[2 * k + 1], x[2 * k + 2], fx[2 * k + 2]);
  const double eps = std::max(tol.absolute, tol.relative * std::abs(rough)) / kPanels;

  double total = 0.0;
  for (int k = 0; k < kPanels; ++k) {
    const Panel p{x[2 * k], fx[2 * k], x[2 * k + 1], fx[2 * k + 1], x[2 * k + 2], fx[2 * k + 2],
                  simpson(x[2 * k], fx[2 * k], fx[2 * k + 1], x[2 * k + 2], fx[2 * k + 2])};
    total += refine(f, p, eps, tol.max_depth);
  }
  return total;
}

}  // namespace elastica
