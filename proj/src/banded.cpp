#include "elastica/banded.hpp"

#include <cmath>

#include "elastica/errors.hpp"

namespace elastica {

std::vector<double> solve_tridiagonal(const std::vector<double>& sub,
                                      const std::vector<double>& diag,
                                      const std::vector<double>& super,
                                      std::vector<double> rhs) {
  const std::size_t n = diag.size();
  if (sub.size() != n || super.size() != n || rhs.size() != n || n == 0) {
    throw InvalidInput("tridiagonal system has inconsistent band sizes");
  }
  std::vector<double> cp(n);
  double m = diag[0];
  if (m == 0.0) throw NumericError("zero pivot in tridiagonal solve");
  cp[0] = super[0] / m;
  rhs[0] /= m;
  for (std::size_t i = 1; i < n; ++i) {
    m = diag[i] - sub[i] * cp[i - 1];
    if (m == 0.0) throw NumericError("zero pivot in tridiagonal solve");
    cp[i] = i + 1 < n ? super[i] / m : 0.0;
    rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / m;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= cp[i] * rhs[i + 1];
  return rhs;
}

PentadiagonalSolver::PentadiagonalSolver(std::vector<double> e, std::vector<double> c,
                                         std::vector<double> d, std::vector<double> a,
                                         std::vector<double> b)
    : e_(std::move(e)) {
  const std::size_t n = d.size();
  if (n < 3 || e_.size() != n || c.size() != n || a.size() != n || b.size() != n) {
    throw InvalidInput("pentadiagonal system needs matching bands of length >= 3");
  }
  mu_.resize(n);
  alpha_.resize(n);
  beta_.resize(n);
  gamma_.resize(n);

  auto pivot = [](double v) {
    if (v == 0.0 || !std::isfinite(v)) throw NumericError("zero pivot in pentadiagonal solve");
    return v;
  };

  mu_[0] = pivot(d[0]);
  alpha_[0] = a[0] / mu_[0];
  beta_[0] = b[0] / mu_[0];

  gamma_[1] = c[1];
  mu_[1] = pivot(d[1] - alpha_[0] * gamma_[1]);
  alpha_[1] = (a[1] - beta_[0] * gamma_[1]) / mu_[1];
  beta_[1] = b[1] / mu_[1];

  for (std::size_t i = 2; i < n; ++i) {
    gamma_[i] = c[i] - alpha_[i - 2] * e_[i];
    mu_[i] = pivot(d[i] - beta_[i - 2] * e_[i] - alpha_[i - 1] * gamma_[i]);
    alpha_[i] = i + 1 < n ? (a[i] - beta_[i - 1] * gamma_[i]) / mu_[i] : 0.0;
    beta_[i] = i + 2 < n ? b[i] / mu_[i] : 0.0;
  }
}

std::vector<double> PentadiagonalSolver::solve(const std::vector<double>& y) const {
  const std::size_t n = mu_.size();
  if (y.size() != n) throw InvalidInput("right-hand side has the wrong length");
  std::vector<double> z(n), x(n);
  z[0] = y[0] / mu_[0];
  z[1] = (y[1] - z[0] * gamma_[1]) / mu_[1];
  for (std::size_t i = 2; i < n; ++i) {
    z[i] = (y[i] - z[i - 2] * e_[i] - z[i - 1] * gamma_[i]) / mu_[i];
  }
  x[n - 1] = z[n - 1];
  x[n - 2] = z[n - 2] - alpha_[n - 2] * x[n - 1];
  for (std::size_t i = n - 2; i-- > 0;) {
    x[i] = z[i] - alpha_[i] * x[i + 1] - beta_[i] * x[i + 2];
  }
  return x;
}

}  // namespace elastica
