#pragma once

#include <vector>

namespace elastica {

// Thomas algorithm. sub[0] and super[n-1] are ignored. No pivoting, so the
// matrix should be diagonally dominant or symmetric positive definite.
std::vector<double> solve_tridiagonal(const std::vector<double>& sub,
                                      const std::vector<double>& diag,
                                      const std::vector<double>& super,
                                      std::vector<double> rhs);

// Pentadiagonal system, row i:
//   e[i] x[i-2] + c[i] x[i-1] + d[i] x[i] + a[i] x[i+1] + b[i] x[i+2] = y[i]
// Entries that fall outside the matrix are ignored.
class PentadiagonalSolver {
 public:
  PentadiagonalSolver(std::vector<double> e, std::vector<double> c, std::vector<double> d,
                      std::vector<double> a, std::vector<double> b);

  std::size_t size() const { return mu_.size(); }
  std::vector<double> solve(const std::vector<double>& y) const;

 private:
  std::vector<double> e_, mu_, alpha_, beta_, gamma_;
};

}  // namespace elastica
