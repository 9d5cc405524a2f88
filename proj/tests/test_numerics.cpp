#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "elastica/banded.hpp"
#include "elastica/errors.hpp"
#include "elastica/generators.hpp"
#include "elastica/geometry.hpp"
#include "elastica/kernels.hpp"
#include "elastica/quadrature.hpp"
#include "oracles.hpp"

using namespace elastica;
using std::numbers::pi;

TEST_CASE("pentadiagonal solve against dense elimination") {
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {5u, 12u, 77u}) {
    std::vector<double> e(n), c(n), d(n), a(n), b(n), y(n);
    std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = u(rng), c[i] = u(rng), a[i] = u(rng), b[i] = u(rng), y[i] = u(rng);
      d[i] = 6.0 + u(rng);
      if (i >= 2) A[i][i - 2] = e[i];
      if (i >= 1) A[i][i - 1] = c[i];
      A[i][i] = d[i];
      if (i + 1 < n) A[i][i + 1] = a[i];
      if (i + 2 < n) A[i][i + 2] = b[i];
    }
    const auto x = PentadiagonalSolver(e, c, d, a, b).solve(y);
    const auto ref = oracle::dense_solve(A, y);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(x[i] - ref[i]) < 1e-12);
  }
}

TEST_CASE("pentadiagonal solve of the flow operator") {
  // I + s D4 with the second difference squared, s large as in stiff steps
  const std::size_t n = 200;
  const double s = 1e6;
  std::vector<double> e(n, s), c(n, -4 * s), d(n, 1 + 6 * s), a(n, -4 * s), b(n, s), y(n);
  std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = std::sin(0.1 * i);
    if (i >= 2) A[i][i - 2] = e[i];
    if (i >= 1) A[i][i - 1] = c[i];
    A[i][i] = d[i];
    if (i + 1 < n) A[i][i + 1] = a[i];
    if (i + 2 < n) A[i][i + 2] = b[i];
  }
  const auto x = PentadiagonalSolver(e, c, d, a, b).solve(y);
  const auto ref = oracle::dense_solve(A, y);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(x[i] - ref[i]) < 1e-9 * std::max(1.0, std::abs(ref[i])));
}

TEST_CASE("tridiagonal solve against dense elimination") {
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = 40;
  std::vector<double> sub(n), diag(n), super(n), rhs(n);
  std::vector<std::vector<double>> A(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    sub[i] = u(rng), super[i] = u(rng), rhs[i] = u(rng);
    diag[i] = 3.0 + u(rng);
    if (i >= 1) A[i][i - 1] = sub[i];
    A[i][i] = diag[i];
    if (i + 1 < n) A[i][i + 1] = super[i];
  }
  const auto x = solve_tridiagonal(sub, diag, super, rhs);
  const auto ref = oracle::dense_solve(A, rhs);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(x[i] - ref[i]) < 1e-13);
}

TEST_CASE("adaptive simpson") {
  CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, pi) == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(adaptive_simpson([](double x) { return std::exp(-x * x); }, -5.0, 5.0) ==
        doctest::Approx(std::sqrt(pi) * std::erf(5.0)).epsilon(1e-11));
  // the square root cusp needs depth but converges
  CHECK(adaptive_simpson([](double x) { return std::sqrt(x); }, 0.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  QuadratureTolerance shallow;
  shallow.max_depth = 2;
  CHECK_THROWS_AS(adaptive_simpson([](double x) { return 1.0 / std::sqrt(x + 1e-12); }, 0.0, 1.0, shallow), NumericError);
}

TEST_CASE("serial and parallel kernels agree") {
  std::mt19937_64 rng(89);
  for (std::size_t n : {64u, 4096u, 20000u}) {
    const auto c = random_fourier_curve(1.0, 6, 0.4, n, rng);
    const auto p = c.points();
    std::vector<double> k1(p.size(), 0.0), k2(p.size(), 0.0);
    kernels::serial::curvature_interior(p, k1);
    kernels::omp::curvature_interior(p, k2);
    CHECK(k1 == k2);
    std::vector<double> v1(p.size(), 0.0), v2(p.size(), 0.0);
    kernels::serial::velocity_interior(c.arclength(), k1, 1.3, v1);
    kernels::omp::velocity_interior(c.arclength(), k1, 1.3, v2);
    CHECK(v1 == v2);
    const auto d = random_fourier_curve(1.0, 6, 0.4, n / 2, rng);
    CHECK(kernels::serial::directed_hausdorff(p, d.points()) == kernels::omp::directed_hausdorff(p, d.points()));
  }
}

TEST_CASE("directed hausdorff kernel against dense sampling") {
  std::mt19937_64 rng(97);
  for (int k = 0; k < 5; ++k) {
    const auto a = random_fourier_curve(1.0, 4, 0.3, 40, rng);
    const auto b = random_fourier_curve(1.0, 4, 0.3, 60, rng);
    std::vector<oracle::Point> pa, pb;
    for (const auto& q : a.points()) pa.emplace_back(q.x, q.y);
    for (const auto& q : b.points()) pb.emplace_back(q.x, q.y);
    const double exact = kernels::serial::directed_hausdorff(a.points(), b.points());
    const double dense = oracle::dense_directed(pa, pb, 200);
    CHECK(exact >= dense - 1e-12);
    CHECK(exact - dense < 1e-4 * std::max(exact, 1e-3));
  }
}

TEST_CASE("polyline index distance matches brute force") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  const auto c = random_fourier_curve(1.0, 5, 0.3, 300, rng);
  std::vector<oracle::Point> pc;
  for (const auto& q : c.points()) pc.emplace_back(q.x, q.y);
  const kernels::PolylineIndex index(c.points());
  std::size_t hint = 0;
  for (int k = 0; k < 200; ++k) {
    const Vec2 p{u(rng), u(rng)};
    CHECK(index.distance(p, hint) == doctest::Approx(oracle::point_polyline({p.x, p.y}, pc)).epsilon(1e-14));
  }
}
