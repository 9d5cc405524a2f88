#include <doctest.h>

#include <cmath>
#include <random>

#include "elastica/errors.hpp"
#include "elastica/geometry.hpp"
#include "elastica/orbit.hpp"
#include "oracles.hpp"

using namespace elastica;

TEST_CASE("kappa extremes at the separatrix") {
  const auto k = kappa_extremes(0.0, 1.0);
  CHECK(k.kappa_M == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(k.kappa_m == 0.0);
}

TEST_CASE("kappa extremes solve F = E") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> lam(0.3, 3.0), u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double lambda = lam(rng);
    const double l4 = std::pow(lambda, 4);
    // half on each side of the separatrix
    const double E = i % 2 ? -0.25 * l4 * u(rng) * 0.999 : std::pow(10.0, 8 * u(rng) - 4);
    const auto k = kappa_extremes(E, lambda);
    const double scale = std::max(1.0, std::abs(E));
    CHECK(std::abs(potential(k.kappa_M, lambda) - E) < 1e-12 * scale);
    CHECK(std::abs(potential(k.kappa_m, lambda) - E) < 1e-12 * scale);
    CHECK(k.kappa_M == doctest::Approx(oracle::kappa_max(E, lambda)).epsilon(1e-14));
    if (E > 0) CHECK(k.kappa_m == -k.kappa_M);
  }
}

TEST_CASE("kappa extremes asymptotics and domain") {
  for (double E : {1e4, 1e8, 1e12}) {
    const double kM = kappa_extremes(E, 1.0).kappa_M;
    CHECK(kM * kM / (2 * std::sqrt(E)) == doctest::Approx(1.0).epsilon(2.0 / std::sqrt(std::sqrt(E))));
  }
  CHECK_THROWS_AS(kappa_extremes(-0.25, 1.0), OutOfDomain);
  CHECK_THROWS_AS(kappa_extremes(-1.0, 1.0), OutOfDomain);
}

TEST_CASE("period against tanh-sinh quadrature") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const double l4 = std::pow(lambda, 4);
    for (double e : {-0.24, -0.1, -1e-3, 1e-3, 0.3, 1.0, 10.0, 1e3, 1e5}) {
      const double E = e * l4;
      const double ref = oracle::period(E, lambda);
      CHECK(period_L(E, lambda) == doctest::Approx(ref).epsilon(1e-10));
    }
  }
}

TEST_CASE("period as four quarter integrals for positive E") {
  for (double E : {0.01, 1.0, 100.0, 1e4}) {
    // 4 int_0^kappa_M
    const double quarter = 0.5 * oracle::orbit_integral(E, 1.0, 0.0, oracle::kappa_max(E, 1.0));
    CHECK(period_L(E, 1.0) == doctest::Approx(4.0 * quarter).epsilon(1e-9));
  }
}

TEST_CASE("period against the pendulum oracle") {
  CHECK(std::abs(period_L(1.0, 1.0) - oracle::pendulum_period(1.0, 1.0)) < 1e-8);
  for (double E : {-0.2, 0.05, 7.0}) {
    CHECK(std::abs(period_L(E, 1.0) - oracle::pendulum_period(E, 1.0)) < 1e-8 * period_L(E, 1.0));
  }
}

TEST_CASE("period grows toward the separatrix") {
  CHECK(period_L(-1e-4 / 4, 1.0) / period_L(-1e-2 / 4, 1.0) > 1.0);
  double prev = 0.0;
  for (int k = 1; k <= 12; ++k) {
    const double L = period_L(-0.25 * std::pow(10.0, -0.5 * k), 1.0);
    CHECK(L > prev);
    prev = L;
  }
  prev = 0.0;
  for (int k = 0; k <= 12; ++k) {
    const double L = period_L(std::pow(10.0, -0.5 * k), 1.0);
    CHECK(L > prev);
    prev = L;
  }
  CHECK_THROWS_AS(period_L(0.0, 1.0), OutOfDomain);
  CHECK_THROWS_AS(period_L(-0.3, 1.0), OutOfDomain);
}

TEST_CASE("partial periods add up to the period") {
  for (double alpha : {0.0, 0.5, -0.7, 1.2}) {
    for (int k = 0; k < 50; ++k) {
      const double E = std::pow(10.0, -6.0 + 12.0 * k / 49.0);
      if (potential(alpha, 1.0) >= E) continue;
      const auto pp = partial_periods(E, 1.0, alpha);
      CHECK(std::abs(pp.L1 + pp.L2 - period_L(E, 1.0)) < 1e-9 * std::max(1.0, period_L(E, 1.0)));
      const double ref = oracle::orbit_integral(E, 1.0, -oracle::kappa_max(E, 1.0), alpha);
      CHECK(pp.L1 == doctest::Approx(ref).epsilon(1e-9));
    }
  }
}

TEST_CASE("partial periods at the lower extreme and outside the domain") {
  const double E = -0.1;
  const double km = kappa_extremes(E, 1.0).kappa_m;
  const auto pp = partial_periods(E, 1.0, km + 1e-10);
  CHECK(pp.L1 < 1e-3);
  CHECK(pp.L2 == doctest::Approx(period_L(E, 1.0)).epsilon(1e-3));
  CHECK_THROWS_AS(partial_periods(E, 1.0, 0.0), OutOfDomain);
  CHECK_THROWS_AS(partial_periods(1.0, 1.0, 3.0), OutOfDomain);
}

TEST_CASE("upper partial period decays for large E") {
  const double a = partial_periods(1.0, 1.0, 0.5).L2;
  const double b = partial_periods(1e2, 1.0, 0.5).L2;
  const double c = partial_periods(1e4, 1.0, 0.5).L2;
  CHECK(b < a);
  CHECK(c < b);
}

TEST_CASE("squared curvature per period") {
  for (double E : {-0.2, 0.5, 1e2, 1e4}) {
    const double lo = oracle::kappa_min(E, 1.0), hi = oracle::kappa_max(E, 1.0);
    const double ref = oracle::orbit_integral(E, 1.0, lo, hi, 2);
    CHECK(kappa_sq_per_period(E, 1.0) == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("reconstruct near the bottom of the well is a circle arc") {
  const double lambda = 2.0;
  const double E = -0.25 * std::pow(lambda, 4) * (1 - 1e-10);
  const auto r = reconstruct(OrbitParams{lambda, E, lambda, 1}, 1.0, 256);
  for (double k : r.kappa) CHECK(k == doctest::Approx(lambda).epsilon(1e-4));
  // every node sits at distance 1/lambda from the center (0, 1/lambda)
  for (const auto& p : r.curve.points()) CHECK(distance(p, {0.0, 0.5}) == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("reconstruct is periodic and conserves the first integral") {
  const double L = period_L(1.0, 1.0);
  const auto r = reconstruct(OrbitParams{1.0, 1.0, 0.3, 1}, 2 * L, 2048);
  CHECK(r.max_drift < 1e-8);
  for (std::size_t i = 0; i <= 1024; ++i) {
    CHECK(std::abs(r.kappa[i + 1024] - r.kappa[i]) < 1e-7);
    CHECK(std::abs(r.kappa_s[i] * r.kappa_s[i] + potential(r.kappa[i], 1.0) - 1.0) < 1e-8);
  }
}

TEST_CASE("reconstruct against an independent RK4 shot") {
  for (auto [E, k0, sign] : {std::tuple{1.0, 0.0, 1}, {-0.1, 1.0, -1}, {50.0, 2.0, 1}}) {
    const double L = 1.5;
    const auto r = reconstruct(OrbitParams{1.0, E, k0, sign}, L, 512, 0.4);
    const double ks0 = sign * std::sqrt(E - oracle::F(k0, 1.0));
    const auto path = oracle::shoot_path(1.0, k0, ks0, 0.4, L, 512, 64);
    for (std::size_t i = 0; i < path.size(); ++i) {
      CHECK(std::abs(r.curve[i].x - path[i].first) < 1e-9);
      CHECK(std::abs(r.curve[i].y - path[i].second) < 1e-9);
    }
  }
}

TEST_CASE("orbit validation") {
  CHECK_THROWS(reconstruct(OrbitParams{0.0, 1.0, 0.0, 1}, 1.0, 64));
  CHECK_THROWS(reconstruct(OrbitParams{1.0, -0.3, 1.0, 1}, 1.0, 64));
  CHECK_THROWS(reconstruct(OrbitParams{1.0, 1.0, 5.0, 1}, 1.0, 64));
}
