#include <doctest.h>

#include <cmath>
#include <numbers>

#include "elastica/catalog.hpp"
#include "elastica/errors.hpp"
#include "elastica/flow.hpp"
#include "elastica/geometry.hpp"
#include "elastica/orbit.hpp"
#include "oracles.hpp"

using namespace elastica;
using std::numbers::pi;

namespace {

std::vector<oracle::Point> pts(const DiscreteCurve& c) {
  std::vector<oracle::Point> out;
  for (const auto& p : c.points()) out.emplace_back(p.x, p.y);
  return out;
}

const Catalog& navier_catalog() {
  static const Catalog c = find_navier_equilibria(1.0, 0.0, 1.0, 30.0);
  return c;
}

const Catalog& clamped_catalog() {
  static const Catalog c = find_clamped_equilibria(1.0, {0.0, 1.0}, {0.0, 1.0}, 0.5, 30.0);
  return c;
}

bool is_segment(const EquilibriumRecord& r, double R) {
  for (const auto& p : r.curve.points())
    if (std::abs(p.y) > 1e-12) return false;
  return std::abs(r.length - R) < 1e-12;
}

// the RK4 oracle shot from the record's initial data, rotated so its chord
// lies on the x axis when `rotate_chord`
std::vector<oracle::Point> oracle_shape(const EquilibriumRecord& r, double lambda, double theta0, bool rotate_chord) {
  const double k0 = r.kappa.front();
  const double ks0 = r.sign * std::sqrt(std::max(0.0, r.E - oracle::F(k0, lambda)));
  auto path = oracle::shoot_path(lambda, k0, ks0, theta0, r.length, static_cast<int>(r.curve.segments()), 16);
  if (rotate_chord) {
    const double phi = std::atan2(path.back().second, path.back().first);
    for (auto& p : path) p = {std::cos(phi) * p.first + std::sin(phi) * p.second, -std::sin(phi) * p.first + std::cos(phi) * p.second};
  }
  return path;
}

}  // namespace

TEST_CASE("chord vectors are invariant under a full period shift") {
  const double E = 1.0;
  const auto c = chord_vectors(E, 1.0, 0.0, SegmentKind::L0, 1);
  const double L = period_L(E, 1.0);
  CHECK(c.period == doctest::Approx(L).epsilon(1e-12));
  // one period later the phase is the same, so the chord over the next
  // period matches in length
  const auto two = oracle::shoot(1.0, 0.0, 1.0, 0.0, 2 * L, 40000);
  const auto one = oracle::shoot(1.0, 0.0, 1.0, 0.0, L, 20000);
  const double second = std::hypot(two.x - one.x, two.y - one.y);
  CHECK(norm(c.d_full) == doctest::Approx(second).epsilon(1e-8));
  CHECK(c.turning == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("chord vector against a fine RK4 shot") {
  const auto c = chord_vectors(1.0, 1.0, 0.0, SegmentKind::L0, 1);
  const auto shot = oracle::shoot(1.0, 0.0, 1.0, 0.0, period_L(1.0, 1.0), 8192 * 8);
  CHECK(std::abs(norm(c.d_full) - std::hypot(shot.x, shot.y)) < 1e-7);
  CHECK(std::abs(c.d_full.x - shot.x) < 1e-7);
  CHECK(std::abs(c.d_full.y - shot.y) < 1e-7);
}

TEST_CASE("partial chord vectors and total chord") {
  const auto c = chord_vectors(2.0, 1.0, 0.5, SegmentKind::L2);
  CHECK(c.partial == doctest::Approx(partial_periods(2.0, 1.0, 0.5).L2).epsilon(1e-9));
  const Vec2 t = total_chord(c, 2);
  CHECK(t.x == doctest::Approx(c.d_partial.x + 2 * c.d_full.x));
  CHECK(t.y == doctest::Approx(c.d_partial.y + 2 * c.d_full.y));
  const auto l0 = chord_vectors(2.0, 1.0, 0.5, SegmentKind::L0);
  CHECK(norm(l0.d_partial) == 0.0);
}

TEST_CASE("zero curvature catalog contains the segment") {
  for (double lambda : {0.5, 1.0, 2.0}) {
    const auto cat = find_navier_equilibria(lambda, 0.0, 1.0, lambda * lambda + 0.01);
    REQUIRE(cat.records.size() == 1);
    CHECK(is_segment(cat.records[0], 1.0));
    CHECK(cat.records[0].energy == doctest::Approx(lambda * lambda).epsilon(1e-12));
  }
  CHECK(find_navier_equilibria(1.0, 0.0, 1.0, 0.99).records.empty());
}

TEST_CASE("navier catalog admission and independent reconstruction") {
  const auto& cat = navier_catalog();
  REQUIRE(cat.records.size() >= 2);
  for (const auto& r : cat.records) {
    CHECK(r.stationary_residual < 1e-6);
    CHECK(r.bc_residual < 1e-8);
    CHECK(r.energy <= 30.0);
    CHECK(r.curve.front() == Vec2{0.0, 0.0});
    CHECK(r.curve.back() == Vec2{1.0, 0.0});
    CHECK(std::abs(r.kappa.front()) < 1e-12);
    CHECK(std::abs(r.kappa.back()) < 1e-8);
    if (is_segment(r, 1.0)) continue;
    const auto shape = oracle_shape(r, 1.0, 0.0, true);
    CHECK(std::hypot(shape.back().first - 1.0, shape.back().second) < 1e-8);
    CHECK(oracle::dense_hausdorff(pts(r.curve), shape, 2) < 1e-8);
    // alpha = 0 leaves bending plus length
    CHECK(r.energy >= r.length - 1e-9);
  }
}

TEST_CASE("navier catalog has no reflected duplicates") {
  const auto& recs = navier_catalog().records;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    for (std::size_t j = i + 1; j < recs.size(); ++j) {
      CHECK(hausdorff_distance(recs[i].curve, recs[j].curve) > 1e-6);
      CHECK(hausdorff_distance(reflect(recs[i].curve), recs[j].curve) > 1e-6);
    }
  }
}

TEST_CASE("navier catalog count is stable under grid refinement") {
  NavierSearch fine;
  fine.points_per_decade = 32;
  const auto refined = find_navier_equilibria(1.0, 0.0, 1.0, 30.0, fine);
  const auto& base = navier_catalog();
  REQUIRE(refined.records.size() == base.records.size());
  for (std::size_t i = 0; i < base.records.size(); ++i) {
    CHECK(refined.records[i].energy == doctest::Approx(base.records[i].energy).epsilon(1e-8));
  }
}

TEST_CASE("navier catalog with nonzero alpha") {
  const auto cat = find_navier_equilibria(1.0, 0.5, 1.0, 20.0);
  REQUIRE_FALSE(cat.records.empty());
  for (const auto& r : cat.records) {
    CHECK(r.bc_residual < 1e-8);
    CHECK(r.kappa.front() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.kappa.back() == doctest::Approx(0.5).epsilon(1e-8));
    const auto shape = oracle_shape(r, 1.0, 0.0, true);
    CHECK(oracle::dense_hausdorff(pts(r.curve), shape, 2) < 1e-8);
  }
  CHECK_THROWS_AS(find_navier_equilibria(1.0, 1.5, 1.0, 20.0), PreconditionViolation);
}

TEST_CASE("clamped catalog with horizontal tangents contains the segment") {
  const auto cat = find_clamped_equilibria(1.0, {1.0, 0.0}, {1.0, 0.0}, 1.0, 1.5);
  REQUIRE_FALSE(cat.records.empty());
  bool found = false;
  for (const auto& r : cat.records) found = found || is_segment(r, 1.0);
  CHECK(found);
}

TEST_CASE("clamped catalog with vertical tangents") {
  const auto& cat = clamped_catalog();
  REQUIRE_FALSE(cat.records.empty());
  for (const auto& r : cat.records) {
    CHECK(r.stationary_residual < 1e-6);
    CHECK(r.bc_residual < 1e-8);
    const auto shape = oracle_shape(r, 1.0, pi / 2, false);
    CHECK(std::hypot(shape.back().first - 0.5, shape.back().second) < 1e-7);
    CHECK(oracle::dense_hausdorff(pts(r.curve), shape, 2) < 1e-7);
    // tangent at the far end points up
    const auto tn = tangent_normal(r.curve);
    CHECK(tn.tangent.back().y == doctest::Approx(1.0).epsilon(1e-4));
  }
  for (std::size_t i = 0; i < cat.records.size(); ++i)
    for (std::size_t j = i + 1; j < cat.records.size(); ++j)
      CHECK(hausdorff_distance(cat.records[i].curve, cat.records[j].curve) > 1e-6);
}

TEST_CASE("clamped catalog count is stable under seed refinement") {
  ClampedSearch fine;
  fine.energy_points = 40;
  fine.phase_points = 24;
  const auto refined = find_clamped_equilibria(1.0, {0.0, 1.0}, {0.0, 1.0}, 0.5, 30.0, fine);
  const auto& base = clamped_catalog();
  REQUIRE(refined.records.size() == base.records.size());
  for (std::size_t i = 0; i < base.records.size(); ++i) {
    CHECK(refined.records[i].energy == doctest::Approx(base.records[i].energy).epsilon(1e-8));
  }
}

TEST_CASE("clamped bowed solution is a flow fixed point") {
  const auto& cat = clamped_catalog();
  const auto bc = BoundarySpec::clamped(0.5, {0.0, 1.0}, {0.0, 1.0});
  const auto params = bc.energy_params(1.0);
  const EquilibriumRecord* lowest = &cat.records.front();
  for (const auto& r : cat.records)
    if (r.energy < lowest->energy) lowest = &r;
  const DiscreteCurve& start = lowest->curve;
  FlowState s = make_state(start, 0.0, bc, params);
  for (int i = 0; i < 100; ++i) s = step(s, 1e-5, bc, params);
  CHECK(hausdorff_distance(s.curve, start) < 1e-6);
  CHECK(std::sqrt(s.report.gradient_norm_sq) < 1e-2);
}

TEST_CASE("energy blowup bound") {
  const auto rep = energy_blowup_check(1.0, {1e2, 1e4, 1e6});
  CHECK(rep.bound_holds);
  CHECK(rep.increasing);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rep.integral[i] > rep.lower_bound[i]);
    const double kM = oracle::kappa_max(rep.E[i], 1.0);
    CHECK(rep.lower_bound[i] == doctest::Approx(kM * kM * kM / (8 * std::sqrt(rep.E[i]))));
    const double ref = oracle::orbit_integral(rep.E[i], 1.0, -kM, kM, 2);
    CHECK(rep.integral[i] == doctest::Approx(ref).epsilon(1e-6));
  }
  // the leading order of the bound grows like E^(1/4), a factor 10 here
  const double ratio = rep.lower_bound[2] / rep.lower_bound[0];
  CHECK(ratio > 9.0);
  CHECK(ratio < 10.0);
}

TEST_CASE("energy blowup bound grows by more than 10 from 1e2 to 1e6" * doctest::should_fail()) {
  // kappa_M^2 exceeds 2 sqrt(E) by lambda^2 + O(E^-1/2), which lifts the
  // value at 1e2 more than the one at 1e6, so the ratio stays just below 10
  const auto rep = energy_blowup_check(1.0, {1e2, 1e6});
  CHECK(rep.lower_bound[1] > 10 * rep.lower_bound[0]);
}
