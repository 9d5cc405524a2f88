#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "elastica/errors.hpp"
#include "elastica/generators.hpp"
#include "elastica/geometry.hpp"
#include "elastica/monitor.hpp"
#include "oracles.hpp"

using namespace elastica;
using std::numbers::pi;

namespace {

std::vector<oracle::Point> pts(const DiscreteCurve& c) {
  std::vector<oracle::Point> out;
  for (const auto& p : c.points()) out.emplace_back(p.x, p.y);
  return out;
}

EquilibriumRecord record_of(const DiscreteCurve& c) { return EquilibriumRecord{c, curvature(c)}; }

std::vector<EquilibriumRecord> segment_and_arc() {
  return {record_of(segment_curve(1.0, 128)), record_of(arc_curve(1.0, 0.3, 128))};
}

Trajectory thinned(const Trajectory& t) {
  Trajectory out = t;
  out.states.clear();
  for (std::size_t i = 0; i < t.states.size(); i += 2) out.states.push_back(t.states[i]);
  return out;
}

Trajectory sine_run(double t_end, std::size_t every) {
  const auto bc = BoundarySpec::navier(1.0, 0.0);
  return run(sine_curve(1.0, 0.2, 1, 128), bc, bc.energy_params(2.0), Schedule{1e-5, t_end, every});
}

}  // namespace

TEST_CASE("distance to a set containing the curve") {
  const auto cat = segment_and_arc();
  auto d = distance_to_set(cat[1].curve, cat);
  CHECK(d.distance == 0.0);
  CHECK(d.index == 1);
  d = distance_to_set(segment_curve(1.0, 32), cat);
  CHECK(d.distance < 1e-15);
  CHECK(d.index == 0);
}

TEST_CASE("distance to a set uses reflected copies") {
  const auto cat = segment_and_arc();
  const auto d = distance_to_set(reflect(cat[1].curve), cat);
  CHECK(d.distance == 0.0);
  CHECK(d.index == 1);
  CHECK(d.reflected);
}

TEST_CASE("distance of a perturbed segment") {
  const auto cat = segment_and_arc();
  const auto c = sine_curve(1.0, 0.01, 3, 256);
  const auto d = distance_to_set(c, cat);
  CHECK(d.index == 0);
  CHECK(d.distance == doctest::Approx(0.01).epsilon(1e-3));
  CHECK(std::abs(d.distance - oracle::dense_hausdorff(pts(c), pts(cat[0].curve))) < 1e-6);
}

TEST_CASE("distance to an empty set") {
  CHECK_THROWS_AS(distance_to_set(segment_curve(1.0, 16), {}), InvalidInput);
}

TEST_CASE("distance to a set is 1-Lipschitz") {
  std::mt19937_64 rng(71);
  const auto cat = segment_and_arc();
  for (int k = 0; k < 20; ++k) {
    const auto a = random_fourier_curve(1.0, 4, 0.3, 96, rng);
    const auto b = random_fourier_curve(1.0, 4, 0.3, 96, rng);
    const double gap = std::abs(distance_to_set(a, cat).distance - distance_to_set(b, cat).distance);
    CHECK(gap <= hausdorff_distance(a, b) + 1e-12);
  }
}

TEST_CASE("curvature distance") {
  const auto a = arc_curve(1.0, 0.3, 64);
  CHECK(curvature_distance(a, a) < 1e-12);
  CHECK(curvature_distance(a, arc_curve(1.0, 0.3, 256)) < 5e-3);
  // kappa of the arc is 1/r with r = (0.25 + 0.09) / 0.6
  CHECK(curvature_distance(a, segment_curve(1.0, 64)) == doctest::Approx(0.6 / 0.34).epsilon(1e-3));
}

TEST_CASE("lipschitz estimate on a stationary trajectory is zero") {
  const auto bc = BoundarySpec::navier(1.0, 0.0);
  const auto params = bc.energy_params(1.0);
  Trajectory traj;
  traj.bc = bc;
  traj.params = params;
  for (int i = 0; i < 4; ++i) traj.states.push_back(make_state(segment_curve(1.0, 64), i * 1e-3, bc, params));
  traj.history.push_back(StepRecord{});
  const auto est = lipschitz_estimate(traj, segment_and_arc());
  CHECK(est.rate == 0.0);
}

TEST_CASE("lipschitz estimate against the speed bound and under thinning") {
  const auto traj = sine_run(0.05, 50);
  const std::vector<EquilibriumRecord> cat{record_of(segment_curve(1.0, 128))};
  const auto est = lipschitz_estimate(traj, cat);
  CHECK(est.rate > 0.0);
  CHECK(est.rate <= 1.1 * est.speed_bound);
  const auto thin = lipschitz_estimate(thinned(traj), cat);
  CHECK(thin.rate == doctest::Approx(est.rate).epsilon(0.2));
}

TEST_CASE("verdict for a run started at an equilibrium") {
  const auto bc = BoundarySpec::navier(1.0, 0.0);
  const auto traj = run(segment_curve(1.0, 64), bc, bc.energy_params(2.0), Schedule{1e-5, 1.0, 10});
  const auto v = verdict(traj, segment_and_arc());
  CHECK(v.converged);
  REQUIRE(v.limit.has_value());
  CHECK(*v.limit == 0);
  CHECK(v.final_grad_norm == 0.0);
}

TEST_CASE("verdict for a truncated run") {
  const auto traj = sine_run(1e-3, 10);
  const auto v = verdict(traj, segment_and_arc());
  CHECK_FALSE(v.converged);
  CHECK(v.final_grad_norm > 1e-6);
  CHECK(v.final_distance > 1e-3);
  CHECK(v.final_distance == doctest::Approx(distance_to_set(traj.states.back().curve, segment_and_arc()).distance));
}

TEST_CASE("gradient minima over dyadic windows decrease") {
  const auto traj = sine_run(0.2, 100);
  const auto m = dyadic_gradient_minima(traj);
  REQUIRE(m.size() >= 10);
  for (std::size_t i = 1; i < m.size(); ++i) CHECK(m[i] <= m[i - 1]);
}

TEST_CASE("dissipation balance echoes the trajectory") {
  const auto traj = sine_run(2e-3, 10);
  const auto b = dissipation_balance(traj);
  CHECK(b.dissipation == traj.dissipation);
  CHECK(b.energy_drop == doctest::Approx(traj.history.front().energy - traj.states.back().report.total));
  CHECK(b.dissipation == doctest::Approx(b.energy_drop).epsilon(2e-3));
}
