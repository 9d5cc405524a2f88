#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "elastica/curve.hpp"
#include "elastica/orbit.hpp"

namespace elastica {

// Which partial period is appended to the N full periods of a Navier
// equilibrium: none, the excursion below alpha, or the one above it.
enum class SegmentKind { L0, L1, L2 };
std::string to_string(SegmentKind kind);

// Walk of one period starting at kappa = alpha. L1 starts on the decreasing
// branch, L2 on the increasing one; L0 uses `sign` (default increasing).
struct ChordVectors {
  Vec2 d_full;     // gamma(L) - gamma(0)
  Vec2 d_partial;  // gamma(L_i) - gamma(0); zero for L0
  double turning = 0.0;  // theta(L) - theta(0)
  double period = 0.0;
  double partial = 0.0;  // L_i
  double int_kappa_sq_full = 0.0, int_kappa_sq_partial = 0.0;
  double int_kappa_full = 0.0, int_kappa_partial = 0.0;
};
ChordVectors chord_vectors(double E, double lambda, double alpha, SegmentKind segment, int sign = 0);

// chord after N full periods followed by the partial piece
Vec2 total_chord(const ChordVectors& c, int N);

struct EquilibriumRecord {
  DiscreteCurve curve;
  ScalarField kappa;
  double E = 0.0;
  int N = 0;
  SegmentKind segment = SegmentKind::L0;
  int sign = 1;
  double length = 0.0;
  double energy = 0.0;
  double stationary_residual = 0.0;  // first-integral drift of the reconstruction
  double bc_residual = 0.0;
};

struct Catalog {
  std::vector<EquilibriumRecord> records;
  std::vector<std::string> warnings;  // roots or seeds that were rejected
};

struct NavierSearch {
  int points_per_decade = 16;
  std::optional<int> N_max;
  // reconstruction nodes per unit of length * max(kappa_M, |lambda|)
  double node_density = 200.0;
  std::size_t min_nodes = 256;
};

// Equilibria with kappa = alpha at both ends, endpoints (0,0), (R,0) and
// energy <= A, up to the reflection y -> -y. Needs |alpha| < |lambda|.
Catalog find_navier_equilibria(double lambda, double alpha, double R, double A, const NavierSearch& search = {});

struct ClampedSearch {
  int energy_points = 20;
  int phase_points = 12;
  // if set, keep only solutions with |energy - level| <= 1e-6
  std::optional<double> energy_level;
  double node_density = 100.0;
  std::size_t min_nodes = 256;
};

// Equilibria with end tangents tau0, tau1, endpoints (0,0), (R,0) and
// energy <= A, by multi-seed shooting on (kappa(0), kappa_s(0), length).
Catalog find_clamped_equilibria(double lambda, Vec2 tau0, Vec2 tau1, double R, double A,
                                const ClampedSearch& search = {});

struct BlowupReport {
  std::vector<double> E;
  std::vector<double> integral;     // int kappa^2 over one period
  std::vector<double> lower_bound;  // kappa_M^3 / (8 sqrt E)
  bool bound_holds = true;
  bool increasing = true;
};
BlowupReport energy_blowup_check(double lambda, const std::vector<double>& E_list);

}  // namespace elastica
