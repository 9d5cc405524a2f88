#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "elastica/vec2.hpp"

namespace elastica::kernels {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

// Nearest-distance queries against a polyline. Segments are grouped in
// fixed-size chunks with bounding boxes so most of them can be skipped.
class PolylineIndex {
 public:
  static constexpr std::size_t kChunk = 16;

  explicit PolylineIndex(std::span<const Vec2> points);

  // distance from p to the polyline; hint is the chunk to try first and is
  // updated to the chunk holding the nearest segment
  double distance(const Vec2& p, std::size_t& hint) const;

  // min over segments j of max(d_j(p0), d_j(p1)). Since each d_j is convex
  // along [p0, p1], this bounds the polyline distance on the whole chord.
  // Returns early once a value <= good_enough is found.
  double chord_bound(const Vec2& p0, const Vec2& p1, double good_enough, std::size_t& hint) const;

  std::size_t chunks() const { return lo_.size(); }

 private:
  double chunk_distance(std::size_t c, const Vec2& p, double best) const;
  double box_distance(std::size_t c, const Vec2& p) const;

  std::span<const Vec2> points_;
  std::vector<Vec2> lo_, hi_;
};

// sup over the segment [a0, a1] of the distance to the indexed polyline,
// never returning less than floor. Exact up to tol.
double segment_sup_distance(const Vec2& a0, const Vec2& a1, const PolylineIndex& b, double floor,
                            double tol, std::size_t& hint);

double hausdorff_tolerance(std::span<const Vec2> a, std::span<const Vec2> b);

namespace serial {

// kappa[i] for 1 <= i < n from centered differences in the node index
void curvature_interior(std::span<const Vec2> p, std::span<double> kappa);

// V = 2 kappa_ss + kappa^3 - lambda^2 kappa on interior nodes, with kappa_ss
// from the three-point formula on the nodal arclengths s
void velocity_interior(std::span<const double> s, std::span<const double> kappa, double lambda,
                       std::span<double> v);

// sup_{x in a} dist(x, b) over the polyline sets
double directed_hausdorff(std::span<const Vec2> a, std::span<const Vec2> b);

}  // namespace serial

namespace omp {

void curvature_interior(std::span<const Vec2> p, std::span<double> kappa);
void velocity_interior(std::span<const double> s, std::span<const double> kappa, double lambda,
                       std::span<double> v);
double directed_hausdorff(std::span<const Vec2> a, std::span<const Vec2> b);

}  // namespace omp

}  // namespace elastica::kernels
