#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "elastica/vec2.hpp"

namespace elastica {

// Nodal values along a curve, one per node.
using ScalarField = std::vector<double>;

// Open planar polyline with n+1 nodes (n >= 8 segments). Node 0 and node n are
// the endpoints. Cumulative arclength is cached on construction.
class DiscreteCurve {
 public:
  static constexpr std::size_t kMinSegments = 8;

  explicit DiscreteCurve(std::vector<Vec2> points);

  std::size_t segments() const { return points_.size() - 1; }
  std::size_t size() const { return points_.size(); }

  std::span<const Vec2> points() const { return points_; }
  const Vec2& operator[](std::size_t i) const { return points_[i]; }
  const Vec2& front() const { return points_.front(); }
  const Vec2& back() const { return points_.back(); }

  double length() const { return arclength_.back(); }
  // s_i, with s_0 = 0 and s_n = length()
  const std::vector<double>& arclength() const { return arclength_; }
  double chord(std::size_t i) const { return arclength_[i + 1] - arclength_[i]; }

  // largest distance of any node from node 0, used as a length scale
  double extent() const;

 private:
  std::vector<Vec2> points_;
  std::vector<double> arclength_;
};

}  // namespace elastica
