#include "elastica/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elastica/errors.hpp"

namespace elastica {

DiscreteCurve::DiscreteCurve(std::vector<Vec2> points) : points_(std::move(points)) {
  if (points_.size() < kMinSegments + 1) {
    throw InvalidInput("curve needs at least " + std::to_string(kMinSegments + 1) +
                       " nodes, got " + std::to_string(points_.size()));
  }
  arclength_.resize(points_.size());
  arclength_[0] = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y)) {
      throw InvalidInput("curve node " + std::to_string(i) + " is not finite");
    }
    if (i == 0) continue;
    const double h = distance(points_[i], points_[i - 1]);
    if (!(h > 0.0)) {
      throw InvalidInput("curve nodes " + std::to_string(i - 1) + " and " + std::to_string(i) +
                         " coincide");
    }
    arclength_[i] = arclength_[i - 1] + h;
  }
}

double DiscreteCurve::extent() const {
  double r = 0.0;
  for (const auto& p : points_) r = std::max(r, distance(p, points_.front()));
  return r;
}

}  // namespace elastica
