#include "elastica/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "elastica/errors.hpp"

namespace elastica::kernels {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxDepth = 60;
// below this many nodes the OpenMP variants run on one thread
constexpr std::size_t kParallelThreshold = 2048;

inline double curvature_at(const Vec2& pm, const Vec2& p, const Vec2& pp) {
  const Vec2 d1 = 0.5 * (pp - pm);
  const Vec2 d2 = pp - 2.0 * p + pm;
  const double g = norm(d1);
  return cross(d1, d2) / (g * g * g);
}

inline double velocity_at(std::span<const double> s, std::span<const double> k, double lam2,
                          std::size_t i) {
  const double hm = s[i] - s[i - 1], hp = s[i + 1] - s[i];
  const double kss = 2.0 * (hm * k[i + 1] - (hm + hp) * k[i] + hp * k[i - 1]) / (hm * hp * (hm + hp));
  return 2.0 * kss + k[i] * k[i] * k[i] - lam2 * k[i];
}

}  // namespace

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * ab);
}

PolylineIndex::PolylineIndex(std::span<const Vec2> points) : points_(points) {
  if (points.size() < 2) throw InvalidInput("polyline needs at least two points");
  const std::size_t segs = points.size() - 1;
  const std::size_t nc = (segs + kChunk - 1) / kChunk;
  lo_.resize(nc);
  hi_.resize(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    const std::size_t first = c * kChunk, last = std::min(segs, first + kChunk);
    Vec2 lo = points[first], hi = points[first];
    for (std::size_t i = first + 1; i <= last; ++i) {
      lo = {std::min(lo.x, points[i].x), std::min(lo.y, points[i].y)};
      hi = {std::max(hi.x, points[i].x), std::max(hi.y, points[i].y)};
    }
    lo_[c] = lo;
    hi_[c] = hi;
  }
}

double PolylineIndex::box_distance(std::size_t c, const Vec2& p) const {
  const double dx = std::max({lo_[c].x - p.x, 0.0, p.x - hi_[c].x});
  const double dy = std::max({lo_[c].y - p.y, 0.0, p.y - hi_[c].y});
  return std::hypot(dx, dy);
}

double PolylineIndex::chunk_distance(std::size_t c, const Vec2& p, double best) const {
  const std::size_t first = c * kChunk, last = std::min(points_.size() - 1, first + kChunk);
  for (std::size_t i = first; i < last; ++i) {
    best = std::min(best, point_segment_distance(p, points_[i], points_[i + 1]));
  }
  return best;
}

double PolylineIndex::distance(const Vec2& p, std::size_t& hint) const {
  if (hint >= lo_.size()) hint = 0;
  double best = chunk_distance(hint, p, kInf);
  std::size_t arg = hint;
  for (std::size_t c = 0; c < lo_.size(); ++c) {
    if (c == hint || box_distance(c, p) >= best) continue;
    const double d = chunk_distance(c, p, best);
    if (d < best) {
      best = d;
      arg = c;
    }
  }
  hint = arg;
  return best;
}

double PolylineIndex::chord_bound(const Vec2& p0, const Vec2& p1, double good_enough,
                                  std::size_t& hint) const {
  if (hint >= lo_.size()) hint = 0;
  double best = kInf;
  auto scan = [&](std::size_t c) {
    const std::size_t first = c * kChunk, last = std::min(points_.size() - 1, first + kChunk);
    for (std::size_t i = first; i < last; ++i) {
      const double d0 = point_segment_distance(p0, points_[i], points_[i + 1]);
      if (d0 >= best) continue;
      const double v = std::max(d0, point_segment_distance(p1, points_[i], points_[i + 1]));
      if (v < best) {
        best = v;
        hint = c;
      }
    }
  };
  const std::size_t first_chunk = hint;
  scan(first_chunk);
  if (best <= good_enough) return best;
  for (std::size_t c = 0; c < lo_.size(); ++c) {
    if (c == first_chunk) continue;
    if (std::max(box_distance(c, p0), box_distance(c, p1)) >= best) continue;
    scan(c);
    if (best <= good_enough) return best;
  }
  return best;
}

double segment_sup_distance(const Vec2& a0, const Vec2& a1, const PolylineIndex& b, double floor,
                            double tol, std::size_t& hint) {
  struct Interval {
    double t0, t1, f0, f1;
    int depth;
  };
  const Vec2 dir = a1 - a0;
  const double seg_len = norm(dir);
  const double f0 = b.distance(a0, hint);
  const double f1 = b.distance(a1, hint);
  double best = std::max({floor, f0, f1});

  std::vector<Interval> stack;
  stack.push_back({0.0, 1.0, f0, f1, 0});
  while (!stack.empty()) {
    const Interval iv = stack.back();
    stack.pop_back();
    const double len = seg_len * (iv.t1 - iv.t0);
    const double lipschitz = 0.5 * (iv.f0 + iv.f1 + len);
    if (lipschitz <= best + tol) continue;
    const Vec2 p0 = a0 + iv.t0 * dir, p1 = a0 + iv.t1 * dir;
    if (b.chord_bound(p0, p1, best + tol, hint) <= best + tol) continue;
    if (iv.depth >= kMaxDepth) continue;
    const double tm = 0.5 * (iv.t0 + iv.t1);
    const double fm = b.distance(a0 + tm * dir, hint);
    best = std::max(best, fm);
    stack.push_back({iv.t0, tm, iv.f0, fm, iv.depth + 1});
    stack.push_back({tm, iv.t1, fm, iv.f1, iv.depth + 1});
  }
  return best;
}

double hausdorff_tolerance(std::span<const Vec2> a, std::span<const Vec2> b) {
  double scale = 0.0;
  for (auto pts : {a, b}) {
    for (const auto& p : pts) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  }
  return 1e-13 * std::max(scale, 1e-300);
}

namespace serial {

void curvature_interior(std::span<const Vec2> p, std::span<double> kappa) {
  for (std::size_t i = 1; i + 1 < p.size(); ++i) kappa[i] = curvature_at(p[i - 1], p[i], p[i + 1]);
}

void velocity_interior(std::span<const double> s, std::span<const double> kappa, double lambda,
                       std::span<double> v) {
  const double lam2 = lambda * lambda;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) v[i] = velocity_at(s, kappa, lam2, i);
}

double directed_hausdorff(std::span<const Vec2> a, std::span<const Vec2> b) {
  const PolylineIndex index(b);
  const double tol = hausdorff_tolerance(a, b);
  std::size_t hint = 0;
  if (a.size() == 1) return index.distance(a[0], hint);
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    best = segment_sup_distance(a[i], a[i + 1], index, best, tol, hint);
  }
  return best;
}

}  // namespace serial

namespace omp {

void curvature_interior(std::span<const Vec2> p, std::span<double> kappa) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(p.size());
#pragma omp parallel for schedule(static) if (p.size() >= kParallelThreshold)
  for (std::ptrdiff_t i = 1; i < n - 1; ++i) kappa[i] = curvature_at(p[i - 1], p[i], p[i + 1]);
}

void velocity_interior(std::span<const double> s, std::span<const double> kappa, double lambda,
                       std::span<double> v) {
  const double lam2 = lambda * lambda;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(s.size());
#pragma omp parallel for schedule(static) if (s.size() >= kParallelThreshold)
  for (std::ptrdiff_t i = 1; i < n - 1; ++i) v[i] = velocity_at(s, kappa, lam2, i);
}

double directed_hausdorff(std::span<const Vec2> a, std::span<const Vec2> b) {
  const PolylineIndex index(b);
  const double tol = hausdorff_tolerance(a, b);
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
  if (n == 1) {
    std::size_t hint = 0;
    return index.distance(a[0], hint);
  }

  // node distances give every thread a common starting floor
  double floor = 0.0;
#pragma omp parallel
  {
    std::size_t hint = 0;
#pragma omp for schedule(static) reduction(max : floor)
    for (std::ptrdiff_t i = 0; i < n; ++i) floor = std::max(floor, index.distance(a[i], hint));
  }

  double best = floor;
#pragma omp parallel
  {
    std::size_t hint = 0;
    double local = floor;
#pragma omp for schedule(dynamic, 64) nowait
    for (std::ptrdiff_t i = 0; i < n - 1; ++i) {
      local = segment_sup_distance(a[i], a[i + 1], index, local, tol, hint);
    }
#pragma omp critical
    best = std::max(best, local);
  }
  return best;
}

}  // namespace omp

}  // namespace elastica::kernels
