#include "elastica/catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "elastica/energy.hpp"
#include "elastica/errors.hpp"
#include "elastica/geometry.hpp"

namespace elastica {

namespace {

constexpr double kRootTolerance = 1e-10;
constexpr double kDedupDistance = 1e-6;
constexpr double kAdmitStationary = 1e-6;
constexpr double kAdmitBoundary = 1e-8;

double walk_step(double E, double lambda) {
  const double omega = std::max(kappa_extremes(E, lambda).kappa_M, std::abs(lambda));
  return 0.001 / omega;
}

std::vector<double> log_grid(double a, double b, int per_decade) {
  std::vector<double> g;
  if (!(a > 0.0) || !(b > a)) return g;
  const double decades = std::log10(b / a);
  const int m = std::max(2, static_cast<int>(std::ceil(decades * per_decade)) + 1);
  for (int i = 0; i < m; ++i) g.push_back(a * std::pow(b / a, static_cast<double>(i) / (m - 1)));
  g.back() = b;
  return g;
}

std::size_t node_count(double length, double E, double lambda, double density, std::size_t min_nodes) {
  double omega = std::abs(lambda);
  if (E > -0.25 * std::pow(lambda, 4)) omega = std::max(omega, kappa_extremes(E, lambda).kappa_M);
  const double n = std::ceil(density * length * omega);
  return std::max<std::size_t>(min_nodes, static_cast<std::size_t>(n));
}

struct Reconstruction {
  std::vector<Vec2> points;
  ScalarField kappa;
  OrbitPoint end;
  double drift = 0.0;
};

Reconstruction integrate_curve(double lambda, double kappa0, double kappa_s0, double theta0, double length,
                               std::size_t n, double omega) {
  const double h = length / static_cast<double>(n);
  const double sub = std::min(h / 8.0, 0.002 / omega);
  const auto substeps = static_cast<std::size_t>(std::ceil(h / sub));
  OrbitIntegrator integ(lambda, kappa0, kappa_s0, theta0, h);
  Reconstruction r;
  r.points.resize(n + 1);
  r.kappa.resize(n + 1);
  r.points[0] = {0.0, 0.0};
  r.kappa[0] = kappa0;
  for (std::size_t i = 1; i <= n; ++i) {
    integ.advance_fixed(h, substeps);
    r.points[i] = {integ.point().x, integ.point().y};
    r.kappa[i] = integ.point().kappa;
  }
  r.end = integ.point();
  r.drift = integ.max_drift();
  return r;
}

bool same_curve(const EquilibriumRecord& a, const EquilibriumRecord& b) {
  if (std::abs(a.length - b.length) > 1e-6 * std::max(1.0, a.length)) return false;
  if (std::abs(a.energy - b.energy) > 1e-6 * std::max(1.0, std::abs(a.energy))) return false;
  if (hausdorff_distance(a.curve, b.curve) < kDedupDistance) return true;
  return hausdorff_distance(a.curve, reflect(b.curve)) < kDedupDistance;
}

void sort_and_dedupe(std::vector<EquilibriumRecord>& records) {
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    if (a.E != b.E) return a.E < b.E;
    if (a.N != b.N) return a.N < b.N;
    if (a.segment != b.segment) return a.segment < b.segment;
    return a.sign > b.sign;
  });
  std::vector<EquilibriumRecord> kept;
  for (auto& r : records) {
    bool dup = false;
    for (const auto& k : kept) {
      if (same_curve(k, r)) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(std::move(r));
  }
  records = std::move(kept);
}

// ---------------------------------------------------------------- Navier

struct PeriodData {
  double E = 0.0;
  bool ok = false;
  double L = 0.0;
  ChordVectors up;    // starts increasing, partial = L2
  ChordVectors down;  // starts decreasing, partial = L1
};

struct Config {
  SegmentKind kind;
  int sign;
  int N;
};

const ChordVectors& walk_for(const PeriodData& p, const Config& c) {
  if (c.kind == SegmentKind::L2) return p.up;
  if (c.kind == SegmentKind::L1) return p.down;
  return c.sign > 0 ? p.up : p.down;
}

Vec2 config_chord(const PeriodData& p, const Config& c) {
  const ChordVectors& w = walk_for(p, c);
  Vec2 d{};
  for (int k = 0; k < c.N; ++k) d += rotate(w.d_full, k * w.turning);
  if (c.kind != SegmentKind::L0) d += rotate(w.d_partial, c.N * w.turning);
  return d;
}

double config_length(const PeriodData& p, const Config& c) {
  const ChordVectors& w = walk_for(p, c);
  return c.N * w.period + (c.kind == SegmentKind::L0 ? 0.0 : w.partial);
}

double config_energy(const PeriodData& p, const Config& c, double lambda, double alpha) {
  const ChordVectors& w = walk_for(p, c);
  const bool part = c.kind != SegmentKind::L0;
  const double k2 = c.N * w.int_kappa_sq_full + (part ? w.int_kappa_sq_partial : 0.0);
  const double k1 = c.N * w.int_kappa_full + (part ? w.int_kappa_partial : 0.0);
  return k2 - 2.0 * alpha * k1 + lambda * lambda * config_length(p, c);
}

PeriodData period_data(double E, double lambda, double alpha) {
  PeriodData p;
  p.E = E;
  p.up = chord_vectors(E, lambda, alpha, SegmentKind::L2);
  p.down = chord_vectors(E, lambda, alpha, SegmentKind::L1);
  p.L = p.up.period;
  p.ok = true;
  return p;
}

}  // namespace

std::string to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::L0: return "L0";
    case SegmentKind::L1: return "L1";
    case SegmentKind::L2: return "L2";
  }
  return "?";
}

ChordVectors chord_vectors(double E, double lambda, double alpha, SegmentKind segment, int sign) {
  const double L = period_L(E, lambda);
  double partial = 0.0;
  if (segment == SegmentKind::L0) {
    if (sign == 0) sign = 1;
    if (!(potential(alpha, lambda) <= E)) throw OutOfDomain("alpha is not on the orbit");
  } else {
    const auto pp = partial_periods(E, lambda, alpha);
    partial = segment == SegmentKind::L1 ? pp.L1 : pp.L2;
    sign = segment == SegmentKind::L1 ? -1 : 1;
  }
  OrbitIntegrator integ(OrbitParams{lambda, E, alpha, sign}, 0.0, walk_step(E, lambda));
  ChordVectors c;
  c.period = L;
  c.partial = partial;
  if (segment != SegmentKind::L0) {
    integ.advance(partial);
    const auto& p = integ.point();
    c.d_partial = {p.x, p.y};
    c.int_kappa_sq_partial = p.int_kappa_sq;
    c.int_kappa_partial = p.int_kappa;
  }
  integ.advance(L - partial);
  const auto& p = integ.point();
  c.d_full = {p.x, p.y};
  c.turning = p.theta;
  c.int_kappa_sq_full = p.int_kappa_sq;
  c.int_kappa_full = p.int_kappa;
  return c;
}

Vec2 total_chord(const ChordVectors& c, int N) {
  Vec2 d{};
  for (int k = 0; k < N; ++k) d += rotate(c.d_full, k * c.turning);
  return d + rotate(c.d_partial, N * c.turning);
}

Catalog find_navier_equilibria(double lambda, double alpha, double R, double A, const NavierSearch& search) {
  if (!std::isfinite(lambda) || lambda == 0.0) throw InvalidInput("lambda must be finite and nonzero");
  if (!(R > 0.0)) throw InvalidInput("R must be positive");
  if (!std::isfinite(A)) throw InvalidInput("energy bound must be finite");
  if (search.points_per_decade < 2) throw InvalidInput("points_per_decade must be >= 2");
  const double C = coercivity_constant(alpha, lambda);  // throws for |alpha| >= |lambda|
  lambda = std::abs(lambda);
  const double a = std::abs(alpha);
  const double l4 = std::pow(lambda, 4);
  const double guard = 1e-8 * l4;

  Catalog out;
  if (A < 0.0) return out;

  // largest E worth scanning: past it even the shortest admissible piece
  // carries more bending than the budget allows
  double E_max = std::max(1.0, l4);
  for (int it = 0;; ++it) {
    const auto ext = kappa_extremes(E_max, lambda);
    const double low = std::min(2.0 * orbit_integral(E_max, lambda, ext.kappa_m, a, 2),
                                2.0 * orbit_integral(E_max, lambda, a, ext.kappa_M, 2));
    if (C * low > A) break;
    if (it > 80) throw NumericError("could not bound the energy range of the search");
    E_max *= 2.0;
  }

  std::vector<double> grid;
  const double E_floor = std::max(potential(a, lambda), -0.25 * l4 * (1.0 - 1e-6));
  if (a > 0.0 && E_floor < -guard) {
    for (double d : log_grid(guard, -E_floor, search.points_per_decade)) grid.push_back(-d);
    for (double e : log_grid(1e-10 * l4, -E_floor - guard, search.points_per_decade)) grid.push_back(E_floor + e);
  }
  for (double e : log_grid(guard, E_max, search.points_per_decade)) grid.push_back(e);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  grid.erase(std::remove_if(grid.begin(), grid.end(),
                            [&](double E) { return !(E > E_floor) || std::abs(E) < guard * (1.0 - 1e-12); }),
             grid.end());

  std::vector<PeriodData> data(grid.size());
  const auto gn = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < gn; ++i) {
    try {
      data[i] = period_data(grid[i], lambda, a);
    } catch (const std::exception&) {
      data[i].E = grid[i];
      data[i].ok = false;
    }
  }

  double L_min = std::numeric_limits<double>::infinity();
  for (const auto& d : data) {
    if (d.ok) L_min = std::min(L_min, d.L);
  }
  const int N_max = search.N_max ? *search.N_max : static_cast<int>(std::ceil(A / (C * L_min)));

  std::vector<Config> configs;
  for (int N = 0; N <= N_max; ++N) {
    if (N >= 1) {
      configs.push_back({SegmentKind::L0, 1, N});
      configs.push_back({SegmentKind::L0, -1, N});
    }
    configs.push_back({SegmentKind::L2, 1, N});
    configs.push_back({SegmentKind::L1, -1, N});
  }

  struct Bracket {
    Config config;
    double Ea, Eb, ga, gb;
  };
  std::vector<Bracket> brackets;
  const double slack = 1.2 * A + 1.0;
  for (const auto& cfg : configs) {
    for (std::size_t i = 0; i + 1 < data.size(); ++i) {
      const auto &p = data[i], &q = data[i + 1];
      if (!p.ok || !q.ok) continue;
      if ((p.E < 0.0) != (q.E < 0.0)) continue;  // never bracket across the separatrix
      const double ga = norm(config_chord(p, cfg)) - R;
      const double gb = norm(config_chord(q, cfg)) - R;
      if ((ga > 0.0) == (gb > 0.0)) continue;
      if (std::min(config_energy(p, cfg, lambda, a), config_energy(q, cfg, lambda, a)) > slack) continue;
      brackets.push_back({cfg, p.E, q.E, ga, gb});
    }
  }

  std::vector<std::optional<EquilibriumRecord>> found(brackets.size());
  std::vector<std::string> notes(brackets.size());
  const auto bn = static_cast<std::ptrdiff_t>(brackets.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b = 0; b < bn; ++b) {
    const Bracket& br = brackets[b];
    try {
      const Config& cfg = br.config;
      auto g = [&](double E) { return norm(config_chord(period_data(E, lambda, a), cfg)) - R; };
      // Illinois variant of regula falsi, bisection every third step
      double x0 = br.Ea, x1 = br.Eb, g0 = br.ga, g1 = br.gb;
      double x = x0, gx = g0;
      int side = 0;
      bool done = false;
      for (int it = 0; it < 200; ++it) {
        x = (it % 3 == 2) ? 0.5 * (x0 + x1) : (x0 * g1 - x1 * g0) / (g1 - g0);
        if (!(x > std::min(x0, x1) && x < std::max(x0, x1))) x = 0.5 * (x0 + x1);
        gx = g(x);
        if (std::abs(gx) < kRootTolerance) {
          done = true;
          break;
        }
        if ((gx > 0.0) == (g1 > 0.0)) {
          x1 = x;
          g1 = gx;
          if (side == -1) g0 *= 0.5;
          side = -1;
        } else {
          x0 = x;
          g0 = gx;
          if (side == 1) g1 *= 0.5;
          side = 1;
        }
        if (std::abs(x1 - x0) <= 1e-15 * std::max(1.0, std::abs(x))) break;
      }
      if (!done) {
        std::ostringstream msg;
        msg << "root refinement stalled for " << to_string(cfg.kind) << " N=" << cfg.N << " near E=" << x
            << " (|g| = " << std::abs(gx) << ")";
        notes[b] = msg.str();
        continue;
      }

      const PeriodData p = period_data(x, lambda, a);
      const double length = config_length(p, cfg);
      const double energy = config_energy(p, cfg, lambda, a);
      if (energy > A * (1.0 + 1e-12) + 1e-12) continue;

      const auto ext = kappa_extremes(x, lambda);
      const std::size_t n = node_count(length, x, lambda, search.node_density, search.min_nodes);
      const double omega = std::max(ext.kappa_M, lambda);
      const int sign = cfg.sign;
      const double ks0 = sign * std::sqrt(std::max(0.0, x - potential(a, lambda)));
      Reconstruction rec = integrate_curve(lambda, a, ks0, 0.0, length, n, omega);
      const Vec2 chord = rec.points.back();
      const double phi = std::atan2(chord.y, chord.x);
      for (auto& q : rec.points) q = rotate(q, -phi);
      rec.points.front() = {0.0, 0.0};
      rec.points.back() = {R, 0.0};

      EquilibriumRecord r{DiscreteCurve(std::move(rec.points)), std::move(rec.kappa)};
      r.E = x;
      r.N = cfg.N;
      r.segment = cfg.kind;
      r.sign = sign;
      r.length = length;
      r.energy = rec.end.int_kappa_sq - 2.0 * a * rec.end.int_kappa + lambda * lambda * length;
      r.stationary_residual = rec.drift;
      r.bc_residual = std::abs(rec.end.kappa - a) + std::abs(norm(chord) - R);
      if (r.stationary_residual >= kAdmitStationary || r.bc_residual >= kAdmitBoundary) {
        std::ostringstream msg;
        msg << "rejected " << to_string(cfg.kind) << " N=" << cfg.N << " E=" << x
            << ": stationary residual " << r.stationary_residual << ", boundary residual " << r.bc_residual;
        notes[b] = msg.str();
        continue;
      }
      found[b] = std::move(r);
    } catch (const std::exception& e) {
      notes[b] = std::string("bracket failed: ") + e.what();
    }
  }

  for (std::size_t b = 0; b < found.size(); ++b) {
    if (found[b]) out.records.push_back(std::move(*found[b]));
    if (!notes[b].empty()) out.warnings.push_back(notes[b]);
  }
  if (a == 0.0 && lambda * lambda * R <= A) {
    std::vector<Vec2> pts(search.min_nodes + 1);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      pts[i] = {R * static_cast<double>(i) / static_cast<double>(search.min_nodes), 0.0};
    }
    pts.back() = {R, 0.0};
    EquilibriumRecord r{DiscreteCurve(std::move(pts)), ScalarField(search.min_nodes + 1, 0.0)};
    r.E = 0.0;
    r.length = R;
    r.energy = lambda * lambda * R;
    out.records.push_back(std::move(r));
  }
  if (alpha < 0.0) {
    for (auto& r : out.records) {
      r.curve = reflect(r.curve);
      for (auto& k : r.kappa) k = -k;
    }
  }
  sort_and_dedupe(out.records);
  return out;
}

// ---------------------------------------------------------------- clamped

namespace {

struct Shot {
  double kappa0, kappa_s0, length;
};

double wrap_angle(double a) { return std::atan2(std::sin(a), std::cos(a)); }

struct ClampedProblem {
  double lambda, R, theta0, theta1;

  std::array<double, 3> residual(const Shot& s, std::size_t steps) const {
    OrbitIntegrator integ(lambda, s.kappa0, s.kappa_s0, theta0, 1.0);
    integ.advance_fixed(s.length, steps);
    const auto& p = integ.point();
    return {p.x - R, p.y, wrap_angle(p.theta - theta1)};
  }
};

double inf_norm(const std::array<double, 3>& r) {
  return std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
}

bool solve3(std::array<std::array<double, 3>, 3> J, std::array<double, 3> b, std::array<double, 3>& x) {
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r) {
      if (std::abs(J[r][c]) > std::abs(J[piv][c])) piv = r;
    }
    if (std::abs(J[piv][c]) < 1e-300) return false;
    std::swap(J[piv], J[c]);
    std::swap(b[piv], b[c]);
    for (int r = c + 1; r < 3; ++r) {
      const double f = J[r][c] / J[c][c];
      for (int k = c; k < 3; ++k) J[r][k] -= f * J[c][k];
      b[r] -= f * b[c];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < 3; ++k) s -= J[r][k] * x[k];
    x[r] = s / J[r][r];
  }
  return std::isfinite(x[0]) && std::isfinite(x[1]) && std::isfinite(x[2]);
}

std::optional<Shot> newton(const ClampedProblem& prob, Shot s, double max_length) {
  const double omega0 = std::max({std::abs(prob.lambda), std::abs(s.kappa0), 1.0});
  const auto steps = static_cast<std::size_t>(std::ceil(s.length * omega0 / 0.002)) + 16;
  auto r = prob.residual(s, steps);
  for (int it = 0; it < 40; ++it) {
    if (inf_norm(r) < 1e-11) return s;
    std::array<std::array<double, 3>, 3> J{};
    const std::array<double, 3> u{s.kappa0, s.kappa_s0, s.length};
    for (int j = 0; j < 3; ++j) {
      std::array<double, 3> up = u;
      const double h = 1e-7 * std::max(1.0, std::abs(u[j]));
      up[j] += h;
      const auto rp = prob.residual({up[0], up[1], up[2]}, steps);
      for (int i = 0; i < 3; ++i) J[i][j] = (rp[i] - r[i]) / h;
    }
    std::array<double, 3> delta{};
    if (!solve3(J, {-r[0], -r[1], -r[2]}, delta)) return std::nullopt;
    double t = 1.0;
    bool improved = false;
    for (int k = 0; k < 8; ++k, t *= 0.5) {
      const Shot trial{s.kappa0 + t * delta[0], s.kappa_s0 + t * delta[1], s.length + t * delta[2]};
      if (!(trial.length > 0.0) || trial.length > max_length) continue;
      const auto rt = prob.residual(trial, steps);
      if (inf_norm(rt) < inf_norm(r)) {
        s = trial;
        r = rt;
        improved = true;
        break;
      }
    }
    if (!improved) return std::nullopt;
  }
  return inf_norm(r) < 1e-11 ? std::optional<Shot>(s) : std::nullopt;
}

}  // namespace

Catalog find_clamped_equilibria(double lambda, Vec2 tau0, Vec2 tau1, double R, double A,
                                const ClampedSearch& search) {
  if (!std::isfinite(lambda) || lambda == 0.0) throw InvalidInput("lambda must be finite and nonzero");
  if (!(R > 0.0)) throw InvalidInput("R must be positive");
  if (std::abs(norm(tau0) - 1.0) > 1e-12 || std::abs(norm(tau1) - 1.0) > 1e-12) {
    throw InvalidInput("clamped tangents must be unit vectors");
  }
  if (search.energy_points < 2 || search.phase_points < 2) throw InvalidInput("seed grid too small");
  lambda = std::abs(lambda);
  const double l2 = lambda * lambda, l4 = l2 * l2;
  Catalog out;
  if (A < l2 * R) return out;  // length alone exceeds the budget

  const ClampedProblem prob{lambda, R, std::atan2(tau0.y, tau0.x), std::atan2(tau1.y, tau1.x)};
  const double max_length = A / l2;

  // past E_max every piece of orbit at least R long bends more than A allows
  double E_max = std::max(1.0, l4);
  for (int it = 0; it < 80; ++it) {
    const double L = period_L(E_max, lambda);
    const double full = std::floor(R / L);
    if (full >= 1.0 && full * kappa_sq_per_period(E_max, lambda) > A) break;
    E_max *= 2.0;
  }

  std::vector<double> levels;
  for (double q : log_grid(1e-4, 1.0, std::max(2, search.energy_points / 4))) levels.push_back(-0.25 * l4 * (1.0 - q));
  for (double e : log_grid(1e-3 * l4, E_max, std::max(2, search.energy_points / 2))) levels.push_back(e);
  levels.erase(std::remove_if(levels.begin(), levels.end(), [&](double E) { return !(E > -0.25 * l4) || E == 0.0; }),
               levels.end());

  std::vector<std::pair<double, double>> starts{{0.0, 0.0}, {lambda, 0.0}, {-lambda, 0.0}};
  const double two_pi = 2.0 * std::numbers::pi;
  for (double E : levels) {
    const auto ext = kappa_extremes(E, lambda);
    std::vector<std::pair<double, double>> wells;
    if (E > 0.0) {
      wells.push_back({0.0, ext.kappa_M});
    } else {
      const double c = 0.5 * (ext.kappa_M + ext.kappa_m), r = 0.5 * (ext.kappa_M - ext.kappa_m);
      wells.push_back({c, r});
      wells.push_back({-c, r});
    }
    for (const auto& [c, r] : wells) {
      for (int j = 0; j < search.phase_points; ++j) {
        const double psi = two_pi * (j + 0.5) / search.phase_points;
        const double k0 = c + r * std::cos(psi);
        const double ks = (std::sin(psi) >= 0.0 ? 1.0 : -1.0) * std::sqrt(std::max(0.0, E - potential(k0, lambda)));
        starts.push_back({k0, ks});
      }
    }
  }

  // each start is followed along its orbit; local minima of the mismatch
  // with the far boundary data seed the length
  std::vector<std::vector<Shot>> per_start(starts.size());
  const auto sn = static_cast<std::ptrdiff_t>(starts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < sn; ++i) {
    const auto [k0, ks] = starts[i];
    const double E = ks * ks + potential(k0, lambda);
    double omega = std::max(lambda, std::abs(k0));
    if (E > -0.25 * l4) omega = std::max(omega, kappa_extremes(E, lambda).kappa_M);
    const double h = 0.002 / omega;
    OrbitIntegrator integ(lambda, k0, ks, prob.theta0, h);
    std::vector<Shot> seeds;
    double m_prev2 = std::numeric_limits<double>::infinity(), m_prev = m_prev2;
    const auto total = static_cast<std::size_t>(std::ceil(max_length / h));
    for (std::size_t k = 0; k < total; ++k) {
      integ.advance_fixed(h, 1);
      const auto& p = integ.point();
      if (p.int_kappa_sq + l2 * integ.arclength() > 1.1 * A) break;
      const double m = ((p.x - R) * (p.x - R) + p.y * p.y) / (R * R) + (1.0 - std::cos(p.theta - prob.theta1));
      if (m_prev < m_prev2 && m_prev <= m && m_prev < 0.25) {
        seeds.push_back({k0, ks, integ.arclength() - h});
        if (seeds.size() >= 8) break;
      }
      m_prev2 = m_prev;
      m_prev = m;
    }
    per_start[i] = std::move(seeds);
  }
  std::vector<Shot> seeds;
  for (auto& v : per_start) seeds.insert(seeds.end(), v.begin(), v.end());

  std::vector<std::optional<Shot>> solved(seeds.size());
  const auto qn = static_cast<std::ptrdiff_t>(seeds.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < qn; ++i) {
    try {
      solved[i] = newton(prob, seeds[i], max_length);
    } catch (const std::exception&) {
      solved[i].reset();
    }
  }

  std::vector<Shot> unique;
  for (const auto& s : solved) {
    if (!s) continue;
    bool dup = false;
    for (const auto& u : unique) {
      if (std::abs(u.kappa0 - s->kappa0) < 1e-7 && std::abs(u.kappa_s0 - s->kappa_s0) < 1e-7 &&
          std::abs(u.length - s->length) < 1e-7) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(*s);
  }
  std::sort(unique.begin(), unique.end(), [](const Shot& x, const Shot& y) {
    if (x.length != y.length) return x.length < y.length;
    if (x.kappa0 != y.kappa0) return x.kappa0 < y.kappa0;
    return x.kappa_s0 < y.kappa_s0;
  });

  std::vector<std::optional<EquilibriumRecord>> built(unique.size());
  std::vector<std::string> notes(unique.size());
  const auto un = static_cast<std::ptrdiff_t>(unique.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < un; ++i) {
    const Shot& s = unique[i];
    try {
      const double E = s.kappa_s0 * s.kappa_s0 + potential(s.kappa0, lambda);
      const std::size_t n = node_count(s.length, E, lambda, search.node_density, search.min_nodes);
      double omega = std::max(lambda, std::abs(s.kappa0));
      if (E > -0.25 * l4) omega = std::max(omega, kappa_extremes(E, lambda).kappa_M);
      Reconstruction rec = integrate_curve(lambda, s.kappa0, s.kappa_s0, prob.theta0, s.length, n, omega);
      const double energy = rec.end.int_kappa_sq + l2 * s.length;
      if (search.energy_level ? std::abs(energy - *search.energy_level) > 1e-6 : energy > A * (1.0 + 1e-12)) continue;
      const Vec2 end = rec.points.back();
      rec.points.back() = {R, 0.0};
      EquilibriumRecord r{DiscreteCurve(std::move(rec.points)), std::move(rec.kappa)};
      r.E = E;
      r.sign = s.kappa_s0 >= 0.0 ? 1 : -1;
      r.length = s.length;
      r.energy = energy;
      if (E != 0.0 && E > -0.25 * l4) r.N = static_cast<int>(std::floor(s.length / period_L(E, lambda)));
      r.stationary_residual = rec.drift;
      r.bc_residual = distance(end, {R, 0.0}) + std::abs(wrap_angle(rec.end.theta - prob.theta1));
      if (r.stationary_residual >= kAdmitStationary || r.bc_residual >= kAdmitBoundary) {
        std::ostringstream msg;
        msg << "rejected clamped solution with length " << s.length << ": stationary residual "
            << r.stationary_residual << ", boundary residual " << r.bc_residual;
        notes[i] = msg.str();
        continue;
      }
      built[i] = std::move(r);
    } catch (const std::exception& e) {
      notes[i] = std::string("clamped reconstruction failed: ") + e.what();
    }
  }
  for (std::size_t i = 0; i < built.size(); ++i) {
    if (built[i]) out.records.push_back(std::move(*built[i]));
    if (!notes[i].empty()) out.warnings.push_back(notes[i]);
  }
  // clamped data is not reflection invariant, so compare curves as they are
  std::sort(out.records.begin(), out.records.end(), [](const auto& x, const auto& y) { return x.energy < y.energy; });
  std::vector<EquilibriumRecord> kept;
  for (auto& r : out.records) {
    bool dup = false;
    for (const auto& k : kept) {
      if (std::abs(k.length - r.length) < 1e-6 * std::max(1.0, r.length) &&
          hausdorff_distance(k.curve, r.curve) < kDedupDistance) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(std::move(r));
  }
  out.records = std::move(kept);
  return out;
}

BlowupReport energy_blowup_check(double lambda, const std::vector<double>& E_list) {
  if (E_list.empty()) throw InvalidInput("energy list is empty");
  BlowupReport rep;
  for (std::size_t i = 0; i < E_list.size(); ++i) {
    const double E = E_list[i];
    if (!(E > 0.0)) throw InvalidInput("energy list must be positive");
    if (i > 0 && !(E > E_list[i - 1])) throw InvalidInput("energy list must be increasing");
    const double kM = kappa_extremes(E, lambda).kappa_M;
    rep.E.push_back(E);
    rep.integral.push_back(kappa_sq_per_period(E, lambda));
    rep.lower_bound.push_back(kM * kM * kM / (8.0 * std::sqrt(E)));
    if (!(rep.integral.back() > rep.lower_bound.back())) rep.bound_holds = false;
    if (i > 0 && !(rep.integral[i] > rep.integral[i - 1])) rep.increasing = false;
  }
  return rep;
}

}  // namespace elastica
