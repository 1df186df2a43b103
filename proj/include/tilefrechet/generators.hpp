#pragma once

// Seeded instance families for tiling paths and plane curves.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tilefrechet/lattice.hpp"
#include "tilefrechet/plane.hpp"

namespace tilefrechet {

enum class PathModel { randomwalk, staircase, spiral, spacefill };

inline std::string_view to_string(PathModel m) {
  switch (m) {
    case PathModel::randomwalk: return "randomwalk";
    case PathModel::staircase: return "staircase";
    case PathModel::spiral: return "spiral";
    case PathModel::spacefill: return "spacefill";
  }
  return "?";
}

inline PathModel parse_path_model(std::string_view s) {
  if (s == "randomwalk") return PathModel::randomwalk;
  if (s == "staircase") return PathModel::staircase;
  if (s == "spiral") return PathModel::spiral;
  if (s == "spacefill") return PathModel::spacefill;
  throw std::invalid_argument("unknown path model: " + std::string(s));
}

/// Lattice vertex whose embedding is closest to p.
inline Coord nearest_vertex(TilingKind kind, Point2 p) {
  static const double sqrt3 = std::sqrt(3.0);
  std::int64_t a0 = 0, b0 = 0;
  switch (kind) {
    case TilingKind::square:
      return make_coord(kind, std::llround(p.x), std::llround(p.y));
    case TilingKind::triangular:
      b0 = std::llround(p.y / (0.5 * sqrt3));
      a0 = std::llround(p.x - 0.5 * static_cast<double>(b0));
      break;
    case TilingKind::hexagonal:
      b0 = std::llround((p.y + 0.25) / 1.5);
      a0 = std::llround(p.x / (0.5 * sqrt3));
      break;
  }
  Coord best = make_coord(kind, a0, b0);
  double best_d = INFINITY;
  for (std::int64_t da = -2; da <= 2; ++da)
    for (std::int64_t db = -2; db <= 2; ++db) {
      const Coord c = make_coord(kind, a0 + da, b0 + db);
      const Point2 q = embed(kind, c);
      const double d = std::hypot(q.x - p.x, q.y - p.y);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
  return best;
}

namespace detail {

// Simple path under construction; stepping onto an earlier vertex erases the
// loop it closes.
class LoopErasedPath {
 public:
  explicit LoopErasedPath(TilingKind kind, Coord start) : kind_(kind) { push(start); }

  void step(const Coord& next) {
    auto it = index_.find(next);
    if (it == index_.end()) {
      push(next);
      return;
    }
    const std::size_t keep = it->second + 1;
    for (std::size_t i = keep; i < verts_.size(); ++i) index_.erase(verts_[i]);
    verts_.resize(keep);
  }

  // Walks a shortest route to target, one lattice step at a time.
  void route_to(const Coord& target) {
    while (!(verts_.back() == target)) {
      const Coord cur = verts_.back();
      const std::int64_t d = graph_distance(kind_, cur, target);
      for (const Coord& nb : neighbors(kind_, cur))
        if (graph_distance(kind_, nb, target) < d) {
          step(nb);
          break;
        }
    }
  }

  bool visited(const Coord& c) const { return index_.contains(c); }
  const Coord& back() const { return verts_.back(); }
  std::size_t size() const { return verts_.size(); }
  std::vector<Coord>& vertices() { return verts_; }

 private:
  void push(const Coord& c) {
    index_.emplace(c, verts_.size());
    verts_.push_back(c);
  }

  TilingKind kind_;
  std::vector<Coord> verts_;
  std::unordered_map<Coord, std::size_t, CoordHash> index_;
};

inline Point2 hilbert_point(std::uint64_t order_side, std::uint64_t d) {
  std::uint64_t x = 0, y = 0;
  for (std::uint64_t s = 1; s < order_side; s *= 2) {
    const std::uint64_t rx = 1 & (d / 2);
    const std::uint64_t ry = 1 & (d ^ rx);
    if (ry == 0) {
      if (rx == 1) {
        x = s - 1 - x;
        y = s - 1 - y;
      }
      std::swap(x, y);
    }
    x += s * rx;
    y += s * ry;
    d /= 4;
  }
  return {static_cast<double>(x), static_cast<double>(y)};
}

}  // namespace detail

/// Deterministic seeded simple path with n vertices.
inline TilingPath gen_path(TilingKind kind, std::size_t n, PathModel model, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  std::mt19937_64 rng(seed);
  const Coord origin = make_coord(kind, 0, 0);
  std::vector<Coord> out;

  switch (model) {
    case PathModel::staircase: {
      out.push_back(origin);
      // honeycomb vertical edges exist only from even-parity vertices upward,
      // so that staircase starts with the vertical step
      bool horizontal = kind != TilingKind::hexagonal;
      while (out.size() < n) {
        const Coord c = out.back();
        out.push_back(horizontal ? make_coord(kind, c.a + 1, c.b) : make_coord(kind, c.a, c.b + 1));
        horizontal = !horizontal;
      }
      break;
    }
    case PathModel::randomwalk: {
      detail::LoopErasedPath walk(kind, origin);
      const std::size_t budget = 200 * n + 10000;
      std::vector<Coord> fresh;
      for (std::size_t steps = 0; walk.size() < n; ++steps) {
        if (steps > budget) throw std::runtime_error("cannot extend simple path");
        const auto nb = neighbors(kind, walk.back());
        fresh.clear();
        for (const Coord& c : nb)
          if (!walk.visited(c)) fresh.push_back(c);
        if (!fresh.empty()) {
          walk.step(fresh[std::uniform_int_distribution<std::size_t>(0, fresh.size() - 1)(rng)]);
        } else {
          walk.step(nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)]);
        }
      }
      out = std::move(walk.vertices());
      break;
    }
    case PathModel::spiral: {
      // Archimedean spiral with arm gap 3, random orientation
      const double phase = std::uniform_real_distribution<double>(0, 2 * std::numbers::pi)(rng);
      const double gap = 3.0;
      detail::LoopErasedPath walk(kind, origin);
      double theta = 0;
      while (walk.size() < n) {
        const double r = gap * theta / (2 * std::numbers::pi);
        walk.route_to(nearest_vertex(kind, {r * std::cos(theta + phase), r * std::sin(theta + phase)}));
        theta += 1.0 / std::max(1.0, r);
      }
      out = std::move(walk.vertices());
      break;
    }
    case PathModel::spacefill: {
      // Hilbert curve with cell size 3, sampled at unit spacing
      std::uint64_t side = 2;
      while (side * side < n + 16) side *= 2;
      const double cell = 3.0;
      const std::uint64_t cells = side * side;
      const auto start = std::uniform_int_distribution<std::uint64_t>(0, cells / 4)(rng);
      detail::LoopErasedPath walk(kind, origin);
      Point2 base = detail::hilbert_point(side, start);
      for (std::uint64_t d = start; walk.size() < n; ++d) {
        if (d + 1 >= cells) throw std::runtime_error("cannot extend simple path");
        const Point2 p = detail::hilbert_point(side, d + 1);
        const Point2 q = detail::hilbert_point(side, d);
        for (int s = 1; s <= 3 && walk.size() < n; ++s) {
          const double t = s / 3.0;
          walk.route_to(nearest_vertex(kind, {cell * (q.x + t * (p.x - q.x) - base.x),
                                              cell * (q.y + t * (p.y - q.y) - base.y)}));
        }
      }
      out = std::move(walk.vertices());
      break;
    }
  }
  out.resize(n);
  return validate_path(kind, out);
}

/// Path moved by a lattice translation; honeycomb offsets must have even
/// da + db so that vertex parities are preserved.
inline TilingPath translate(const TilingPath& p, std::int64_t da, std::int64_t db) {
  if (p.kind == TilingKind::hexagonal && (da + db) % 2 != 0)
    throw std::invalid_argument("hexagonal translation must have even a + b");
  TilingPath out{p.kind, {}};
  out.vertices.reserve(p.size());
  for (const Coord& v : p.vertices) out.vertices.push_back(make_coord(p.kind, v.a + da, v.b + db));
  return out;
}

/// Coordinates on the grid of 2^-10, so that sums and differences of a few
/// of them stay exact in double arithmetic.
inline double dyadic(double x) { return std::round(x * 1024.0) / 1024.0; }

/// Seeded plane curve with edges at most 3 eps in which every vertex has at
/// most target_delta vertices (itself included) within 2 eps; this bounds
/// the ball depth at radius eps by target_delta.
inline PlaneCurve gen_eps_delta_curve(std::size_t n, double eps, std::int64_t target_delta,
                                      std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(eps > 0) || target_delta < 1) throw std::invalid_argument("invalid profile");
  std::mt19937_64 rng(seed);
  PlaneCurve out{{{0, 0}}, 3 * eps};
  const double side = 2 * eps;
  std::unordered_map<detail::CellKey, std::vector<std::size_t>, detail::CellKeyHash> grid;
  std::vector<std::int64_t> crowd{1};
  grid[detail::cell_of({0, 0}, side)].push_back(0);
  std::uniform_real_distribution<double> len(eps, 3 * eps);
  std::normal_distribution<double> turn(0.0, 0.5);
  double heading = std::uniform_real_distribution<double>(0, 2 * std::numbers::pi)(rng);
  std::vector<std::size_t> near;
  auto neighbours = [&](Point2 x, std::size_t below) {
    near.clear();
    const auto key = detail::cell_of(x, side);
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = grid.find({key.x + dx, key.y + dy});
        if (it == grid.end()) continue;
        for (std::size_t j : it->second)
          if (j < below && euclidean(x, out[j]) <= side) near.push_back(j);
      }
  };
  // a walk that curls into a dead end backs up a few vertices and retries
  std::size_t budget = 50 * n + 1000, longest = 1, stuck = 0;
  while (out.size() < n) {
    if (out.size() > longest) {
      longest = out.size();
      stuck = 0;
    }
    bool placed = false;
    for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
      const double h = heading + turn(rng) * (1 + attempt / 25.0);
      const double r = len(rng);
      const Point2 last = out.vertices.back();
      const Point2 cand{dyadic(last.x + r * std::cos(h)), dyadic(last.y + r * std::sin(h))};
      if (euclidean(last, cand) > out.gamma) continue;
      neighbours(cand, out.size());
      if (static_cast<std::int64_t>(near.size()) + 1 > target_delta) continue;
      if (std::any_of(near.begin(), near.end(), [&](std::size_t j) { return crowd[j] + 1 > target_delta; }))
        continue;
      for (std::size_t j : near) ++crowd[j];
      crowd.push_back(static_cast<std::int64_t>(near.size()) + 1);
      grid[detail::cell_of(cand, side)].push_back(out.size());
      out.vertices.push_back(cand);
      heading = h;
      placed = true;
    }
    if (placed) continue;
    if (budget-- == 0) throw std::runtime_error("target unreachable");
    ++stuck;
    const std::size_t back = std::min<std::size_t>(out.size() - 1, 1 + rng() % (8 * stuck));
    for (std::size_t s = 0; s < back; ++s) {
      const std::size_t last = out.size() - 1;
      neighbours(out[last], last);
      for (std::size_t j : near) --crowd[j];
      grid[detail::cell_of(out[last], side)].pop_back();
      crowd.pop_back();
      out.vertices.pop_back();
    }
    heading = std::uniform_real_distribution<double>(0, 2 * std::numbers::pi)(rng);
  }
  return out;
}

/// Copy of p with every vertex moved by at most amp per coordinate (dyadic).
inline PlaneCurve jitter_curve(const PlaneCurve& p, double amp, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amp, amp);
  PlaneCurve out{{}, p.gamma + 2 * std::sqrt(2.0) * amp + 0.01};
  for (const Point2& v : p.vertices) out.vertices.push_back({dyadic(v.x + u(rng)), dyadic(v.y + u(rng))});
  return out;
}

}  // namespace tilefrechet
