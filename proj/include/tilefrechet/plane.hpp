#pragma once

// Polygonal curves in the plane: metrics, ball-depth profiles, resampling,
// and the shifted square tiling used by the plane deciders.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "tilefrechet/lattice.hpp"
#include "tilefrechet/supertiling.hpp"

namespace tilefrechet {

struct PlaneCurve {
  std::vector<Point2> vertices;
  double gamma = 1.0;

  std::size_t size() const { return vertices.size(); }
  const Point2& operator[](std::size_t i) const { return vertices[i]; }
};

inline double euclidean(Point2 p, Point2 q) {
  const double dx = p.x - q.x, dy = p.y - q.y;
  return std::sqrt(dx * dx + dy * dy);
}

inline double l1_distance(Point2 p, Point2 q) { return std::abs(p.x - q.x) + std::abs(p.y - q.y); }

struct LcMetric {
  double c = 2.0;

  double norm(double dx, double dy) const {
    dx = std::abs(dx);
    dy = std::abs(dy);
    if (c == 1.0) return dx + dy;
    if (c == 2.0) return std::sqrt(dx * dx + dy * dy);
    if (dx == 0.0) return dy;
    if (dy == 0.0) return dx;
    return std::pow(std::pow(dx, c) + std::pow(dy, c), 1.0 / c);
  }
  double operator()(Point2 p, Point2 q) const { return norm(p.x - q.x, p.y - q.y); }
};

/// Throws unless every edge has Euclidean length at most gamma.
inline void check_gamma(const PlaneCurve& p) {
  if (!(p.gamma > 0)) throw std::invalid_argument("gamma violated: gamma must be positive");
  const double g2 = p.gamma * p.gamma;
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double dx = p[i].x - p[i - 1].x, dy = p[i].y - p[i - 1].y;
    if (dx * dx + dy * dy > g2)
      throw std::invalid_argument("gamma violated at edge " + std::to_string(i - 1));
  }
}

namespace detail {

struct CellKey {
  std::int64_t x, y;
  friend constexpr bool operator==(const CellKey&, const CellKey&) = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    return CoordHash{}(Coord{k.x, k.y, 0});
  }
};

inline CellKey cell_of(Point2 p, double side) {
  return {static_cast<std::int64_t>(std::floor(p.x / side)),
          static_cast<std::int64_t>(std::floor(p.y / side))};
}

inline std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> bucket(
    const std::vector<Point2>& pts, double side) {
  std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> out;
  for (std::size_t i = 0; i < pts.size(); ++i) out[cell_of(pts[i], side)].push_back(i);
  return out;
}

}  // namespace detail

/// Largest number of radius-eps Euclidean balls around vertices of q that
/// share a point. The deepest region is an intersection of equal disks, so
/// it contains a centre or a crossing point of two circles; every such
/// candidate is counted.
inline std::int64_t delta_for_epsilon(const PlaneCurve& q, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (q.size() == 0) return 0;
  const auto& v = q.vertices;
  const double side = 2 * eps;
  const auto grid = detail::bucket(v, side);
  // small tolerance so that tangent circles and rounding in the crossing
  // points do not lose a ball that touches the candidate
  const double r2 = eps * eps * (1 + 1e-9);
  std::int64_t best = 1;
  std::vector<std::size_t> near;
  for (std::size_t i = 0; i < v.size(); ++i) {
    near.clear();
    const auto k = detail::cell_of(v[i], side);
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = grid.find({k.x + dx, k.y + dy});
        if (it == grid.end()) continue;
        for (std::size_t j : it->second)
          if (euclidean(v[i], v[j]) <= side) near.push_back(j);
      }
    auto depth = [&](Point2 x) {
      std::int64_t d = 0;
      for (std::size_t j : near) {
        const double ex = v[j].x - x.x, ey = v[j].y - x.y;
        if (ex * ex + ey * ey <= r2) ++d;
      }
      return d;
    };
    best = std::max(best, depth(v[i]));
    if (static_cast<std::int64_t>(near.size()) <= best) continue;
    for (std::size_t j : near) {
      const double dx = v[j].x - v[i].x, dy = v[j].y - v[i].y;
      const double d2 = dx * dx + dy * dy;
      if (d2 == 0) continue;
      const double h = std::sqrt(std::max(0.0, eps * eps - d2 / 4) / d2);
      const Point2 mid{(v[i].x + v[j].x) / 2, (v[i].y + v[j].y) / 2};
      best = std::max(best, depth({mid.x - h * dy, mid.y + h * dx}));
      best = std::max(best, depth({mid.x + h * dy, mid.y - h * dx}));
    }
  }
  return best;
}

/// Cheap upper bound on delta_for_epsilon: balls sharing a point have
/// centres in one 2eps x 2eps square, which meets at most a 2 x 2 block of
/// grid cells of side 2eps.
inline std::int64_t delta_upper_bound(const PlaneCurve& q, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  const auto grid = detail::bucket(q.vertices, 2 * eps);
  std::int64_t best = 0;
  for (const auto& [k, list] : grid) {
    std::int64_t s = 0;
    for (std::int64_t dx = 0; dx <= 1; ++dx)
      for (std::int64_t dy = 0; dy <= 1; ++dy) {
        auto it = grid.find({k.x - dx, k.y - dy});
        if (it != grid.end()) s += static_cast<std::int64_t>(it->second.size());
      }
    best = std::max(best, s);
  }
  return best;
}

/// Points every at most eps/8 of arc length along p, keeping all vertices.
inline PlaneCurve resample(const PlaneCurve& p, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  const double step = eps / 8;
  PlaneCurve out{{}, std::min(p.gamma, step)};
  if (p.size() == 0) return out;
  out.vertices.push_back(p[0]);
  for (std::size_t i = 1; i < p.size(); ++i) {
    const Point2 a = p[i - 1], b = p[i];
    const double len = euclidean(a, b);
    auto k = static_cast<std::size_t>(std::max(1.0, std::ceil(len / step)));
    // interpolated points carry rounding; add pieces until every gap fits
    for (;; ++k) {
      bool ok = true;
      Point2 prev = a;
      const std::size_t first = out.vertices.size();
      for (std::size_t s = 1; s <= k; ++s) {
        const double f = static_cast<double>(s) / static_cast<double>(k);
        const Point2 x = s == k ? b : Point2{a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)};
        if (euclidean(prev, x) > step) ok = false;
        out.vertices.push_back(x);
        prev = x;
      }
      if (ok) break;
      out.vertices.resize(first);
    }
  }
  return out;
}

/// Axis-parallel squares [shift + c t, shift + (c+1) t] x [shift + r t, ...].
struct PlaneTiling {
  std::int64_t t = 1;
  std::int64_t shift = 0;

  double lo_x(const FaceId& f) const { return static_cast<double>(shift + f.c * t); }
  double lo_y(const FaceId& f) const { return static_cast<double>(shift + f.r * t); }
  double hi_x(const FaceId& f) const { return lo_x(f) + static_cast<double>(t); }
  double hi_y(const FaceId& f) const { return lo_y(f) + static_cast<double>(t); }
};

/// The square whose half-open interior [lo, hi) holds p; p lies in its closure.
inline FaceId plane_face(const PlaneTiling& t, Point2 p) {
  const double s = static_cast<double>(t.shift), side = static_cast<double>(t.t);
  return {static_cast<std::int64_t>(std::floor((p.y - s) / side)),
          static_cast<std::int64_t>(std::floor((p.x - s) / side)), 0};
}

inline bool plane_aligned(const FaceId& f, const FaceId& g) { return f.r == g.r || f.c == g.c; }

/// Maximal runs of consecutive vertices in one half-open square. Both
/// endpoints of an edge inside a run lie in the same convex square, so no
/// such edge crosses a tiling edge; runs are disjoint and cover the curve.
inline std::vector<InducedSubpath> induced_subcurves(const PlaneCurve& p, const PlaneTiling& t) {
  std::vector<InducedSubpath> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const FaceId f = plane_face(t, p[i]);
    if (out.empty() || !(out.back().face == f))
      out.push_back({i, i, f});
    else
      out.back().hi = i;
  }
  return out;
}

inline std::size_t crossing_count(const PlaneCurve& p, const PlaneTiling& t) {
  std::size_t n = 0;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (!(plane_face(t, p[i - 1]) == plane_face(t, p[i]))) ++n;
  return n;
}

/// Shift (i,i), 0 <= i < t, with the fewest induced subcurves.
inline PlaneTiling choose_plane_tiling(const PlaneCurve& p, const PlaneCurve& q, std::int64_t t) {
  if (t < 1) throw std::invalid_argument("tile side must be >= 1");
  PlaneTiling best{t, 0};
  std::size_t best_count = std::numeric_limits<std::size_t>::max();
  for (std::int64_t i = 0; i < t; ++i) {
    const PlaneTiling cand{t, i};
    const std::size_t c = crossing_count(p, cand) + crossing_count(q, cand);
    if (c < best_count) {
      best_count = c;
      best = cand;
    }
  }
  return best;
}

/// Minimum metric distance between the closed squares f and g.
inline double face_min_distance(const FaceId& f, const FaceId& g, const PlaneTiling& t,
                                const LcMetric& metric) {
  const auto gap = [&](std::int64_t a, std::int64_t b) {
    return static_cast<double>(std::max<std::int64_t>(0, std::abs(a - b) - 1) * t.t);
  };
  return metric.norm(gap(f.c, g.c), gap(f.r, g.r));
}

/// Vertices of q bucketed by their nearest point on the grid of side eps.
class SnapGrid {
 public:
  SnapGrid(const PlaneCurve& q, double eps) : eps_(eps) {
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    std::vector<std::pair<detail::CellKey, std::size_t>> keyed;
    keyed.reserve(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) keyed.push_back({key(q[j]), j});
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
      return std::tie(a.first.x, a.first.y, a.second) < std::tie(b.first.x, b.first.y, b.second);
    });
    index_.reserve(keyed.size());
    for (std::size_t s = 0; s < keyed.size(); ++s) {
      if (s == 0 || !(keyed[s].first == keyed[s - 1].first))
        slots_.emplace(keyed[s].first, std::pair<std::size_t, std::size_t>{s, s});
      slots_[keyed[s].first].second = s + 1;
      index_.push_back(keyed[s].second);
    }
  }

  detail::CellKey key(Point2 p) const { return {std::llround(p.x / eps_), std::llround(p.y / eps_)}; }
  double eps() const { return eps_; }

  /// Indices of the vertices snapped to grid point (gx, gy) in ascending order.
  std::span<const std::size_t> at(std::int64_t gx, std::int64_t gy) const {
    auto it = slots_.find({gx, gy});
    if (it == slots_.end()) return {};
    return std::span<const std::size_t>(index_).subspan(it->second.first,
                                                        it->second.second - it->second.first);
  }

  std::size_t max_load() const {
    std::size_t best = 0;
    for (const auto& [k, s] : slots_) best = std::max(best, s.second - s.first);
    return best;
  }

  /// Calls visit(gx, gy) for grid points g with r_lo <= d(p, g) <= r_hi
  /// (up to a one-step margin) inside the box [x0, x1] x [y0, y1].
  template <class Visit>
  void annulus(Point2 p, double r_lo, double r_hi, const LcMetric& metric, double x0, double x1,
               double y0, double y1, Visit&& visit) const {
    if (r_hi < 0) return;
    const auto gy0 = static_cast<std::int64_t>(std::floor(std::max(y0, p.y - r_hi) / eps_)) - 1;
    const auto gy1 = static_cast<std::int64_t>(std::ceil(std::min(y1, p.y + r_hi) / eps_)) + 1;
    const auto gx_lo = static_cast<std::int64_t>(std::floor(x0 / eps_)) - 1;
    const auto gx_hi = static_cast<std::int64_t>(std::ceil(x1 / eps_)) + 1;
    for (std::int64_t gy = gy0; gy <= gy1; ++gy) {
      const double dy = std::abs(static_cast<double>(gy) * eps_ - p.y);
      const double outer = offset(r_hi, dy, metric.c);
      if (outer < 0) continue;
      const double inner = r_lo > dy ? offset(r_lo, dy, metric.c) : -1;
      auto emit = [&](double from, double to) {
        const auto a = std::max(gx_lo, static_cast<std::int64_t>(std::floor(from / eps_)) - 1);
        const auto b = std::min(gx_hi, static_cast<std::int64_t>(std::ceil(to / eps_)) + 1);
        for (std::int64_t gx = a; gx <= b; ++gx) visit(gx, gy);
      };
      if (inner <= eps_) {
        emit(p.x - outer, p.x + outer);
      } else {
        emit(p.x - outer, p.x - inner);
        emit(p.x + inner, p.x + outer);
      }
    }
  }

 private:
  // |dx| at which the metric ball of radius r meets a row at height dy
  static double offset(double r, double dy, double c) {
    if (r < dy) return -1;
    if (c == 1.0) return r - dy;
    if (c == 2.0) return std::sqrt(r * r - dy * dy);
    return std::pow(std::pow(r, c) - std::pow(dy, c), 1.0 / c);
  }

  double eps_;
  std::unordered_map<detail::CellKey, std::pair<std::size_t, std::size_t>, detail::CellKeyHash> slots_;
  std::vector<std::size_t> index_;
};

}  // namespace tilefrechet
