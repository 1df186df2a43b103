#pragma once

// Integer models of the three regular unit tilings.
//
// square      : (a, b) grid points, 4-neighbourhood.
// triangular  : axial coordinates (a, b); the embedding is x = a + b/2,
//               y = b*sqrt(3)/2, so horizontal edges stay horizontal.
// hexagonal   : "brick wall" coordinates. Every integer pair (a, b) is a
//               honeycomb vertex; (a, b) is joined to (a +- 1, b) and to
//               (a, b + 1) when a + b is even, (a, b - 1) otherwise. The
//               parity field caches (a + b) mod 2, i.e. the vertex class.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tilefrechet {

enum class TilingKind { square, triangular, hexagonal };

inline constexpr std::array<TilingKind, 3> all_tiling_kinds = {
    TilingKind::square, TilingKind::triangular, TilingKind::hexagonal};

inline std::string_view to_string(TilingKind kind) {
  switch (kind) {
    case TilingKind::square: return "square";
    case TilingKind::triangular: return "triangular";
    case TilingKind::hexagonal: return "hexagonal";
  }
  return "?";
}

inline TilingKind parse_tiling_kind(std::string_view name) {
  if (name == "square") return TilingKind::square;
  if (name == "triangular") return TilingKind::triangular;
  if (name == "hexagonal") return TilingKind::hexagonal;
  throw std::invalid_argument("unknown tiling kind: " + std::string(name));
}

struct Coord {
  std::int64_t a = 0;
  std::int64_t b = 0;
  int parity = 0;

  friend constexpr bool operator==(const Coord&, const Coord&) = default;
  friend constexpr auto operator<=>(const Coord&, const Coord&) = default;
};

inline constexpr int brick_parity(std::int64_t a, std::int64_t b) {
  return static_cast<int>(((a + b) % 2 + 2) % 2);
}

/// Builds a coordinate with the parity field normalised for `kind`.
inline constexpr Coord make_coord(TilingKind kind, std::int64_t a, std::int64_t b) {
  return Coord{a, b, kind == TilingKind::hexagonal ? brick_parity(a, b) : 0};
}

struct CoordHash {
  std::size_t operator()(const Coord& c) const noexcept {
    auto h = static_cast<std::uint64_t>(c.a) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(c.b) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

/// Axis-aligned rectangle in lattice coordinates, bounds inclusive.
struct LatticeWindow {
  std::int64_t a_lo, a_hi, b_lo, b_hi;

  bool contains(const Coord& c) const {
    return c.a >= a_lo && c.a <= a_hi && c.b >= b_lo && c.b <= b_hi;
  }
  bool empty() const { return a_lo > a_hi || b_lo > b_hi; }
};

inline std::vector<Coord> neighbors(TilingKind kind, const Coord& v) {
  switch (kind) {
    case TilingKind::square:
      return {make_coord(kind, v.a + 1, v.b), make_coord(kind, v.a - 1, v.b),
              make_coord(kind, v.a, v.b + 1), make_coord(kind, v.a, v.b - 1)};
    case TilingKind::triangular:
      return {make_coord(kind, v.a + 1, v.b),     make_coord(kind, v.a - 1, v.b),
              make_coord(kind, v.a, v.b + 1),     make_coord(kind, v.a, v.b - 1),
              make_coord(kind, v.a + 1, v.b - 1), make_coord(kind, v.a - 1, v.b + 1)};
    case TilingKind::hexagonal: {
      const std::int64_t vertical = brick_parity(v.a, v.b) == 0 ? v.b + 1 : v.b - 1;
      return {make_coord(kind, v.a + 1, v.b), make_coord(kind, v.a - 1, v.b),
              make_coord(kind, v.a, vertical)};
    }
  }
  return {};
}

namespace detail {

// Honeycomb distance in brick-wall coordinates. When the horizontal offset
// dominates, every vertical step can be interleaved with a horizontal one and
// the distance is Manhattan. Otherwise vertical steps alternate with
// horizontal "parity fixing" steps; one step is saved at each end when the
// endpoint already has its vertical edge pointing the right way.
inline std::int64_t hex_distance(const Coord& u, const Coord& v) {
  const std::int64_t da = v.a - u.a;
  const std::int64_t db = v.b - u.b;
  const std::int64_t dx = std::llabs(da);
  const std::int64_t dy = std::llabs(db);
  if (dx >= dy) return dx + dy;
  const bool up = db > 0;
  const int pu = brick_parity(u.a, u.b);
  const int pv = brick_parity(v.a, v.b);
  const int leaves_vertically = up ? (pu == 0) : (pu == 1);
  const int arrives_vertically = up ? (pv == 1) : (pv == 0);
  return 2 * dy + 1 - leaves_vertically - arrives_vertically;
}

}  // namespace detail

/// Shortest-path length in the tiling graph, O(1).
inline std::int64_t graph_distance(TilingKind kind, const Coord& u, const Coord& v) {
  switch (kind) {
    case TilingKind::square:
      return std::llabs(u.a - v.a) + std::llabs(u.b - v.b);
    case TilingKind::triangular: {
      const std::int64_t da = v.a - u.a;
      const std::int64_t db = v.b - u.b;
      return (std::llabs(da) + std::llabs(db) + std::llabs(da + db)) / 2;
    }
    case TilingKind::hexagonal:
      return detail::hex_distance(u, v);
  }
  return 0;
}

/// Breadth-first search distance, or nullopt when it exceeds `cap`.
/// Validation oracle only; cost grows with cap^2.
inline std::optional<std::int64_t> bfs_distance(TilingKind kind, const Coord& u, const Coord& v,
                                                std::int64_t cap) {
  const Coord src = make_coord(kind, u.a, u.b);
  const Coord dst = make_coord(kind, v.a, v.b);
  if (src == dst) return 0;
  std::unordered_map<Coord, std::int64_t, CoordHash> dist;
  std::deque<Coord> queue;
  dist.emplace(src, 0);
  queue.push_back(src);
  while (!queue.empty()) {
    const Coord cur = queue.front();
    queue.pop_front();
    const std::int64_t d = dist[cur];
    if (d >= cap) continue;
    for (const Coord& nb : neighbors(kind, cur)) {
      if (dist.contains(nb)) continue;
      if (nb == dst) return d + 1;
      dist.emplace(nb, d + 1);
      queue.push_back(nb);
    }
  }
  return std::nullopt;
}

inline Point2 embed(TilingKind kind, const Coord& v) {
  static const double sqrt3 = std::sqrt(3.0);
  const auto a = static_cast<double>(v.a);
  const auto b = static_cast<double>(v.b);
  switch (kind) {
    case TilingKind::square:
      return {a, b};
    case TilingKind::triangular:
      return {a + 0.5 * b, 0.5 * sqrt3 * b};
    case TilingKind::hexagonal:
      return {0.5 * sqrt3 * a, 1.5 * b - (brick_parity(v.a, v.b) == 1 ? 0.5 : 0.0)};
  }
  return {};
}

/// All vertices of `window` at graph distance exactly r from center,
/// enumerated row by row.
inline std::vector<Coord> distance_circle(TilingKind kind, const Coord& center, std::int64_t r,
                                          const LatticeWindow& window) {
  std::vector<Coord> out;
  if (r < 0 || window.empty()) return out;
  const Coord c = make_coord(kind, center.a, center.b);
  // every kind satisfies |db| <= dist + 1
  const std::int64_t b_lo = std::max(window.b_lo, c.b - r - 1);
  const std::int64_t b_hi = std::min(window.b_hi, c.b + r + 1);
  for (std::int64_t b = b_lo; b <= b_hi; ++b) {
    const std::int64_t k = std::llabs(b - c.b);
    if (kind == TilingKind::hexagonal) {
      // steep band |da| < k: value depends only on the parity of a
      if (k > 0) {
        const std::int64_t s_lo = std::max(window.a_lo, c.a - k + 1);
        const std::int64_t s_hi = std::min(window.a_hi, c.a + k - 1);
        if (s_lo <= s_hi) {
          for (std::int64_t start = s_lo; start <= std::min(s_lo + 1, s_hi); ++start) {
            if (graph_distance(kind, c, make_coord(kind, start, b)) != r) continue;
            for (std::int64_t a = start; a <= s_hi; a += 2) out.push_back(make_coord(kind, a, b));
          }
        }
      }
      const std::int64_t off = r - k;
      if (off >= k && off >= 0) {
        const std::int64_t left = c.a - off;
        const std::int64_t right = c.a + off;
        if (left >= window.a_lo && left <= window.a_hi) out.push_back(make_coord(kind, left, b));
        if (off > 0 && right >= window.a_lo && right <= window.a_hi)
          out.push_back(make_coord(kind, right, b));
      }
      continue;
    }
    auto emit = [&](std::int64_t a) {
      if (a >= window.a_lo && a <= window.a_hi) out.push_back(make_coord(kind, a, b));
    };
    if (k > r) continue;
    const std::int64_t db = b - c.b;
    if (kind == TilingKind::square) {
      emit(c.a - (r - k));
      if (r > k) emit(c.a + (r - k));
      continue;
    }
    // triangular: dist = max(|da|, |db|, |da + db|)
    if (k == r) {
      const std::int64_t lo = std::max({-r, -r - db, window.a_lo - c.a});
      const std::int64_t hi = std::min({r, r - db, window.a_hi - c.a});
      for (std::int64_t da = lo; da <= hi; ++da) out.push_back(make_coord(kind, c.a + da, b));
      continue;
    }
    std::array<std::int64_t, 4> cand{-r - db, -r, r - db, r};
    std::sort(cand.begin(), cand.end());
    for (std::size_t t = 0; t < cand.size(); ++t) {
      const std::int64_t da = cand[t];
      if (t > 0 && cand[t - 1] == da) continue;
      if (std::max(std::llabs(da), std::llabs(da + db)) == r) emit(c.a + da);
    }
  }
  return out;
}

struct TilingPath {
  TilingKind kind = TilingKind::square;
  std::vector<Coord> vertices;

  std::size_t size() const { return vertices.size(); }
  const Coord& operator[](std::size_t i) const { return vertices[i]; }
};

class PathError : public std::invalid_argument {
 public:
  PathError(const std::string& what, std::size_t index)
      : std::invalid_argument(what + " at index " + std::to_string(index)), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Checks adjacency and simplicity; normalises parity fields.
inline TilingPath validate_path(TilingKind kind, std::span<const Coord> seq) {
  TilingPath path{kind, {}};
  path.vertices.reserve(seq.size());
  std::unordered_map<Coord, std::size_t, CoordHash> seen;
  seen.reserve(seq.size() * 2);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Coord c = make_coord(kind, seq[i].a, seq[i].b);
    if (i > 0 && graph_distance(kind, path.vertices.back(), c) != 1)
      throw PathError("non-adjacent step", i);
    if (!seen.emplace(c, i).second) throw PathError("repeated vertex", i);
    path.vertices.push_back(c);
  }
  return path;
}

}  // namespace tilefrechet
