#pragma once

// Coarse tilings over a base tiling: face lookup, breakpoints, induced
// subpaths, alignment and well-separating vertices.
//
// Faces are described through two or three integer linear functionals of
// the lattice coordinates. The tiling metric is (up to a parity correction on
// the honeycomb) a sum of absolute differences of the same functionals, which
// is what makes the separating-vertex rule work:
//   square      : a, b                 dist = |da| + |db|
//   triangular  : a, b, a + b          dist = (|da| + |db| + |da + db|) / 2
//   hexagonal   : b, a + b, a - b      dist ~ max(|d(a+b)|, |d(a-b)|, 2|db|)
// A face's slab along a functional is the open strip where that functional
// lies strictly inside the face's range. Two faces are aligned when one of
// their functional ranges overlaps in more than a point.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tilefrechet/lattice.hpp"

namespace tilefrechet {

struct FaceId {
  std::int64_t r = 0;
  std::int64_t c = 0;
  int o = 0;  // triangle orientation: 0 = pointing up, 1 = pointing down

  friend constexpr bool operator==(const FaceId&, const FaceId&) = default;
  friend constexpr auto operator<=>(const FaceId&, const FaceId&) = default;
};

struct FaceIdHash {
  std::size_t operator()(const FaceId& f) const noexcept {
    return CoordHash{}(Coord{f.r, f.c * 2 + f.o, 0});
  }
};

struct SuperTiling {
  TilingKind kind = TilingKind::square;
  std::int64_t edge_len = 1;
  Coord shift{};
};

struct InducedSubpath {
  std::size_t lo = 0;
  std::size_t hi = 0;  // inclusive
  FaceId face{};

  std::size_t size() const { return hi - lo + 1; }
};

/// Closed integer interval of one functional over a face.
struct Extent {
  std::int64_t lo, hi;
};

namespace detail {

inline std::int64_t floor_div(std::int64_t x, std::int64_t d) {
  std::int64_t q = x / d;
  if ((x % d != 0) && ((x < 0) != (d < 0))) --q;
  return q;
}

inline std::int64_t floor_mod(std::int64_t x, std::int64_t d) { return x - floor_div(x, d) * d; }

inline std::int64_t clamp64(std::int64_t v, std::int64_t lo, std::int64_t hi) {
  return std::max(lo, std::min(v, hi));
}

// Hexagonal super-faces are centred at shift + i*(3H, H) + j*(0, 2H), H = L/2.
inline Coord hex_center(const SuperTiling& t, const FaceId& f) {
  const std::int64_t h = t.edge_len / 2;
  return Coord{t.shift.a + 3 * h * f.r, t.shift.b + h * f.r + 2 * h * f.c, 0};
}

}  // namespace detail

inline int functional_count(TilingKind kind) { return kind == TilingKind::square ? 2 : 3; }

/// Values of the face-describing functionals at v.
inline std::array<std::int64_t, 3> functionals(TilingKind kind, const Coord& v) {
  switch (kind) {
    case TilingKind::square: return {v.a, v.b, 0};
    case TilingKind::triangular: return {v.a, v.b, v.a + v.b};
    case TilingKind::hexagonal: return {v.b, v.a + v.b, v.a - v.b};
  }
  return {0, 0, 0};
}

inline std::array<Extent, 3> face_extents(const SuperTiling& t, const FaceId& f) {
  const std::int64_t len = t.edge_len;
  const std::int64_t sa = t.shift.a, sb = t.shift.b;
  switch (t.kind) {
    case TilingKind::square:
      return {Extent{sa + f.r * len, sa + (f.r + 1) * len},
              Extent{sb + f.c * len, sb + (f.c + 1) * len}, Extent{0, 0}};
    case TilingKind::triangular: {
      const std::int64_t s0 = sa + sb + (f.r + f.c + f.o) * len;
      return {Extent{sa + f.r * len, sa + (f.r + 1) * len},
              Extent{sb + f.c * len, sb + (f.c + 1) * len}, Extent{s0, s0 + len}};
    }
    case TilingKind::hexagonal: {
      const Coord c = detail::hex_center(t, f);
      const std::int64_t h = len / 2;
      return {Extent{c.b - h, c.b + h}, Extent{c.a + c.b - len, c.a + c.b + len},
              Extent{c.a - c.b - len, c.a - c.b + len}};
    }
  }
  return {};
}

inline bool face_contains(const SuperTiling& t, const FaceId& f, const Coord& v) {
  if (t.kind == TilingKind::triangular) {
    const std::int64_t u = v.a - t.shift.a - f.r * t.edge_len;
    const std::int64_t w = v.b - t.shift.b - f.c * t.edge_len;
    if (f.o == 0) return u >= 0 && w >= 0 && u + w <= t.edge_len;
    return u <= t.edge_len && w <= t.edge_len && u + w >= t.edge_len;
  }
  const auto ext = face_extents(t, f);
  const auto val = functionals(t.kind, v);
  for (int k = 0; k < functional_count(t.kind); ++k)
    if (val[k] < ext[k].lo || val[k] > ext[k].hi) return false;
  return true;
}

/// Faces whose closure contains v, sorted ascending.
inline std::vector<FaceId> faces_containing(const SuperTiling& t, const Coord& v) {
  std::vector<FaceId> out;
  const std::int64_t len = t.edge_len;
  const std::int64_t u = v.a - t.shift.a;
  const std::int64_t w = v.b - t.shift.b;
  switch (t.kind) {
    case TilingKind::square:
    case TilingKind::triangular: {
      const std::int64_t r0 = detail::floor_div(u, len);
      const std::int64_t c0 = detail::floor_div(w, len);
      for (std::int64_t r = r0 - 1; r <= r0; ++r)
        for (std::int64_t c = c0 - 1; c <= c0; ++c)
          for (int o = 0; o < (t.kind == TilingKind::triangular ? 2 : 1); ++o) {
            const FaceId f{r, c, o};
            if (face_contains(t, f, v)) out.push_back(f);
          }
      break;
    }
    case TilingKind::hexagonal: {
      const std::int64_t h = len / 2;
      const std::int64_t i0 = detail::floor_div(u, 3 * h);
      for (std::int64_t i = i0 - 1; i <= i0 + 1; ++i) {
        const std::int64_t j0 = detail::floor_div(w - h * i, 2 * h);
        for (std::int64_t j = j0 - 1; j <= j0 + 1; ++j) {
          const FaceId f{i, j, 0};
          if (face_contains(t, f, v)) out.push_back(f);
        }
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_boundary_vertex(const SuperTiling& t, const Coord& v) {
  const std::int64_t len = t.edge_len;
  const std::int64_t u = v.a - t.shift.a;
  const std::int64_t w = v.b - t.shift.b;
  switch (t.kind) {
    case TilingKind::square:
      return detail::floor_mod(u, len) == 0 || detail::floor_mod(w, len) == 0;
    case TilingKind::triangular:
      return detail::floor_mod(u, len) == 0 || detail::floor_mod(w, len) == 0 ||
             detail::floor_mod(u + w, len) == 0;
    case TilingKind::hexagonal:
      return faces_containing(t, v).size() >= 2;
  }
  return false;
}

/// Lattice bounding box of a face closure.
inline LatticeWindow face_window(const SuperTiling& t, const FaceId& f) {
  const auto ext = face_extents(t, f);
  switch (t.kind) {
    case TilingKind::square:
    case TilingKind::triangular:
      return {ext[0].lo, ext[0].hi, ext[1].lo, ext[1].hi};
    case TilingKind::hexagonal: {
      const Coord c = detail::hex_center(t, f);
      return {c.a - t.edge_len, c.a + t.edge_len, ext[0].lo, ext[0].hi};
    }
  }
  return {0, -1, 0, -1};
}

/// True iff one face meets an open slab of the other.
inline bool aligned(const FaceId& f, const FaceId& g, const SuperTiling& t) {
  if (f == g) return true;
  const auto ef = face_extents(t, f);
  const auto eg = face_extents(t, g);
  for (int k = 0; k < functional_count(t.kind); ++k)
    if (std::max(ef[k].lo, eg[k].lo) < std::min(ef[k].hi, eg[k].hi)) return true;
  return false;
}

/// Vertex v such that dist(p, q) = dist(p, v) + dist(v, q) for all p in the
/// closure of f and q in the closure of g; nullopt if f and g are aligned or
/// the apex is not a lattice point.
inline std::optional<Coord> try_separating_vertex(const FaceId& f, const FaceId& g,
                                                  const SuperTiling& t) {
  if (aligned(f, g, t)) return std::nullopt;
  const auto ef = face_extents(t, f);
  const auto eg = face_extents(t, g);
  // gap between the two ranges per functional, with the end touching f first
  std::array<std::int64_t, 3> near{}, far{}, lo{}, hi{};
  std::array<int, 3> dir{};
  for (int k = 0; k < functional_count(t.kind); ++k) {
    if (ef[k].hi <= eg[k].lo) {
      dir[k] = +1; near[k] = ef[k].hi; far[k] = eg[k].lo;
    } else {
      dir[k] = -1; near[k] = ef[k].lo; far[k] = eg[k].hi;
    }
    lo[k] = std::min(near[k], far[k]);
    hi[k] = std::max(near[k], far[k]);
  }
  const TilingKind kind = t.kind;
  switch (kind) {
    case TilingKind::square:
      return make_coord(kind, near[0], near[1]);
    case TilingKind::triangular: {
      const std::int64_t s_lo = std::max(lo[0] + lo[1], lo[2]);
      const std::int64_t s_hi = std::min(hi[0] + hi[1], hi[2]);
      if (s_lo > s_hi) return std::nullopt;
      const std::int64_t s = detail::clamp64(near[0] + near[1], s_lo, s_hi);
      const std::int64_t a = detail::clamp64(near[0], std::max(lo[0], s - hi[1]),
                                             std::min(hi[0], s - lo[1]));
      return make_coord(kind, a, s - a);
    }
    case TilingKind::hexagonal: {
      // functionals: 0 = b, 1 = u = a + b, 2 = w = a - b
      if (dir[1] == dir[2]) {
        // flat cone: Manhattan regime, b and one diagonal are between
        const std::int64_t b = near[0];
        if (dir[0] == dir[1]) return make_coord(kind, near[2] + b, b);
        return make_coord(kind, near[1] - b, b);
      }
      // steep cone: both diagonals between, u and w of equal parity
      std::int64_t u = near[1], w = near[2];
      if (((u - w) % 2 + 2) % 2 != 0) {
        if (u + dir[1] >= lo[1] && u + dir[1] <= hi[1]) u += dir[1];
        else if (w + dir[2] >= lo[2] && w + dir[2] <= hi[2]) w += dir[2];
        else return std::nullopt;
      }
      return make_coord(kind, (u + w) / 2, (u - w) / 2);
    }
  }
  return std::nullopt;
}

inline Coord separating_vertex(const FaceId& f, const FaceId& g, const SuperTiling& t) {
  if (aligned(f, g, t)) throw std::invalid_argument("faces are aligned");
  auto v = try_separating_vertex(f, g, t);
  if (!v) throw std::logic_error("no lattice apex between faces");
  return *v;
}

/// Breakpoint indices (0-based): boundary vertices plus both ends.
inline std::vector<std::size_t> breakpoints(const TilingPath& path, const SuperTiling& t) {
  std::vector<std::size_t> out;
  const std::size_t n = path.size();
  for (std::size_t i = 0; i < n; ++i)
    if (i == 0 || i + 1 == n || is_boundary_vertex(t, path[i])) out.push_back(i);
  return out;
}

inline std::vector<InducedSubpath> induced_subpaths(const TilingPath& path, const SuperTiling& t) {
  std::vector<InducedSubpath> out;
  if (path.size() == 0) return out;
  const auto bp = breakpoints(path, t);
  auto assign = [&](std::size_t lo, std::size_t hi) {
    std::vector<FaceId> cand;
    if (hi > lo + 1) {
      cand = faces_containing(t, path[lo + 1]);
    } else {
      cand = faces_containing(t, path[lo]);
      const auto other = faces_containing(t, path[hi]);
      std::erase_if(cand, [&](const FaceId& f) {
        return std::find(other.begin(), other.end(), f) == other.end();
      });
    }
    if (cand.empty()) throw std::logic_error("induced subpath leaves every face");
    return InducedSubpath{lo, hi, cand.front()};
  };
  if (bp.size() == 1) {
    out.push_back(assign(0, 0));
    return out;
  }
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) out.push_back(assign(bp[k], bp[k + 1]));
  return out;
}

/// i-th member of the shift family used by choose_supertiling.
inline SuperTiling shifted_supertiling(TilingKind kind, std::int64_t edge_len, std::int64_t i) {
  switch (kind) {
    case TilingKind::square: return {kind, edge_len, make_coord(kind, i, i)};
    // (0, i*sqrt(3)) in the plane is two rows up, one column back
    case TilingKind::triangular: return {kind, edge_len, make_coord(kind, -i, 2 * i)};
    case TilingKind::hexagonal: return {kind, edge_len, make_coord(kind, 3 * i, i)};
  }
  return {};
}

/// Edge length Theta(sqrt(n + m)) compatible with the super-tiling lattice.
inline std::int64_t supertiling_edge_len(TilingKind kind, std::size_t total) {
  auto len = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(total))));
  len = std::max<std::int64_t>(len, 4);
  if (kind == TilingKind::hexagonal && len % 2 != 0) ++len;
  return len;
}

inline std::size_t boundary_vertex_count(const TilingPath& p, const TilingPath& q,
                                         const SuperTiling& t) {
  std::size_t count = 0;
  for (const auto& v : p.vertices) count += is_boundary_vertex(t, v);
  for (const auto& v : q.vertices) count += is_boundary_vertex(t, v);
  return count;
}

/// Picks, among ceil(sqrt(n + m)) shifted candidates, one with the fewest
/// boundary vertices of P and Q.
inline SuperTiling choose_supertiling(const TilingPath& p, const TilingPath& q) {
  if (p.kind != q.kind) throw std::invalid_argument("kind mismatch");
  const std::size_t total = p.size() + q.size();
  const std::int64_t len = supertiling_edge_len(p.kind, total);
  const auto family = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(total))));
  SuperTiling best = shifted_supertiling(p.kind, len, 0);
  std::size_t best_count = boundary_vertex_count(p, q, best);
  for (std::int64_t i = 1; i < family; ++i) {
    const SuperTiling cand = shifted_supertiling(p.kind, len, i);
    const std::size_t count = boundary_vertex_count(p, q, cand);
    if (count < best_count) {
      best = cand;
      best_count = count;
    }
  }
  return best;
}

}  // namespace tilefrechet
