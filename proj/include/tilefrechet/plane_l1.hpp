#pragma once

// Discrete Fréchet distance of plane curves under L1: exact decider on a
// shifted square tiling and exact value by selection in a Cartesian sum.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "tilefrechet/freespace.hpp"
#include "tilefrechet/plane.hpp"
#include "tilefrechet/plane_sweep.hpp"

namespace tilefrechet {

/// Corner c of square f with L1(p, q) = L1(p, c) + L1(c, q) for all p in f
/// and q in g: it lies between them in both coordinates.
inline Point2 corner_separation(const FaceId& f, const FaceId& g, const PlaneTiling& t) {
  if (plane_aligned(f, g)) throw std::invalid_argument("aligned");
  return {g.c < f.c ? t.lo_x(f) : t.hi_x(f), g.r < f.r ? t.lo_y(f) : t.hi_y(f)};
}

namespace detail {

inline PlaneInstance l1_instance(const PlaneCurve& p, const PlaneCurve& q, const PlaneTiling& t,
                                 double eps, SwitchingScan scan = SwitchingScan::adaptive) {
  return PlaneInstance(p, q, t, eps, LcMetric{1.0}, [&](const FaceId& f, const FaceId& g) {
    FacePairPlan plan;
    if (!plane_aligned(f, g)) {
      plan.mode = FacePairMode::separated;
      plan.corner = corner_separation(f, g, t);
    }
    return plan;
  }, scan);
}

}  // namespace detail

inline std::int64_t l1_tile_side(const PlaneCurve& p, const PlaneCurve& q, double eps, std::int64_t delta,
                                 double scale = 1.0) {
  return detail::plane_tile_side(p.size(), q.size(), scale * eps, delta);
}

inline PlaneReport l1_decide_report(const PlaneCurve& p, const PlaneCurve& q, double delta_value,
                                    double eps, std::int64_t delta, const PlaneOptions& opt = {}) {
  detail::check_plane_input(p, q, eps, delta);
  const auto start = std::chrono::steady_clock::now();
  PlaneReport rep;
  if (delta_value < 0) return rep;
  const std::int64_t t = l1_tile_side(p, q, eps, delta, opt.tile_scale);
  if (t < 1 || p.size() + q.size() < opt.small_cutoff) {
    rep.used_baseline = true;
    rep.answer = baseline_decide(l1_distance, p.vertices, q.vertices, delta_value);
  } else {
    const PlaneTiling tiling = choose_plane_tiling(p, q, t);
    rep = detail::l1_instance(p, q, tiling, eps, opt.scan).decide(delta_value);
  }
  rep.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// Whether the L1 discrete Fréchet distance of p and q is at most delta_value.
inline bool l1_decide(const PlaneCurve& p, const PlaneCurve& q, double delta_value, double eps,
                      std::int64_t delta, const PlaneOptions& opt = {}) {
  return l1_decide_report(p, q, delta_value, eps, delta, opt).answer;
}

struct PlaneBlockSwitching {
  std::size_t k, l;
  std::vector<CellIndex> cells;
};

/// Switching cells of every aligned block under tiling t.
inline std::vector<PlaneBlockSwitching> l1_switching_pairs(const PlaneCurve& p, const PlaneCurve& q,
                                                           double delta_value, double eps,
                                                           const PlaneTiling& t,
                                                           SwitchingScan scan = SwitchingScan::adaptive) {
  std::vector<PlaneBlockSwitching> out;
  for (auto& [kl, cells] : detail::l1_instance(p, q, t, eps, scan).all_switching(delta_value))
    out.push_back({kl.first, kl.second, std::move(cells)});
  return out;
}

struct CartesianSumSets {
  std::vector<double> X, Y;
};

/// The four signed coordinate sums per vertex; every L1 distance between a
/// vertex of p and one of q is some X[a] + Y[b].
inline CartesianSumSets l1_sum_sets(const PlaneCurve& p, const PlaneCurve& q) {
  CartesianSumSets s;
  for (const Point2& v : p.vertices)
    for (double v4 : {v.x + v.y, -v.x + v.y, v.x - v.y, -v.x - v.y}) s.X.push_back(v4);
  for (const Point2& v : q.vertices)
    for (double v4 : {-v.x - v.y, v.x - v.y, -v.x + v.y, v.x + v.y}) s.Y.push_back(v4);
  std::sort(s.X.begin(), s.X.end());
  std::sort(s.Y.begin(), s.Y.end());
  return s;
}

struct SelectOptions {
  std::uint64_t seed = 0;
  bool deterministic = false;  // weighted median of row medians instead of a random pivot
};

/// k-th smallest (1-based) element of the multiset X + Y.
inline double cartesian_select(const CartesianSumSets& s, std::uint64_t k, const SelectOptions& opt = {}) {
  const std::size_t a = s.X.size(), b = s.Y.size();
  if (k < 1 || a == 0 || b == 0 || k > static_cast<std::uint64_t>(a) * b)
    throw std::out_of_range("k out of range");
  const auto& X = s.X;
  const auto& Y = s.Y;
  // row r keeps the candidate columns [lo[r], hi[r])
  std::vector<std::size_t> lo(a, 0), hi(a, b), less(a), leq(a);
  std::mt19937_64 rng(opt.seed);
  std::vector<double> pool;
  std::vector<std::pair<double, std::uint64_t>> medians;
  while (true) {
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < a; ++r) total += hi[r] - lo[r];
    if (total <= std::max<std::uint64_t>(64, a + b)) {
      pool.clear();
      for (std::size_t r = 0; r < a; ++r)
        for (std::size_t c = lo[r]; c < hi[r]; ++c) pool.push_back(X[r] + Y[c]);
      std::nth_element(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k - 1), pool.end());
      return pool[k - 1];
    }
    double pivot = 0;
    if (opt.deterministic) {
      medians.clear();
      for (std::size_t r = 0; r < a; ++r)
        if (hi[r] > lo[r]) medians.push_back({X[r] + Y[lo[r] + (hi[r] - lo[r]) / 2], hi[r] - lo[r]});
      std::sort(medians.begin(), medians.end());
      std::uint64_t acc = 0;
      for (const auto& [v, w] : medians)
        if ((acc += w) * 2 >= total) {
          pivot = v;
          break;
        }
    } else {
      std::uint64_t u = std::uniform_int_distribution<std::uint64_t>(0, total - 1)(rng);
      for (std::size_t r = 0; r < a; ++r) {
        const std::uint64_t w = hi[r] - lo[r];
        if (u < w) {
          pivot = X[r] + Y[lo[r] + u];
          break;
        }
        u -= w;
      }
    }
    // X ascending: the first column reaching the pivot moves left as r grows
    std::uint64_t n_less = 0, n_leq = 0;
    std::size_t pl = b, pe = b;
    for (std::size_t r = 0; r < a; ++r) {
      while (pl > 0 && X[r] + Y[pl - 1] >= pivot) --pl;
      while (pe > 0 && X[r] + Y[pe - 1] > pivot) --pe;
      less[r] = std::clamp(pl, lo[r], hi[r]);
      leq[r] = std::clamp(pe, lo[r], hi[r]);
      n_less += less[r] - lo[r];
      n_leq += leq[r] - lo[r];
    }
    if (k <= n_less) {
      hi = less;
    } else if (k > n_leq) {
      k -= n_leq;
      lo = leq;
    } else {
      return pivot;
    }
  }
}

/// Exact L1 discrete Fréchet distance; delta defaults to the exact profile of q.
inline double l1_frechet(const PlaneCurve& p, const PlaneCurve& q, double eps,
                         std::optional<std::int64_t> delta = std::nullopt, const PlaneOptions& opt = {},
                         const SelectOptions& sel = {}) {
  const std::int64_t dl = delta ? *delta : std::max<std::int64_t>(1, delta_for_epsilon(q, eps));
  detail::check_plane_input(p, q, eps, dl);
  const CartesianSumSets sums = l1_sum_sets(p, q);
  const double lb = std::max(l1_distance(p[0], q[0]), l1_distance(p[p.size() - 1], q[q.size() - 1]));
  // smallest rank whose value passes the decider; ranks of values below
  // the endpoint bound are skipped
  std::uint64_t lo = 1, hi = static_cast<std::uint64_t>(sums.X.size()) * sums.Y.size();
  {
    std::uint64_t a = 1, b = hi;
    while (a < b) {
      const std::uint64_t mid = a + (b - a) / 2;
      if (cartesian_select(sums, mid, sel) < lb) a = mid + 1;
      else b = mid;
    }
    lo = a;
  }
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (l1_decide(p, q, cartesian_select(sums, mid, sel), eps, dl, opt)) hi = mid;
    else lo = mid + 1;
  }
  return cartesian_select(sums, lo, sel);
}

}  // namespace tilefrechet
