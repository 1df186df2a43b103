#pragma once

// (1+eps)-approximate discrete Fréchet distance of plane curves under any Lc
// metric, c >= 1. Far-apart face pairs are decided by their minimum distance
// alone; close ones go through switching cells and run kernels.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tilefrechet/freespace.hpp"
#include "tilefrechet/plane.hpp"
#include "tilefrechet/plane_sweep.hpp"

namespace tilefrechet {

inline double far_apart_threshold(const PlaneTiling& t, double eps, const LcMetric& metric) {
  return std::pow(2.0, 1.0 + 1.0 / metric.c) * static_cast<double>(t.t) / eps;
}

/// Squares this far apart see every vertex pair within a factor 1+eps of
/// their minimum distance.
inline bool far_apart(const FaceId& f, const FaceId& g, const PlaneTiling& t, double eps,
                      const LcMetric& metric) {
  return face_min_distance(f, g, t, metric) >= far_apart_threshold(t, eps, metric);
}

namespace detail {

inline void check_metric(const LcMetric& metric) {
  if (!(metric.c >= 1) || !std::isfinite(metric.c)) throw std::invalid_argument("metric order must be >= 1");
}

// exact: no collapsing, every block goes through the run kernel
inline PlaneInstance lc_instance(const PlaneCurve& p, const PlaneCurve& q, const PlaneTiling& t,
                                 double eps, const LcMetric& metric, bool collapse,
                                 SwitchingScan scan = SwitchingScan::adaptive) {
  return PlaneInstance(p, q, t, eps, metric, [&](const FaceId& f, const FaceId& g) {
    FacePairPlan plan;
    if (collapse && far_apart(f, g, t, eps, metric)) {
      plan.mode = FacePairMode::collapsed;
      plan.gap = face_min_distance(f, g, t, metric);
    }
    return plan;
  }, scan);
}

}  // namespace detail

inline std::int64_t lc_tile_side(const PlaneCurve& p, const PlaneCurve& q, double eps, std::int64_t delta,
                                 double scale = 1.0) {
  return detail::plane_tile_side(p.size(), q.size(), scale * eps * std::sqrt(eps), delta);
}

/// YES when the Fréchet distance is at most delta_value, NO when it exceeds
/// (1+eps) delta_value, either in between; exact for delta_value <= 1.
/// delta defaults to the grid bound on the profile of q.
inline PlaneReport large_scale_decide_report(const PlaneCurve& p, const PlaneCurve& q, double delta_value,
                                             double eps, const LcMetric& metric,
                                             std::optional<std::int64_t> delta = std::nullopt,
                                             const PlaneOptions& opt = {}) {
  detail::check_metric(metric);
  const std::int64_t dl =
      delta ? *delta : (eps > 0 ? std::max<std::int64_t>(1, delta_upper_bound(q, eps)) : 1);
  detail::check_plane_input(p, q, eps, dl);
  const auto start = std::chrono::steady_clock::now();
  PlaneReport rep;
  if (delta_value < 0) return rep;
  const std::int64_t t = lc_tile_side(p, q, eps, dl, opt.tile_scale);
  if (t < 1 || p.size() + q.size() < opt.small_cutoff) {
    rep.used_baseline = true;
    rep.answer = baseline_decide(metric, p.vertices, q.vertices, delta_value);
  } else {
    const bool collapse = opt.collapse && delta_value > 1;
    const PlaneTiling tiling = choose_plane_tiling(p, q, t);
    rep = detail::lc_instance(p, q, tiling, eps, metric, collapse, opt.scan).decide(delta_value);
  }
  rep.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

inline bool large_scale_decide(const PlaneCurve& p, const PlaneCurve& q, double delta_value, double eps,
                               const LcMetric& metric, std::optional<std::int64_t> delta = std::nullopt,
                               const PlaneOptions& opt = {}) {
  return large_scale_decide_report(p, q, delta_value, eps, metric, delta, opt).answer;
}

struct LcBlockSwitching {
  std::size_t k, l;
  std::vector<CellIndex> cells;
};

/// Switching cells of every block whose faces are not far apart.
inline std::vector<LcBlockSwitching> lc_switching_pairs(const PlaneCurve& p, const PlaneCurve& q,
                                                        double delta_value, double eps,
                                                        const PlaneTiling& t, const LcMetric& metric,
                                                        SwitchingScan scan = SwitchingScan::adaptive) {
  std::vector<LcBlockSwitching> out;
  for (auto& [kl, cells] : detail::lc_instance(p, q, t, eps, metric, true, scan).all_switching(delta_value))
    out.push_back({kl.first, kl.second, std::move(cells)});
  return out;
}

struct ApproxReport {
  double value = 0;
  double lower = 0;  // the distance is known to be at least this
  std::size_t decisions = 0;
};

/// Value v with D <= v <= (1+eps) D for the Lc discrete Fréchet distance D:
/// a search over thresholds d1 (1+eps/3)^k, each step a decision with
/// slack eps/3.
inline ApproxReport approx_frechet_lc_report(const PlaneCurve& p, const PlaneCurve& q, double eps,
                                             const LcMetric& metric,
                                             std::optional<std::int64_t> delta = std::nullopt,
                                             const PlaneOptions& opt = {}) {
  detail::check_metric(metric);
  if (!(eps > 0)) throw std::invalid_argument("invalid profile");
  const double e3 = eps / 3;
  const std::int64_t dl = delta ? *delta : std::max<std::int64_t>(1, delta_upper_bound(q, e3));
  detail::check_plane_input(p, q, eps, dl);
  ApproxReport rep;
  auto decide = [&](double x) {
    ++rep.decisions;
    return large_scale_decide(p, q, x, e3, metric, dl, opt);
  };

  double d1 = std::max(metric(p[0], q[0]), metric(p[p.size() - 1], q[q.size() - 1]));
  // largest distance between the bounding boxes bounds every coupling
  auto extent = [](const PlaneCurve& c) {
    double x0 = c[0].x, x1 = c[0].x, y0 = c[0].y, y1 = c[0].y;
    for (const Point2& v : c.vertices) {
      x0 = std::min(x0, v.x);
      x1 = std::max(x1, v.x);
      y0 = std::min(y0, v.y);
      y1 = std::max(y1, v.y);
    }
    return std::array<double, 4>{x0, x1, y0, y1};
  };
  const auto bp = extent(p), bq = extent(q);
  const double d2 = std::max(d1, metric.norm(std::max(bp[1] - bq[0], bq[1] - bp[0]),
                                             std::max(bp[3] - bq[2], bq[3] - bp[2])));
  if (d1 == 0) {
    // thresholds up to 1 are decided exactly
    if (decide(0)) return rep;
    double x = std::min(1.0, d2);
    while (x > 0 && decide(x)) x /= 2;
    d1 = x;
  }
  rep.lower = d1;
  if (d2 <= d1) {
    rep.value = d2;
    rep.lower = d2;
    return rep;
  }
  std::vector<double> ladder{d1};
  while (ladder.back() < d2) ladder.push_back(ladder.back() * (1 + e3));
  // invariant: D >= ladder[lo]; D <= (1 + e3) ladder[hi] (the top rung is at least d2 >= D)
  std::size_t lo = 0, hi = ladder.size() - 1;
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (decide(ladder[mid])) hi = mid;
    else lo = mid;
  }
  rep.lower = std::max(rep.lower, ladder[lo]);
  // the pad absorbs rounding in the rung products; (1 + e3)^2 leaves room below 1 + eps
  rep.value = std::min(d2, (1 + e3) * ladder[hi] * (1 + 1e-12));
  return rep;
}

inline double approx_frechet_lc(const PlaneCurve& p, const PlaneCurve& q, double eps, const LcMetric& metric,
                                std::optional<std::int64_t> delta = std::nullopt, const PlaneOptions& opt = {}) {
  return approx_frechet_lc_report(p, q, eps, metric, delta, opt).value;
}

}  // namespace tilefrechet
