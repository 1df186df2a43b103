#pragma once

// Block sweep over the free space of two plane curves cut by a square tiling.
// Each pair of faces is handled either by a separated kernel (through a
// corner), collapsed to one answer (far-apart faces), or by the run kernel
// fed with switching cells from a snapped-grid lookup.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "tilefrechet/freespace.hpp"
#include "tilefrechet/plane.hpp"

namespace tilefrechet {

struct PlaneReport {
  bool answer = false;
  std::size_t blocks_separated = 0;
  std::size_t blocks_collapsed = 0;
  std::size_t blocks_aligned = 0;
  std::size_t switching_cells = 0;
  std::int64_t tile = 0;
  bool used_baseline = false;
  double elapsed = 0;
};

/// How candidate switching cells are found: adaptive picks per face the
/// cheaper of the two.
enum class SwitchingScan { adaptive, grid, direct };

struct PlaneOptions {
  std::size_t small_cutoff = 0;  // n + m below this runs the quadratic DP
  SwitchingScan scan = SwitchingScan::adaptive;
  double tile_scale = 1.0;  // constant factor on the tile side
  bool collapse = true;     // treat far-apart face pairs as uniform blocks
};

namespace detail {

inline void check_plane_input(const PlaneCurve& p, const PlaneCurve& q, double eps,
                              std::int64_t delta) {
  if (p.size() == 0 || q.size() == 0) throw std::invalid_argument("empty curve");
  check_gamma(p);
  check_gamma(q);
  if (!(eps > 0) || !std::isfinite(eps) || delta < 1) throw std::invalid_argument("invalid profile");
}

// floor(scale * (n + m) / sqrt(delta n)), clamped to n + m; 0 means "too small".
inline std::int64_t plane_tile_side(std::size_t n, std::size_t m, double scale, std::int64_t delta) {
  const double total = static_cast<double>(n + m);
  const double t = std::floor(scale * total / std::sqrt(static_cast<double>(delta) * static_cast<double>(n)));
  if (!(t >= 1)) return 0;
  return static_cast<std::int64_t>(std::min(t, total));
}

enum class FacePairMode { runs, separated, collapsed };

struct FacePairPlan {
  FacePairMode mode = FacePairMode::runs;
  Point2 corner{};     // separated: the corner every shortest path may use
  double gap = 0;      // collapsed: minimum distance between the faces
};

class PlaneInstance {
 public:
  template <class Plan>
  PlaneInstance(const PlaneCurve& p, const PlaneCurve& q, const PlaneTiling& t, double eps,
                const LcMetric& metric, Plan&& plan, SwitchingScan scan = SwitchingScan::adaptive)
      : p_(p), q_(q), t_(t), metric_(metric), grid_(q, eps), scan_(scan) {
    sub_p_ = induced_subcurves(p, t);
    sub_q_ = induced_subcurves(q, t);
    for (const auto& s : sub_p_) p_ranges_.push_back({s.lo, s.hi});
    for (const auto& s : sub_q_) q_ranges_.push_back({s.lo, s.hi});
    // an edge changes Lc distance by at most its L1 length <= sqrt(2) gamma
    width_ = std::sqrt(2.0) * q.gamma * (1 + 1e-12);

    std::unordered_map<FaceId, std::size_t, FaceIdHash> pf, qf;
    auto intern = [](auto& map, auto& list, const FaceId& f) {
      auto [it, fresh] = map.emplace(f, list.size());
      if (fresh) list.push_back(f);
      return it->second;
    };
    for (const auto& s : sub_p_) p_face_of_block_.push_back(intern(pf, p_faces_, s.face));
    for (const auto& s : sub_q_) q_face_of_block_.push_back(intern(qf, q_faces_, s.face));
    q_face_blocks_.assign(q_faces_.size(), {});
    q_face_size_.assign(q_faces_.size(), 0);
    for (std::size_t l = 0; l < sub_q_.size(); ++l) {
      q_face_blocks_[q_face_of_block_[l]].push_back(l);
      q_face_size_[q_face_of_block_[l]] += sub_q_[l].size();
      Box box{q[sub_q_[l].lo].x, q[sub_q_[l].lo].x, q[sub_q_[l].lo].y, q[sub_q_[l].lo].y};
      for (std::size_t j = sub_q_[l].lo; j <= sub_q_[l].hi; ++j) box.add(q[j]);
      q_block_box_.push_back(box);
    }
    q_face_box_.resize(q_faces_.size());
    for (std::size_t g = 0; g < q_faces_.size(); ++g) {
      q_face_box_[g] = q_block_box_[q_face_blocks_[g].front()];
      for (std::size_t l : q_face_blocks_[g]) q_face_box_[g].merge(q_block_box_[l]);
    }
    plans_.assign(p_faces_.size(), std::vector<FacePairPlan>(q_faces_.size()));
    runs_faces_.assign(p_faces_.size(), {});
    for (std::size_t f = 0; f < p_faces_.size(); ++f)
      for (std::size_t g = 0; g < q_faces_.size(); ++g) {
        plans_[f][g] = plan(p_faces_[f], q_faces_[g]);
        if (plans_[f][g].mode == FacePairMode::runs) runs_faces_[f].push_back(g);
      }
  }

  double dist(std::size_t i, std::size_t j) const { return metric_(p_[i], q_[j]); }
  const std::vector<IndexRange>& p_ranges() const { return p_ranges_; }
  const std::vector<IndexRange>& q_ranges() const { return q_ranges_; }
  const FacePairPlan& plan(std::size_t k, std::size_t l) const {
    return plans_[p_face_of_block_[k]][q_face_of_block_[l]];
  }

  /// Candidate cells of column k for every run-kernel block, sorted; they
  /// include all switching cells and the free cells of first and last rows.
  void column_candidates(std::size_t k, double delta,
                         std::vector<std::vector<CellIndex>>& per_block) const {
    per_block.assign(sub_q_.size(), {});
    const IndexRange cols = p_ranges_[k];
    const double eps = grid_.eps();
    const double r_lo = delta - width_, r_hi = delta;
    for (std::size_t g : runs_faces_[p_face_of_block_[k]]) {
      const Box& fb = q_face_box_[g];
      // grid points the annulus may touch inside this face, per vertex of P
      const double rows = (fb.y1 - fb.y0) / eps + 3;
      const double annulus_cost = rows * 2 * ((width_ + 2 * eps) / eps + 3);
      for (std::size_t i = cols.lo; i <= cols.hi; ++i) {
        const Point2 v = p_[i];
        if (!fb.may_hit(v, r_lo, r_hi, metric_)) continue;
        const bool direct = scan_ == SwitchingScan::direct ||
                            (scan_ == SwitchingScan::adaptive &&
                             static_cast<double>(q_face_size_[g]) <= annulus_cost);
        if (direct) {
          for (std::size_t l : q_face_blocks_[g]) {
            if (!q_block_box_[l].may_hit(v, r_lo, r_hi, metric_)) continue;
            for (std::size_t j = q_ranges_[l].lo; j <= q_ranges_[l].hi; ++j) {
              const double d = dist(i, j);
              if (d <= r_hi && d > r_lo) per_block[l].push_back({i, j});
            }
          }
          continue;
        }
        grid_.annulus(v, r_lo - eps, r_hi + eps, metric_, fb.x0 - eps, fb.x1 + eps, fb.y0 - eps,
                      fb.y1 + eps, [&](std::int64_t gx, std::int64_t gy) {
                        for (std::size_t j : grid_.at(gx, gy)) {
                          const std::size_t l = block_of(j);
                          if (q_face_of_block_[l] != g) continue;
                          const double d = dist(i, j);
                          if (d <= r_hi && d > r_lo) per_block[l].push_back({i, j});
                        }
                      });
      }
      for (std::size_t l : q_face_blocks_[g]) {
        const IndexRange rows_l = q_ranges_[l];
        for (std::size_t i = cols.lo; i <= cols.hi; ++i) {
          if (dist(i, rows_l.lo) <= delta) per_block[l].push_back({i, rows_l.lo});
          if (rows_l.hi != rows_l.lo && dist(i, rows_l.hi) <= delta)
            per_block[l].push_back({i, rows_l.hi});
        }
      }
    }
    for (auto& cells : per_block) {
      std::sort(cells.begin(), cells.end());
      cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    }
  }

  ColumnRuns build_runs(std::size_t k, std::size_t l, double delta,
                        std::vector<CellIndex>& cells) const {
    return runs_from_candidates(p_ranges_[k], q_ranges_[l], cells,
                                [&](std::size_t i, std::size_t j) { return dist(i, j) <= delta; });
  }

  PlaneReport decide(double delta) const {
    PlaneReport rep;
    rep.tile = t_.t;
    std::vector<std::vector<CellIndex>> per_block;
    std::size_t current_k = SIZE_MAX;
    std::vector<double> a, b;
    auto free = [&](std::size_t i, std::size_t j) { return dist(i, j) <= delta; };
    auto kernel = [&](std::size_t k, std::size_t l, const FacetReach& entry) -> FacetReach {
      const IndexRange cols = p_ranges_[k], rows = q_ranges_[l];
      const FacePairPlan& pl = plan(k, l);
      switch (pl.mode) {
        case FacePairMode::collapsed:
          ++rep.blocks_collapsed;
          return pl.gap <= delta ? free_exit(entry) : blocked_exit(entry);
        case FacePairMode::separated:
          ++rep.blocks_separated;
          a.resize(cols.size());
          b.resize(rows.size());
          for (std::size_t x = 0; x < cols.size(); ++x) a[x] = metric_(p_[cols.lo + x], pl.corner);
          for (std::size_t y = 0; y < rows.size(); ++y) b[y] = metric_(pl.corner, q_[rows.lo + y]);
          return propagate_separated_block<double>(a, b, delta, entry);
        case FacePairMode::runs:
          break;
      }
      ++rep.blocks_aligned;
      if (k != current_k) {
        column_candidates(k, delta, per_block);
        current_k = k;
      }
      const ColumnRuns runs = build_runs(k, l, delta, per_block[l]);
      rep.switching_cells += per_block[l].size();
      return propagate_runs_block(runs, entry);
    };
    rep.answer = sweep_blocks_by_column(std::span<const IndexRange>(p_ranges_),
                                        std::span<const IndexRange>(q_ranges_), false, free, kernel);
    return rep;
  }

  /// Switching cells of every run-kernel block, keyed by block.
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::vector<CellIndex>>> all_switching(
      double delta) const {
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::vector<CellIndex>>> out;
    std::vector<std::vector<CellIndex>> per_block;
    for (std::size_t k = 0; k < sub_p_.size(); ++k) {
      column_candidates(k, delta, per_block);
      for (std::size_t l = 0; l < sub_q_.size(); ++l) {
        if (plan(k, l).mode != FacePairMode::runs) continue;
        build_runs(k, l, delta, per_block[l]);
        out.push_back({{k, l}, std::move(per_block[l])});
      }
    }
    return out;
  }

 private:
  struct Box {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;

    void add(Point2 p) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    void merge(const Box& o) {
      x0 = std::min(x0, o.x0);
      x1 = std::max(x1, o.x1);
      y0 = std::min(y0, o.y0);
      y1 = std::max(y1, o.y1);
    }
    // whether some point of the box lies at distance in (lo, hi] from v
    bool may_hit(Point2 v, double lo, double hi, const LcMetric& m) const {
      const double dx = std::max({0.0, x0 - v.x, v.x - x1});
      const double dy = std::max({0.0, y0 - v.y, v.y - y1});
      if (m.norm(dx, dy) > hi) return false;
      const double fx = std::max(std::abs(v.x - x0), std::abs(v.x - x1));
      const double fy = std::max(std::abs(v.y - y0), std::abs(v.y - y1));
      return m.norm(fx, fy) > lo;
    }
  };

  std::size_t block_of(std::size_t j) const {
    const auto up = std::upper_bound(q_ranges_.begin(), q_ranges_.end(), j,
                                     [](std::size_t x, const IndexRange& r) { return x < r.lo; });
    return static_cast<std::size_t>(up - q_ranges_.begin()) - 1;
  }

  const PlaneCurve& p_;
  const PlaneCurve& q_;
  PlaneTiling t_;
  LcMetric metric_;
  SnapGrid grid_;
  SwitchingScan scan_;
  double width_ = 0;
  std::vector<InducedSubpath> sub_p_, sub_q_;
  std::vector<IndexRange> p_ranges_, q_ranges_;
  std::vector<FaceId> p_faces_, q_faces_;
  std::vector<std::size_t> p_face_of_block_, q_face_of_block_;
  std::vector<std::vector<std::size_t>> q_face_blocks_;
  std::vector<std::size_t> q_face_size_;
  std::vector<Box> q_block_box_, q_face_box_;
  std::vector<std::vector<FacePairPlan>> plans_;
  std::vector<std::vector<std::size_t>> runs_faces_;
};

}  // namespace detail
}  // namespace tilefrechet
