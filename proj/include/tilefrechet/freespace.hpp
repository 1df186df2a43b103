#pragma once

// Free-space reachability: the quadratic DP oracle, block kernels and the
// block-by-block wave-front sweep.
//
// Matrix convention: cell (i, j) pairs p_i with q_j; i indexes columns, j rows.
// reach(i, j) = free(i, j) && (reach(i-1, j) || reach(i, j-1) || reach(i-1, j-1)),
// with reach(0, 0) = free(0, 0).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tilefrechet {

template <class Dist, class RangeP, class RangeQ, class T>
bool baseline_decide(Dist&& dist, const RangeP& p, const RangeQ& q, T delta) {
  const std::size_t n = std::size(p), m = std::size(q);
  if (n == 0 || m == 0) throw std::invalid_argument("empty sequence");
  std::vector<std::uint8_t> prev(m), cur(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      bool r;
      if (i == 0 && j == 0) r = true;
      else if (i == 0) r = cur[j - 1];
      else if (j == 0) r = prev[0];
      else r = cur[j - 1] || prev[j] || prev[j - 1];
      cur[j] = r && dist(p[i], q[j]) <= delta;
    }
    std::swap(prev, cur);
  }
  return prev[m - 1] != 0;
}

template <class Dist, class RangeP, class RangeQ>
auto baseline_frechet(Dist&& dist, const RangeP& p, const RangeQ& q) {
  const std::size_t n = std::size(p), m = std::size(q);
  if (n == 0 || m == 0) throw std::invalid_argument("empty sequence");
  using T = std::decay_t<decltype(dist(p[0], q[0]))>;
  std::vector<T> prev(m), cur(m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const T d = dist(p[i], q[j]);
      if (i == 0 && j == 0) cur[j] = d;
      else if (i == 0) cur[j] = std::max(d, cur[j - 1]);
      else if (j == 0) cur[j] = std::max(d, prev[0]);
      else cur[j] = std::max(d, std::min({cur[j - 1], prev[j], prev[j - 1]}));
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

/// Reachability of one horizontal and one vertical block facet.
/// Entry: row = bottom row, col = left column. Exit: row = top, col = right.
/// The shared corner appears in both sequences with equal value.
struct FacetReach {
  std::vector<std::uint8_t> row;
  std::vector<std::uint8_t> col;
};

struct RowInterval {
  std::int32_t lo;
  std::int32_t hi;  // inclusive

  friend constexpr bool operator==(const RowInterval&, const RowInterval&) = default;
};

/// Maximal free row intervals per block column, stored flat.
class ColumnRuns {
 public:
  ColumnRuns() = default;
  ColumnRuns(std::size_t width, std::size_t height) : height_(height) {
    start_.reserve(width + 1);
    start_.push_back(0);
  }

  /// Appends one column; runs must be sorted, disjoint and non-adjacent.
  void push_column(std::span<const RowInterval> runs) {
    runs_.insert(runs_.end(), runs.begin(), runs.end());
    start_.push_back(static_cast<std::uint32_t>(runs_.size()));
  }
  void add_run(std::int32_t lo, std::int32_t hi) { runs_.push_back({lo, hi}); }
  void end_column() { start_.push_back(static_cast<std::uint32_t>(runs_.size())); }

  template <class Free>
  static ColumnRuns from_predicate(std::size_t width, std::size_t height, Free&& free) {
    ColumnRuns out(width, height);
    for (std::size_t x = 0; x < width; ++x) {
      std::size_t y = 0;
      while (y < height) {
        if (!free(x, y)) {
          ++y;
          continue;
        }
        const std::size_t lo = y;
        while (y < height && free(x, y)) ++y;
        out.add_run(static_cast<std::int32_t>(lo), static_cast<std::int32_t>(y - 1));
      }
      out.end_column();
    }
    return out;
  }

  std::size_t width() const { return start_.empty() ? 0 : start_.size() - 1; }
  std::size_t height() const { return height_; }
  std::span<const RowInterval> column(std::size_t x) const {
    return {runs_.data() + start_[x], runs_.data() + start_[x + 1]};
  }
  std::size_t run_count() const { return runs_.size(); }

 private:
  std::size_t height_ = 0;
  std::vector<std::uint32_t> start_;
  std::vector<RowInterval> runs_;
};

struct KernelStats {
  std::uint64_t ops = 0;
};

namespace detail {

inline void intervals_from_bits(std::span<const std::uint8_t> bits, std::vector<RowInterval>& out) {
  out.clear();
  const auto h = static_cast<std::int32_t>(bits.size());
  for (std::int32_t y = 0; y < h;) {
    if (!bits[y]) {
      ++y;
      continue;
    }
    const std::int32_t lo = y;
    while (y < h && bits[y]) ++y;
    out.push_back({lo, y - 1});
  }
}

inline void bits_from_intervals(std::span<const RowInterval> iv, std::vector<std::uint8_t>& out) {
  std::fill(out.begin(), out.end(), 0);
  for (const auto& r : iv) std::fill(out.begin() + r.lo, out.begin() + r.hi + 1, 1);
}

inline bool all_false(const FacetReach& e) {
  return std::none_of(e.row.begin(), e.row.end(), [](auto v) { return v; }) &&
         std::none_of(e.col.begin(), e.col.end(), [](auto v) { return v; });
}

// Blocks one cell thick: the exit facets are read off the entry.
inline FacetReach degenerate_exit(const FacetReach& entry) {
  const std::size_t w = entry.row.size(), h = entry.col.size();
  FacetReach out{entry.row, entry.col};
  if (h == 1) out.col.assign(1, entry.row[w - 1]);
  if (w == 1) out.row.assign(1, entry.col[h - 1]);
  return out;
}

inline FacetReach blocked_exit(const FacetReach& entry) {
  const std::size_t w = entry.row.size(), h = entry.col.size();
  FacetReach out{std::vector<std::uint8_t>(w, 0), std::vector<std::uint8_t>(h, 0)};
  if (h == 1) out.row = entry.row;
  if (w == 1) out.col = entry.col;
  out.row[0] = entry.col[h - 1];
  out.col[0] = entry.row[w - 1];
  return out;
}

// Every interior cell is free: a cell is reachable iff some reachable entry
// cell lies weakly below-left of it.
inline FacetReach free_exit(const FacetReach& entry) {
  const std::size_t w = entry.row.size(), h = entry.col.size();
  FacetReach out{entry.row, entry.col};
  const bool any_left = std::any_of(entry.col.begin(), entry.col.end(), [](auto v) { return v; });
  const bool any_bottom = std::any_of(entry.row.begin(), entry.row.end(), [](auto v) { return v; });
  if (h > 1) {
    bool acc = any_left;
    out.row[0] = entry.col[h - 1];
    for (std::size_t x = 1; x < w; ++x) out.row[x] = (acc = acc || entry.row[x]);
  }
  if (w > 1) {
    bool acc = any_bottom;
    out.col[0] = entry.row[w - 1];
    for (std::size_t y = 1; y < h; ++y) out.col[y] = (acc = acc || entry.col[y]);
    if (h > 1) out.row[w - 1] = out.col[h - 1];
  }
  return out;
}

// One column step of the interval sweep. prev: reachable intervals of column
// x-1; src answers first-free-row and end-of-run queries on column x.
// Writes the reachable intervals of column x into cur.
template <class RunSource>
void sweep_column(const std::vector<RowInterval>& prev, bool bottom_reach, RunSource&& src,
                  std::vector<RowInterval>& cur, KernelStats* stats) {
  cur.clear();
  std::size_t pi = 0;
  std::int32_t cursor = 0;  // rows below cursor are settled
  // row 0 comes from the entry facet, not from the recurrence
  if (bottom_reach) {
    const std::int32_t end = src.run_end_from(0);
    cur.push_back({0, end});
    cursor = end + 1;
  } else {
    cursor = 1;
  }
  while (pi < prev.size()) {
    if (stats) ++stats->ops;
    // rows receiving a horizontal or diagonal predecessor: [lo, hi + 1]
    const std::int32_t lo = std::max(prev[pi].lo, cursor);
    const std::int32_t hi = prev[pi].hi + 1;
    if (lo > hi) {
      ++pi;
      continue;
    }
    const std::int32_t y = src.first_free_from(lo);
    if (y < 0) break;
    if (y > hi) {
      ++pi;
      continue;
    }
    const std::int32_t end = src.run_end_from(y);
    cur.push_back({y, end});
    cursor = end + 1;
  }
}

template <class T>
class ThresholdIndex {
 public:
  explicit ThresholdIndex(std::span<const T> b) : n_(b.size()) {
    size_ = 1;
    while (size_ < n_) size_ *= 2;
    mn_.assign(2 * size_, std::numeric_limits<T>::max());
    mx_.assign(2 * size_, std::numeric_limits<T>::lowest());
    for (std::size_t i = 0; i < n_; ++i) mn_[size_ + i] = mx_[size_ + i] = b[i];
    for (std::size_t i = size_ - 1; i >= 1; --i) {
      mn_[i] = std::min(mn_[2 * i], mn_[2 * i + 1]);
      mx_[i] = std::max(mx_[2 * i], mx_[2 * i + 1]);
    }
  }

  /// First index >= from with value <= c, or -1.
  std::int32_t next_le(std::size_t from, T c) const {
    return find(1, 0, size_, from, [&](std::size_t node) { return mn_[node] <= c; });
  }
  /// First index >= from with value > c, or -1.
  std::int32_t next_gt(std::size_t from, T c) const {
    return find(1, 0, size_, from, [&](std::size_t node) { return mx_[node] > c; });
  }

 private:
  template <class Pred>
  std::int32_t find(std::size_t node, std::size_t lo, std::size_t hi, std::size_t from,
                    const Pred& pred) const {
    if (hi <= from || lo >= n_ || !pred(node)) return -1;
    if (hi - lo == 1) return static_cast<std::int32_t>(lo);
    const std::size_t mid = (lo + hi) / 2;
    const std::int32_t r = find(2 * node, lo, mid, from, pred);
    if (r >= 0) return r;
    return find(2 * node + 1, mid, hi, from, pred);
  }

  std::size_t n_, size_;
  std::vector<T> mn_, mx_;
};

}  // namespace detail

/// Exit facets of a block whose free cells are given as column runs.
/// Cost O(width + height + number of runs).
inline FacetReach propagate_runs_block(const ColumnRuns& runs, const FacetReach& entry,
                                       KernelStats* stats = nullptr) {
  const std::size_t w = entry.row.size(), h = entry.col.size();
  if (runs.width() != w || runs.height() != h) throw std::invalid_argument("runs shape mismatch");
  if (w == 1 || h == 1) return detail::degenerate_exit(entry);
  if (detail::all_false(entry)) return detail::blocked_exit(entry);
  FacetReach out{std::vector<std::uint8_t>(w), std::vector<std::uint8_t>(h)};
  std::vector<RowInterval> prev, cur;
  detail::intervals_from_bits(entry.col, prev);
  if (stats) stats->ops += w + h;
  out.row[0] = entry.col[h - 1];

  struct Source {
    std::span<const RowInterval> col;
    std::size_t k = 0;
    KernelStats* stats;
    std::int32_t first_free_from(std::int32_t y) {
      while (k < col.size() && col[k].hi < y) {
        ++k;
        if (stats) ++stats->ops;
      }
      if (k == col.size()) return -1;
      return std::max(col[k].lo, y);
    }
    std::int32_t run_end_from(std::int32_t y) {
      first_free_from(y);
      return col[k].hi;
    }
  };

  for (std::size_t x = 1; x < w; ++x) {
    Source src{runs.column(x), 0, stats};
    const bool bottom = entry.row[x] != 0;
    if (bottom && (src.col.empty() || src.col[0].lo != 0))
      throw std::invalid_argument("entry marks a blocked cell reachable");
    detail::sweep_column(prev, bottom, src, cur, stats);
    std::swap(prev, cur);
    out.row[x] = !prev.empty() && prev.back().hi == static_cast<std::int32_t>(h) - 1;
  }
  detail::bits_from_intervals(prev, out.col);
  out.col[0] = entry.row[w - 1];
  return out;
}

/// Exit facets of a block where cell (x, y) is free iff a[x] + b[y] <= delta.
template <class T>
FacetReach propagate_separated_block(std::span<const T> a, std::span<const T> b, T delta,
                                     const FacetReach& entry, KernelStats* stats = nullptr) {
  const std::size_t w = a.size(), h = b.size();
  if (entry.row.size() != w || entry.col.size() != h)
    throw std::invalid_argument("entry shape mismatch");
  if (w == 1 || h == 1) return detail::degenerate_exit(entry);
  if (detail::all_false(entry)) return detail::blocked_exit(entry);
  const auto [amin, amax] = std::minmax_element(a.begin(), a.end());
  const auto [bmin, bmax] = std::minmax_element(b.begin(), b.end());
  if (*amax + *bmax <= delta) return detail::free_exit(entry);
  if (*amin + *bmin > delta) return detail::blocked_exit(entry);

  FacetReach out{std::vector<std::uint8_t>(w), std::vector<std::uint8_t>(h)};
  const detail::ThresholdIndex<T> index(b);
  struct Source {
    const detail::ThresholdIndex<T>* index;
    T c;
    std::int32_t h;
    std::int32_t first_free_from(std::int32_t y) const {
      if (y >= h) return -1;
      return index->next_le(static_cast<std::size_t>(y), c);
    }
    std::int32_t run_end_from(std::int32_t y) const {
      const std::int32_t g = index->next_gt(static_cast<std::size_t>(y), c);
      return g < 0 ? h - 1 : g - 1;
    }
  };

  std::vector<RowInterval> prev, cur;
  detail::intervals_from_bits(entry.col, prev);
  out.row[0] = entry.col[h - 1];
  for (std::size_t x = 1; x < w; ++x) {
    if (prev.empty() && !entry.row[x]) {
      out.row[x] = 0;
      continue;
    }
    const Source src{&index, delta - a[x], static_cast<std::int32_t>(h)};
    detail::sweep_column(prev, entry.row[x] != 0, src, cur, stats);
    std::swap(prev, cur);
    out.row[x] = !prev.empty() && prev.back().hi == static_cast<std::int32_t>(h) - 1;
  }
  detail::bits_from_intervals(prev, out.col);
  out.col[0] = entry.row[w - 1];
  return out;
}

/// Entry facets of a block from the reachability of the cells just outside it.
/// below[x + 1] = reach(x0 + x, y0 - 1) and left[y + 1] = reach(x0 - 1, y0 + y)
/// for x, y >= -1 (index 0 in both holds the shared diagonal corner).
/// free(x, y) tests a block cell in local coordinates.
template <class Free>
FacetReach bridge_gap(std::span<const std::uint8_t> below, std::span<const std::uint8_t> left,
                      Free&& free) {
  if (below.empty() || left.empty() || below[0] != left[0])
    throw std::invalid_argument("seam corner mismatch");
  const std::size_t w = below.size() - 1, h = left.size() - 1;
  FacetReach out{std::vector<std::uint8_t>(w), std::vector<std::uint8_t>(h)};
  const bool corner = free(std::size_t{0}, std::size_t{0}) && (below[0] || below[1] || left[1]);
  out.row[0] = out.col[0] = corner;
  for (std::size_t x = 1; x < w; ++x)
    out.row[x] = (out.row[x - 1] || below[x + 1] || below[x]) && free(x, std::size_t{0});
  for (std::size_t y = 1; y < h; ++y)
    out.col[y] = (out.col[y - 1] || left[y + 1] || left[y]) && free(std::size_t{0}, y);
  return out;
}

/// Inclusive index range [lo, hi] of one subsequence.
struct IndexRange {
  std::size_t lo, hi;
  std::size_t size() const { return hi - lo + 1; }
};

struct CellIndex {
  std::size_t i, j;
  friend constexpr bool operator==(const CellIndex&, const CellIndex&) = default;
  friend constexpr auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

/// Column runs of the block cols x rows from candidate cells.
/// `cells` must be sorted, and hold every free cell with a blocked vertical
/// neighbour inside the block, plus the free cells of the first and last
/// rows; other cells may appear too. On return it holds only the switching
/// cells (free, with a blocked vertical neighbour inside the block).
template <class Free>
ColumnRuns runs_from_candidates(IndexRange cols, IndexRange rows, std::vector<CellIndex>& cells,
                                Free&& free) {
  ColumnRuns runs(cols.size(), rows.size());
  std::size_t kept = 0, c = 0;
  for (std::size_t i = cols.lo; i <= cols.hi; ++i) {
    std::int32_t open = -1;
    for (; c < cells.size() && cells[c].i == i; ++c) {
      const std::size_t j = cells[c].j;
      if (!free(i, j)) continue;
      const bool below_blocked = j != rows.lo && !free(i, j - 1);
      const bool above_blocked = j != rows.hi && !free(i, j + 1);
      const bool start = j == rows.lo || below_blocked;
      const bool end = j == rows.hi || above_blocked;
      if (!start && !end) continue;
      // block edges end runs too, but are not switching cells themselves
      if (below_blocked || above_blocked) cells[kept++] = cells[c];
      const auto y = static_cast<std::int32_t>(j - rows.lo);
      if (start) open = y;
      if (end) {
        runs.add_run(open, y);
        open = -1;
      }
    }
    runs.end_column();
  }
  cells.resize(kept);
  return runs;
}

/// Block-by-block wave-front over the free-space matrix.
///
/// Overlapping mode: consecutive ranges share one index (the subpaths of a
/// tiling path meet in a breakpoint), so each block's entry facets are
/// literally the previous blocks' exit facets.
/// Disjoint mode: ranges partition the indices; bridge_gap fills each block's
/// entry facets from the cells just outside.
///
/// kernel(k, l, entry) returns the exit facets of block (k, l); free(i, j)
/// is used on the matrix's first row/column and on seams.
/// Blocks are processed row by row, so each runs after its left and bottom
/// neighbours.
template <class Free, class Kernel>
bool sweep_blocks(std::span<const IndexRange> pr, std::span<const IndexRange> qr, bool overlapping,
                  Free&& free, Kernel&& kernel) {
  if (pr.empty() || qr.empty()) throw std::invalid_argument("empty block grid");
  const std::size_t n = pr.back().hi + 1, m = qr.back().hi + 1;

  if (overlapping) {
    std::vector<std::uint8_t> row_front(n), col_front(m);
    row_front[0] = free(std::size_t{0}, std::size_t{0});
    for (std::size_t i = 1; i < n; ++i) row_front[i] = row_front[i - 1] && free(i, std::size_t{0});
    FacetReach entry;
    for (const IndexRange& band : qr) {
      col_front[band.lo] = row_front[0];
      for (std::size_t j = band.lo + 1; j <= band.hi; ++j)
        col_front[j] = col_front[j - 1] && free(std::size_t{0}, j);
      for (std::size_t k = 0; k < pr.size(); ++k) {
        const IndexRange& cols = pr[k];
        entry.row.assign(row_front.begin() + cols.lo, row_front.begin() + cols.hi + 1);
        entry.col.assign(col_front.begin() + band.lo, col_front.begin() + band.hi + 1);
        entry.row[0] = entry.col[0];
        const std::size_t l = static_cast<std::size_t>(&band - qr.data());
        FacetReach exit = kernel(k, l, entry);
        std::copy(exit.row.begin(), exit.row.end(), row_front.begin() + cols.lo);
        std::copy(exit.col.begin(), exit.col.end(), col_front.begin() + band.lo);
      }
    }
    return row_front[n - 1] != 0;
  }

  // reach of the row just below the current band (virtual row -1 is false)
  std::vector<std::uint8_t> row_front(n, 0), col_front(m, 0);
  std::vector<std::uint8_t> below, left;
  bool diag_next_band = true;  // reach(-1, -1): the walk starts at (0, 0)
  for (std::size_t l = 0; l < qr.size(); ++l) {
    const IndexRange& band = qr[l];
    std::fill(col_front.begin() + band.lo, col_front.begin() + band.hi + 1, 0);
    bool diag = diag_next_band;  // reach(lo_k - 1, band.lo - 1)
    diag_next_band = false;
    for (std::size_t k = 0; k < pr.size(); ++k) {
      const IndexRange& cols = pr[k];
      below.assign(1, diag);
      below.insert(below.end(), row_front.begin() + cols.lo, row_front.begin() + cols.hi + 1);
      left.assign(1, diag);
      left.insert(left.end(), col_front.begin() + band.lo, col_front.begin() + band.hi + 1);
      FacetReach entry = bridge_gap(
          std::span<const std::uint8_t>(below), std::span<const std::uint8_t>(left),
          [&](std::size_t x, std::size_t y) { return free(cols.lo + x, band.lo + y); });
      FacetReach exit = kernel(k, l, entry);
      diag = row_front[cols.hi];
      std::copy(exit.row.begin(), exit.row.end(), row_front.begin() + cols.lo);
      std::copy(exit.col.begin(), exit.col.end(), col_front.begin() + band.lo);
    }
  }
  return row_front[n - 1] != 0;
}

/// Same sweep with P-ranges in the outer loop: all blocks of one P-subpath
/// are processed consecutively, bottom to top. Runs the row sweep on the
/// transposed matrix, which has the same recurrence.
template <class Free, class Kernel>
bool sweep_blocks_by_column(std::span<const IndexRange> pr, std::span<const IndexRange> qr,
                            bool overlapping, Free&& free, Kernel&& kernel) {
  auto free_t = [&](std::size_t j, std::size_t i) { return free(i, j); };
  auto kernel_t = [&](std::size_t l, std::size_t k, FacetReach& entry_t) {
    std::swap(entry_t.row, entry_t.col);
    FacetReach exit = kernel(k, l, entry_t);
    std::swap(exit.row, exit.col);
    return exit;
  };
  return sweep_blocks(qr, pr, overlapping, free_t, kernel_t);
}

}  // namespace tilefrechet
