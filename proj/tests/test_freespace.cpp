#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tilefrechet/freespace.hpp"
#include "tilefrechet/lattice.hpp"

using namespace tilefrechet;

namespace {

auto square_dist = [](const Coord& u, const Coord& v) {
  return graph_distance(TilingKind::square, u, v);
};

std::vector<std::int64_t> step_sequence(std::mt19937_64& rng, std::size_t len, std::int64_t start) {
  std::vector<std::int64_t> out{start};
  std::uniform_int_distribution<int> step(-1, 1);
  while (out.size() < len) out.push_back(std::max<std::int64_t>(0, out.back() + step(rng)));
  return out;
}

std::vector<IndexRange> random_ranges(std::mt19937_64& rng, std::size_t n, bool overlapping) {
  std::vector<IndexRange> out;
  std::uniform_int_distribution<std::size_t> len(1, 7);
  std::size_t lo = 0;
  while (true) {
    const std::size_t step = len(rng);
    const std::size_t hi = std::min(n - 1, overlapping ? lo + step : lo + step - 1);
    out.push_back({lo, hi});
    if (hi == n - 1) break;
    lo = overlapping ? hi : hi + 1;
  }
  return out;
}

}  // namespace

TEST(Baseline, HandUnrolledTwoByTwo) {
  const std::vector<Coord> p{{0, 0, 0}, {1, 0, 0}}, q{{5, 0, 0}, {6, 0, 0}};
  // d(p1,q1) = 5 blocks the start cell at delta 4; at 5 the diagonal works
  EXPECT_FALSE(baseline_decide(square_dist, p, q, 4));
  EXPECT_TRUE(baseline_decide(square_dist, p, q, 5));
  EXPECT_EQ(baseline_frechet(square_dist, p, q), 5);
}

TEST(Baseline, TrivialCases) {
  const std::vector<Coord> p{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
  EXPECT_TRUE(baseline_decide(square_dist, p, p, 0));
  EXPECT_EQ(baseline_frechet(square_dist, p, p), 0);
  const std::vector<Coord> single{{3, 0, 0}};
  EXPECT_EQ(baseline_frechet(square_dist, single, p), 3);
}

TEST(Baseline, DecideFlipsAtValue) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> c(-6, 6);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<Coord> p(1 + rng() % 9), q(1 + rng() % 9);
    for (auto& v : p) v = {c(rng), c(rng), 0};
    for (auto& v : q) v = {c(rng), c(rng), 0};
    const auto value = baseline_frechet(square_dist, p, q);
    EXPECT_TRUE(baseline_decide(square_dist, p, q, value));
    if (value > 0) EXPECT_FALSE(baseline_decide(square_dist, p, q, value - 1));
  }
}

TEST(Kernels, SeparatedMatchesBruteForce) {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t w = 1 + rng() % 100, h = 1 + rng() % 100;
    const auto a = step_sequence(rng, w, rng() % 8);
    const auto b = step_sequence(rng, h, rng() % 8);
    const std::int64_t delta = rng() % 14;
    auto free = [&](std::size_t x, std::size_t y) { return a[x] + b[y] <= delta; };
    const auto entry = oracle::random_entry(w, h, free, rng, 0.2);
    const auto got = propagate_separated_block<std::int64_t>(a, b, delta, entry);
    const auto expect = oracle::block_exit(w, h, free, entry);
    ASSERT_EQ(got.row, expect.row) << "rep " << rep;
    ASSERT_EQ(got.col, expect.col) << "rep " << rep;
  }
}

TEST(Kernels, SeparatedFastPaths) {
  const std::vector<std::int64_t> a{0, 1, 2}, b{0, 1};
  FacetReach entry{{1, 0, 0}, {1, 0}};
  auto all_free = propagate_separated_block<std::int64_t>(a, b, 3, entry);
  EXPECT_EQ(all_free.row, (std::vector<std::uint8_t>{0, 1, 1}));
  FacetReach none{{0, 0, 0}, {0, 0}};
  auto out = propagate_separated_block<std::int64_t>(a, b, 3, none);
  EXPECT_EQ(out.row, (std::vector<std::uint8_t>{0, 0, 0}));
  EXPECT_EQ(out.col, (std::vector<std::uint8_t>{0, 0}));
}

TEST(Kernels, RunsMatchesBruteForce) {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t w = 1 + rng() % 40, h = 1 + rng() % 40;
    const double p = std::uniform_real_distribution<double>(0.3, 0.95)(rng);
    std::vector<std::vector<std::uint8_t>> cells(w, std::vector<std::uint8_t>(h));
    std::bernoulli_distribution coin(p);
    for (auto& col : cells)
      for (auto& c : col) c = coin(rng);
    auto free = [&](std::size_t x, std::size_t y) { return cells[x][y] != 0; };
    const auto entry = oracle::random_entry(w, h, free, rng, 0.3);
    const auto runs = ColumnRuns::from_predicate(w, h, free);
    const auto got = propagate_runs_block(runs, entry);
    const auto expect = oracle::block_exit(w, h, free, entry);
    ASSERT_EQ(got.row, expect.row) << "rep " << rep;
    ASSERT_EQ(got.col, expect.col) << "rep " << rep;
  }
}

TEST(Kernels, RunsTrivialCases) {
  const std::size_t w = 5, h = 4;
  auto all = [](std::size_t, std::size_t) { return true; };
  FacetReach entry{{1, 1, 1, 1, 1}, {1, 1, 1, 1}};
  const auto out = propagate_runs_block(ColumnRuns::from_predicate(w, h, all), entry);
  EXPECT_EQ(out.row, std::vector<std::uint8_t>(w, 1));
  auto none = [](std::size_t, std::size_t) { return false; };
  FacetReach dead{std::vector<std::uint8_t>(w), std::vector<std::uint8_t>(h)};
  const auto out2 = propagate_runs_block(ColumnRuns::from_predicate(w, h, none), dead);
  EXPECT_EQ(out2.row, std::vector<std::uint8_t>(w, 0));
}

TEST(Kernels, RunsCostIsLinearInPerimeterPlusRuns) {
  // alternating single-cell runs maximise the endpoint count
  std::mt19937_64 rng(3);
  for (std::size_t size : {16u, 64u, 256u}) {
    auto free = [](std::size_t x, std::size_t y) { return (x + y) % 2 == 0 || y % 3 == 0; };
    const auto runs = ColumnRuns::from_predicate(size, size, free);
    const auto entry = oracle::random_entry(size, size, free, rng, 0.5);
    KernelStats stats;
    propagate_runs_block(runs, entry, &stats);
    EXPECT_LE(stats.ops, 4 * (2 * size + runs.run_count()));
  }
}

TEST(Kernels, Monotonicity) {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t w = 2 + rng() % 20, h = 2 + rng() % 20;
    std::vector<std::vector<std::uint8_t>> cells(w, std::vector<std::uint8_t>(h));
    std::bernoulli_distribution coin(0.7);
    for (auto& col : cells)
      for (auto& c : col) c = coin(rng);
    auto free = [&](std::size_t x, std::size_t y) { return cells[x][y] != 0; };
    const auto runs = ColumnRuns::from_predicate(w, h, free);
    auto entry = oracle::random_entry(w, h, free, rng, 0.2);
    const auto before = propagate_runs_block(runs, entry);
    // flip one false entry cell (that is free) to true
    for (std::size_t x = 1; x < w; ++x)
      if (!entry.row[x] && free(x, 0)) {
        entry.row[x] = 1;
        break;
      }
    const auto after = propagate_runs_block(runs, entry);
    for (std::size_t x = 0; x < w; ++x) EXPECT_LE(before.row[x], after.row[x]);
    for (std::size_t y = 0; y < h; ++y) EXPECT_LE(before.col[y], after.col[y]);
  }
}

TEST(BridgeGap, MatchesStripDp) {
  std::mt19937_64 rng(31);
  std::bernoulli_distribution coin(0.6);
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t w = 1 + rng() % 12, h = 1 + rng() % 12;
    // a (w+1) x (h+1) window whose first row/column are the outside cells
    std::vector<std::vector<std::uint8_t>> cells(w + 1, std::vector<std::uint8_t>(h + 1));
    for (auto& col : cells)
      for (auto& c : col) c = coin(rng);
    std::vector<std::uint8_t> below(w + 1), left(h + 1);
    below[0] = left[0] = coin(rng);
    for (std::size_t x = 1; x <= w; ++x) below[x] = coin(rng);
    for (std::size_t y = 1; y <= h; ++y) left[y] = coin(rng);
    auto free = [&](std::size_t x, std::size_t y) { return cells[x + 1][y + 1] != 0; };
    const auto got = bridge_gap(std::span<const std::uint8_t>(below), std::span<const std::uint8_t>(left), free);
    // DP over the window with the outside row/column fixed
    std::vector<std::vector<std::uint8_t>> r(w + 1, std::vector<std::uint8_t>(h + 1));
    for (std::size_t x = 0; x <= w; ++x) r[x][0] = below[x];
    for (std::size_t y = 0; y <= h; ++y) r[0][y] = left[y];
    for (std::size_t x = 1; x <= w; ++x)
      for (std::size_t y = 1; y <= h; ++y)
        r[x][y] = cells[x][y] && (r[x - 1][y] || r[x][y - 1] || r[x - 1][y - 1]);
    for (std::size_t x = 0; x < w; ++x) ASSERT_EQ(got.row[x], r[x + 1][1]);
    for (std::size_t y = 0; y < h; ++y) ASSERT_EQ(got.col[y], r[1][y + 1]);
  }
}

TEST(Sweep, ComposesToBaseline) {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<std::int64_t> c(-5, 5);
  for (bool overlapping : {true, false})
    for (int rep = 0; rep < 300; ++rep) {
      std::vector<Coord> p(1 + rng() % 30), q(1 + rng() % 30);
      for (auto& v : p) v = {c(rng), c(rng), 0};
      for (auto& v : q) v = {c(rng), c(rng), 0};
      const std::int64_t delta = rng() % 10;
      auto free = [&](std::size_t i, std::size_t j) { return square_dist(p[i], q[j]) <= delta; };
      const auto pr = random_ranges(rng, p.size(), overlapping);
      const auto qr = random_ranges(rng, q.size(), overlapping);
      auto kernel = [&](std::size_t k, std::size_t l, const FacetReach& entry) {
        const auto runs = ColumnRuns::from_predicate(
            pr[k].size(), qr[l].size(),
            [&](std::size_t x, std::size_t y) { return free(pr[k].lo + x, qr[l].lo + y); });
        return propagate_runs_block(runs, entry);
      };
      const std::span<const IndexRange> ps(pr), qs(qr);
      const bool expect = baseline_decide(square_dist, p, q, delta);
      ASSERT_EQ(sweep_blocks(ps, qs, overlapping, free, kernel), expect)
          << (overlapping ? "overlapping" : "disjoint") << " rep " << rep;
      ASSERT_EQ(sweep_blocks_by_column(ps, qs, overlapping, free, kernel), expect)
          << (overlapping ? "overlapping" : "disjoint") << " by column, rep " << rep;
    }
}
