#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tilefrechet/generators.hpp"
#include "tilefrechet/tiling_frechet.hpp"

using namespace tilefrechet;

namespace {

constexpr PathModel kModels[] = {PathModel::randomwalk, PathModel::staircase, PathModel::spiral,
                                 PathModel::spacefill};

struct Pair {
  TilingPath p, q;
};

Pair random_pair(TilingKind kind, std::size_t n, std::size_t m, std::mt19937_64& rng) {
  const PathModel mp = kModels[rng() % 4], mq = kModels[rng() % 4];
  const auto p = gen_path(kind, n, mp, rng());
  std::uniform_int_distribution<std::int64_t> off(-6, 6);
  std::int64_t da = off(rng), db = off(rng);
  if (kind == TilingKind::hexagonal && (da + db) % 2 != 0) ++da;
  const auto q = translate(gen_path(kind, m, mq, rng()), da, db);
  return {p, q};
}

const DecideOptions kForceSweep{0};

}  // namespace

TEST(TilingDecide, MatchesOracle) {
  std::mt19937_64 rng(101);
  for (TilingKind kind : all_tiling_kinds)
    for (int rep = 0; rep < 60; ++rep) {
      const auto [p, q] = random_pair(kind, 2 + rng() % 150, 2 + rng() % 150, rng);
      const std::int64_t f = oracle_frechet(p, q);
      for (std::int64_t delta : {f - 1, f, f + 1, static_cast<std::int64_t>(rng() % (2 * f + 2))}) {
        if (delta < 0) continue;
        const auto rep_fast = decide(p, q, delta, kForceSweep);
        ASSERT_EQ(rep_fast.answer, oracle_decide(p, q, delta))
            << to_string(kind) << " rep " << rep << " delta " << delta;
        EXPECT_FALSE(rep_fast.used_baseline);
      }
    }
}

TEST(TilingDecide, TrivialCases) {
  for (TilingKind kind : all_tiling_kinds) {
    const auto p = gen_path(kind, 40, PathModel::randomwalk, 9);
    EXPECT_TRUE(decide(p, p, 0, kForceSweep).answer);
    EXPECT_EQ(frechet_value(p, p, kForceSweep), 0);
    const TilingPath a{kind, {make_coord(kind, 0, 0)}}, b{kind, {make_coord(kind, 5, 3)}};
    EXPECT_EQ(frechet_value(a, b, kForceSweep), graph_distance(kind, a[0], b[0]));
  }
}

TEST(TilingDecide, LargeDeltaIsTrue) {
  // delta at twice the largest pairwise spread between the bounding rectangles
  std::mt19937_64 rng(7);
  for (TilingKind kind : all_tiling_kinds) {
    const auto [p, q] = random_pair(kind, 80, 70, rng);
    std::int64_t d1 = 0;
    for (const auto& u : p.vertices)
      for (const auto& v : q.vertices) d1 = std::max(d1, graph_distance(kind, u, v));
    EXPECT_TRUE(decide(p, q, 2 * d1, kForceSweep).answer);
  }
}

TEST(TilingDecide, Errors) {
  const auto p = gen_path(TilingKind::square, 5, PathModel::staircase, 0);
  const auto q = gen_path(TilingKind::triangular, 5, PathModel::staircase, 0);
  EXPECT_THROW(decide(p, q, 1), std::invalid_argument);
  EXPECT_THROW(decide(p, p, -1), std::invalid_argument);
}

TEST(TilingDecide, CountersTallyBlocks) {
  std::mt19937_64 rng(3);
  for (TilingKind kind : all_tiling_kinds) {
    const auto [p, q] = random_pair(kind, 400, 300, rng);
    const auto t = choose_supertiling(p, q);
    const auto sp = induced_subpaths(p, t), sq = induced_subpaths(q, t);
    const auto rep = decide(p, q, oracle_frechet(p, q), kForceSweep);
    EXPECT_EQ(rep.blocks_aligned + rep.blocks_separated, sp.size() * sq.size());
    // sum of block perimeters stays within a constant of (n + m)^1.5
    const double total = static_cast<double>(p.size() + q.size());
    EXPECT_LE(static_cast<double>(rep.perimeter_total), 8.0 * std::pow(total, 1.5));
  }
}

TEST(TilingValue, MatchesOracleAndIsSymmetric) {
  std::mt19937_64 rng(202);
  for (TilingKind kind : all_tiling_kinds)
    for (int rep = 0; rep < 25; ++rep) {
      const auto [p, q] = random_pair(kind, 1 + rng() % 200, 1 + rng() % 200, rng);
      const std::int64_t expect = oracle_frechet(p, q);
      ASSERT_EQ(frechet_value(p, q, kForceSweep), expect) << to_string(kind) << " rep " << rep;
      ASSERT_EQ(frechet_value(q, p, kForceSweep), expect) << to_string(kind) << " rep " << rep;
    }
}

TEST(Switching, MatchesQuadraticScan) {
  std::mt19937_64 rng(303);
  for (TilingKind kind : all_tiling_kinds)
    for (int rep = 0; rep < 20; ++rep) {
      const auto [p, q] = random_pair(kind, 20 + rng() % 120, 20 + rng() % 120, rng);
      const auto t = choose_supertiling(p, q);
      const auto sp = induced_subpaths(p, t), sq = induced_subpaths(q, t);
      const std::int64_t delta = oracle_frechet(p, q) + static_cast<std::int64_t>(rng() % 3) - 1;
      if (delta < 0) continue;
      for (const auto& blk : switching_pairs(p, q, delta, t)) {
        const auto cols = sp[blk.k], rows = sq[blk.l];
        auto free = [&](std::size_t x, std::size_t y) {
          return graph_distance(kind, p[cols.lo + x], q[rows.lo + y]) <= delta;
        };
        std::vector<CellIndex> expect;
        for (const auto& [x, y] : oracle::switching_cells(cols.size(), rows.size(), free))
          expect.push_back({cols.lo + x, rows.lo + y});
        ASSERT_EQ(blk.cells, expect) << to_string(kind) << " block " << blk.k << "," << blk.l;
      }
    }
}

TEST(Switching, EmptyWhenDeltaExceedsAllDistances) {
  std::mt19937_64 rng(5);
  const auto [p, q] = random_pair(TilingKind::square, 30, 30, rng);
  std::int64_t far = 0;
  for (const auto& u : p.vertices)
    for (const auto& v : q.vertices) far = std::max(far, graph_distance(TilingKind::square, u, v));
  for (const auto& blk : switching_pairs(p, q, far + 1, choose_supertiling(p, q)))
    EXPECT_TRUE(blk.cells.empty());
}
