#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "tilefrechet/lattice.hpp"

using namespace tilefrechet;

namespace {

Coord random_coord(std::mt19937_64& rng, TilingKind kind, std::int64_t radius) {
  std::uniform_int_distribution<std::int64_t> d(-radius, radius);
  return make_coord(kind, d(rng), d(rng));
}

}  // namespace

TEST(Lattice, NeighbourCounts) {
  EXPECT_EQ(neighbors(TilingKind::square, make_coord(TilingKind::square, 3, -2)).size(), 4u);
  EXPECT_EQ(neighbors(TilingKind::triangular, make_coord(TilingKind::triangular, 3, -2)).size(), 6u);
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      EXPECT_EQ(neighbors(TilingKind::hexagonal, make_coord(TilingKind::hexagonal, a, b)).size(), 3u);
}

TEST(Lattice, NeighboursAreSymmetric) {
  for (TilingKind kind : all_tiling_kinds)
    for (int a = -4; a <= 4; ++a)
      for (int b = -4; b <= 4; ++b) {
        const Coord v = make_coord(kind, a, b);
        for (const Coord& w : neighbors(kind, v)) {
          const auto back = neighbors(kind, w);
          EXPECT_NE(std::find(back.begin(), back.end(), v), back.end());
        }
      }
}

TEST(Lattice, EmbeddedEdgesHaveUnitLength) {
  for (TilingKind kind : all_tiling_kinds)
    for (int a = -3; a <= 3; ++a)
      for (int b = -3; b <= 3; ++b) {
        const Coord v = make_coord(kind, a, b);
        const Point2 p = embed(kind, v);
        for (const Coord& w : neighbors(kind, v)) {
          const Point2 q = embed(kind, w);
          EXPECT_NEAR(std::hypot(p.x - q.x, p.y - q.y), 1.0, 1e-12);
        }
      }
}

TEST(Lattice, HexagonalAnglesAre120Degrees) {
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) {
      const Coord v = make_coord(TilingKind::hexagonal, a, b);
      const Point2 p = embed(TilingKind::hexagonal, v);
      const auto nb = neighbors(TilingKind::hexagonal, v);
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j) {
          const Point2 x = embed(TilingKind::hexagonal, nb[i]);
          const Point2 y = embed(TilingKind::hexagonal, nb[j]);
          const double dot = (x.x - p.x) * (y.x - p.x) + (x.y - p.y) * (y.y - p.y);
          EXPECT_NEAR(dot, -0.5, 1e-12);
        }
    }
}

TEST(Lattice, GraphDistanceMatchesBfs) {
  std::mt19937_64 rng(7);
  for (TilingKind kind : all_tiling_kinds)
    for (int rep = 0; rep < 400; ++rep) {
      const Coord u = random_coord(rng, kind, 15);
      const Coord v = random_coord(rng, kind, 15);
      const auto bfs = bfs_distance(kind, u, v, 200);
      ASSERT_TRUE(bfs.has_value());
      EXPECT_EQ(graph_distance(kind, u, v), *bfs) << to_string(kind) << " (" << u.a << "," << u.b
                                                  << ") -> (" << v.a << "," << v.b << ")";
    }
}

TEST(Lattice, HexagonalKnownDistances) {
  const auto k = TilingKind::hexagonal;
  // straight vertical pair: one vertical step then two zigzags per row
  EXPECT_EQ(graph_distance(k, make_coord(k, 0, 0), make_coord(k, 0, 1)), 1);
  EXPECT_EQ(graph_distance(k, make_coord(k, 0, 0), make_coord(k, 0, -1)), 3);
  EXPECT_EQ(graph_distance(k, make_coord(k, 0, 0), make_coord(k, 4, 0)), 4);
}

TEST(Lattice, DistanceCircleMatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (TilingKind kind : all_tiling_kinds)
    for (std::int64_t r = 0; r <= 20; ++r) {
      const Coord c = random_coord(rng, kind, 5);
      std::uniform_int_distribution<std::int64_t> d(-25, 25);
      std::int64_t a0 = d(rng), a1 = d(rng), b0 = d(rng), b1 = d(rng);
      LatticeWindow w{std::min(a0, a1), std::max(a0, a1), std::min(b0, b1), std::max(b0, b1)};
      if (r % 3 == 0) w = {c.a - 30, c.a + 30, c.b - 30, c.b + 30};
      std::set<std::pair<std::int64_t, std::int64_t>> expect, got;
      for (std::int64_t a = w.a_lo; a <= w.a_hi; ++a)
        for (std::int64_t b = w.b_lo; b <= w.b_hi; ++b)
          if (graph_distance(kind, c, make_coord(kind, a, b)) == r) expect.insert({a, b});
      const auto circle = distance_circle(kind, c, r, w);
      for (const Coord& v : circle) EXPECT_TRUE(got.insert({v.a, v.b}).second) << "duplicate";
      EXPECT_EQ(got, expect) << to_string(kind) << " r=" << r;
    }
}

TEST(Lattice, ParseTilingKind) {
  EXPECT_EQ(parse_tiling_kind("hexagonal"), TilingKind::hexagonal);
  EXPECT_EQ(to_string(TilingKind::triangular), "triangular");
  EXPECT_THROW(parse_tiling_kind("octagonal"), std::invalid_argument);
}

TEST(Lattice, ValidatePathRejectsBadSteps) {
  const auto k = TilingKind::square;
  std::vector<Coord> ok{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
  EXPECT_EQ(validate_path(k, ok).size(), 3u);

  std::vector<Coord> jump{{0, 0, 0}, {2, 0, 0}};
  try {
    validate_path(k, jump);
    FAIL();
  } catch (const PathError& e) {
    EXPECT_EQ(e.index(), 1u);
  }

  std::vector<Coord> loop{{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 0}};
  try {
    validate_path(k, loop);
    FAIL();
  } catch (const PathError& e) {
    EXPECT_EQ(e.index(), 4u);
  }
}

TEST(Lattice, ValidatePathNormalisesHexParity) {
  std::vector<Coord> seq{{0, 0, 1}, {1, 0, 0}};
  const auto p = validate_path(TilingKind::hexagonal, seq);
  EXPECT_EQ(p[0].parity, 0);
  EXPECT_EQ(p[1].parity, 1);
}
