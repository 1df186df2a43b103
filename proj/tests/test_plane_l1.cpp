#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "plane_fixtures.hpp"
#include "tilefrechet/generators.hpp"
#include "tilefrechet/plane_l1.hpp"

using namespace tilefrechet;

using fixtures::random_curves;

namespace {

// Depth at every centre and pairwise circle crossing, over all balls.
std::int64_t brute_depth(const PlaneCurve& q, double eps) {
  std::vector<Point2> cand(q.vertices);
  const auto& v = q.vertices;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const double d = euclidean(v[i], v[j]);
      if (d == 0 || d > 2 * eps) continue;
      const double h = std::sqrt(std::max(0.0, eps * eps - d * d / 4));
      const double ux = (v[j].x - v[i].x) / d, uy = (v[j].y - v[i].y) / d;
      const Point2 mid{(v[i].x + v[j].x) / 2, (v[i].y + v[j].y) / 2};
      cand.push_back({mid.x - h * uy, mid.y + h * ux});
      cand.push_back({mid.x + h * uy, mid.y - h * ux});
    }
  std::int64_t best = 0;
  for (const Point2& c : cand) {
    std::int64_t d = 0;
    for (const Point2& x : v)
      if (euclidean(c, x) <= eps * (1 + 1e-9)) ++d;
    best = std::max(best, d);
  }
  return best;
}

const PlaneOptions kForceSweep{0, SwitchingScan::adaptive, 8.0};

}  // namespace

TEST(Profile, TrivialDepths) {
  PlaneCurve sparse{{{0, 0}, {1, 0}, {2, 0}, {3, 0}}, 1.0};
  EXPECT_EQ(delta_for_epsilon(sparse, 0.4), 1);
  PlaneCurve stacked{{{1, 1}, {1, 1}, {1, 1}, {2, 2}}, 2.0};
  EXPECT_EQ(delta_for_epsilon(stacked, 0.1), 3);
  // touching balls share one point
  EXPECT_EQ(delta_for_epsilon(sparse, 0.5), 2);
}

TEST(Profile, MatchesBruteForceAndUpperBound) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> c(0, 3);
  for (int rep = 0; rep < 200; ++rep) {
    PlaneCurve q{{}, 10.0};
    const std::size_t m = 1 + rng() % 40;
    for (std::size_t j = 0; j < m; ++j) q.vertices.push_back({dyadic(c(rng)), dyadic(c(rng))});
    const double eps = std::vector<double>{0.1, 0.25, 0.5}[rng() % 3];
    const auto exact = delta_for_epsilon(q, eps);
    ASSERT_EQ(exact, brute_depth(q, eps)) << "rep " << rep;
    EXPECT_GE(delta_upper_bound(q, eps), exact);
  }
}

TEST(Profile, GeneratedCurvesMeetTarget) {
  for (std::int64_t target : {1, 2, 4})
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto q = gen_eps_delta_curve(300, 0.25, target, seed);
      EXPECT_LE(delta_for_epsilon(q, 0.25), target);
      EXPECT_NO_THROW(check_gamma(q));
    }
}

TEST(Profile, RevisitsRaiseDepth) {
  PlaneCurve q{{{0, 0}, {1, 0}, {0, 0}, {1, 0}, {0, 0}}, 1.0};
  EXPECT_GE(delta_for_epsilon(q, 0.1), 3);
}

TEST(PlaneTilingTest, ShiftMinimisesCrossings) {
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 30; ++rep) {
    const auto [p, q, eps, delta] = random_curves(rng, 100, 100, 0.25);
    const std::int64_t t = 1 + static_cast<std::int64_t>(rng() % 6);
    const auto best = choose_plane_tiling(p, q, t);
    const std::size_t got = crossing_count(p, best) + crossing_count(q, best);
    for (std::int64_t i = 0; i < t; ++i)
      EXPECT_LE(got, crossing_count(p, {t, i}) + crossing_count(q, {t, i}));
    EXPECT_EQ(induced_subcurves(p, best).size(), crossing_count(p, best) + 1);
  }
  PlaneCurve small{{{0.25, 0.25}, {0.5, 0.5}}, 1.0};
  const auto t = choose_plane_tiling(small, small, 5);
  EXPECT_EQ(induced_subcurves(small, t).size() + induced_subcurves(small, t).size(), 2u);
}

TEST(PlaneTilingTest, SubcurvesAreDisjointAndInsideFaces) {
  std::mt19937_64 rng(47);
  for (int rep = 0; rep < 20; ++rep) {
    const auto p = gen_eps_delta_curve(200, 0.1, 2, rng());
    const PlaneTiling t{1 + static_cast<std::int64_t>(rng() % 4), static_cast<std::int64_t>(rng() % 3)};
    const auto subs = induced_subcurves(p, t);
    std::size_t next = 0;
    for (const auto& s : subs) {
      ASSERT_EQ(s.lo, next);
      next = s.hi + 1;
      for (std::size_t i = s.lo; i <= s.hi; ++i) {
        EXPECT_GE(p[i].x, t.lo_x(s.face));
        EXPECT_LE(p[i].x, t.hi_x(s.face));
        EXPECT_GE(p[i].y, t.lo_y(s.face));
        EXPECT_LE(p[i].y, t.hi_y(s.face));
      }
    }
    EXPECT_EQ(next, p.size());
  }
}

TEST(CornerSeparation, ExampleAndAdditivity) {
  const PlaneTiling t{4, 1};
  // g strictly below-left of f: the bottom-left corner of f
  const FaceId f{2, 3, 0}, g{0, 1, 0};
  EXPECT_EQ(corner_separation(f, g, t), (Point2{t.lo_x(f), t.lo_y(f)}));
  EXPECT_THROW(corner_separation(f, FaceId{2, 0, 0}, t), std::invalid_argument);
  EXPECT_THROW(corner_separation(f, FaceId{0, 3, 0}, t), std::invalid_argument);

  std::mt19937_64 rng(53);
  std::uniform_int_distribution<std::int64_t> face(-3, 3);
  std::uniform_real_distribution<double> u(0, 1);
  int checked = 0;
  while (checked < 500) {
    const FaceId a{face(rng), face(rng), 0}, b{face(rng), face(rng), 0};
    if (plane_aligned(a, b)) continue;
    const Point2 c = corner_separation(a, b, t);
    const Point2 p{dyadic(t.lo_x(a) + 4 * u(rng)), dyadic(t.lo_y(a) + 4 * u(rng))};
    const Point2 q{dyadic(t.lo_x(b) + 4 * u(rng)), dyadic(t.lo_y(b) + 4 * u(rng))};
    ASSERT_EQ(l1_distance(p, q), l1_distance(p, c) + l1_distance(c, q));
    ++checked;
  }
}

TEST(L1Switching, MatchesQuadraticScan) {
  std::mt19937_64 rng(59);
  for (int rep = 0; rep < 30; ++rep) {
    const double eps = rep % 2 ? 0.1 : 0.25;
    const auto [p, q, e, delta] = random_curves(rng, 20 + rng() % 100, 20 + rng() % 100, eps);
    const PlaneTiling t = choose_plane_tiling(p, q, 1 + static_cast<std::int64_t>(rng() % 4));
    const auto sp = induced_subcurves(p, t), sq = induced_subcurves(q, t);
    const double dv = dyadic(std::uniform_real_distribution<double>(0, 2)(rng));
    const auto scan = rep % 3 == 0 ? SwitchingScan::direct : SwitchingScan::grid;
    for (const auto& blk : l1_switching_pairs(p, q, dv, eps, t, scan)) {
      ASSERT_TRUE(plane_aligned(sp[blk.k].face, sq[blk.l].face));
      auto free = [&](std::size_t x, std::size_t y) {
        return l1_distance(p[sp[blk.k].lo + x], q[sq[blk.l].lo + y]) <= dv;
      };
      std::vector<CellIndex> expect;
      for (const auto& [x, y] : oracle::switching_cells(sp[blk.k].size(), sq[blk.l].size(), free))
        expect.push_back({sp[blk.k].lo + x, sq[blk.l].lo + y});
      ASSERT_EQ(blk.cells, expect) << "rep " << rep << " block " << blk.k << "," << blk.l;
    }
  }
}

TEST(L1Switching, EmptyForHugeDelta) {
  std::mt19937_64 rng(61);
  const auto [p, q, eps, delta] = random_curves(rng, 60, 60, 0.25);
  for (const auto& blk : l1_switching_pairs(p, q, 1e6, eps, choose_plane_tiling(p, q, 2)))
    EXPECT_TRUE(blk.cells.empty());
}

TEST(L1Decide, MatchesBaseline) {
  std::mt19937_64 rng(67);
  for (int rep = 0; rep < 60; ++rep) {
    const double eps = rep % 2 ? 0.1 : 0.25;
    const auto [p, q, e, delta] = random_curves(rng, 2 + rng() % 250, 2 + rng() % 250, eps);
    const double f = baseline_frechet(l1_distance, p.vertices, q.vertices);
    for (double dv : {f, std::nextafter(f, 0.0), f + 0.125, dyadic(f * 0.7)}) {
      // a larger constant in the tile side keeps small instances off the fallback
      const PlaneOptions opt{0, rep % 3 == 0 ? SwitchingScan::grid : SwitchingScan::adaptive,
                             rep % 2 ? 1.0 : 8.0};
      const auto rep_fast = l1_decide_report(p, q, dv, eps, delta, opt);
      EXPECT_EQ(rep_fast.used_baseline, l1_tile_side(p, q, eps, delta, opt.tile_scale) < 1);
      ASSERT_EQ(rep_fast.answer, baseline_decide(l1_distance, p.vertices, q.vertices, dv))
          << "rep " << rep << " delta " << dv;
    }
  }
}

TEST(L1Decide, TrivialCasesAndErrors) {
  const auto p = gen_eps_delta_curve(80, 0.25, 1, 3);
  EXPECT_TRUE(l1_decide(p, p, 0.0, 0.25, 1, kForceSweep));
  EXPECT_FALSE(l1_decide(p, p, -1.0, 0.25, 1, kForceSweep));
  PlaneCurve bad{{{0, 0}, {5, 0}}, 1.0};
  EXPECT_THROW(l1_decide(bad, p, 1.0, 0.25, 1), std::invalid_argument);
  EXPECT_THROW(l1_decide(p, p, 1.0, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(l1_decide(p, p, 1.0, 0.25, 0), std::invalid_argument);
}

TEST(CartesianSelect, MatchesSortForAllRanks) {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int> v(-50, 50);
  for (int rep = 0; rep < 40; ++rep) {
    CartesianSumSets s;
    s.X.resize(1 + rng() % 40);
    s.Y.resize(1 + rng() % 40);
    for (auto& x : s.X) x = v(rng) / 4.0;
    for (auto& y : s.Y) y = v(rng) / 4.0;
    std::sort(s.X.begin(), s.X.end());
    std::sort(s.Y.begin(), s.Y.end());
    std::vector<double> all;
    for (double x : s.X)
      for (double y : s.Y) all.push_back(x + y);
    std::sort(all.begin(), all.end());
    for (std::uint64_t k = 1; k <= all.size(); ++k) {
      ASSERT_EQ(cartesian_select(s, k, {static_cast<std::uint64_t>(rep), false}), all[k - 1]);
      ASSERT_EQ(cartesian_select(s, k, {0, true}), all[k - 1]);
    }
  }
}

TEST(CartesianSelect, LargeSetsAndErrors) {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> v(-100, 100);
  CartesianSumSets s;
  for (int i = 0; i < 300; ++i) s.X.push_back(dyadic(v(rng)));
  for (int i = 0; i < 300; ++i) s.Y.push_back(dyadic(v(rng)));
  std::sort(s.X.begin(), s.X.end());
  std::sort(s.Y.begin(), s.Y.end());
  std::vector<double> all;
  for (double x : s.X)
    for (double y : s.Y) all.push_back(x + y);
  std::sort(all.begin(), all.end());
  EXPECT_EQ(cartesian_select(s, 1), s.X.front() + s.Y.front());
  EXPECT_EQ(cartesian_select(s, all.size()), s.X.back() + s.Y.back());
  for (int rep = 0; rep < 500; ++rep) {
    const std::uint64_t k = 1 + rng() % all.size();
    ASSERT_EQ(cartesian_select(s, k), all[k - 1]);
  }
  EXPECT_THROW(cartesian_select(s, 0), std::out_of_range);
  EXPECT_THROW(cartesian_select(s, all.size() + 1), std::out_of_range);
}

TEST(L1Value, DistancesLieInSumSet) {
  std::mt19937_64 rng(79);
  const auto [p, q, eps, delta] = random_curves(rng, 50, 50, 0.25);
  const auto s = l1_sum_sets(p, q);
  for (int rep = 0; rep < 200; ++rep) {
    const Point2 a = p[rng() % p.size()], b = q[rng() % q.size()];
    const double d = l1_distance(a, b);
    bool found = false;
    for (double x : s.X)
      found = found || std::binary_search(s.Y.begin(), s.Y.end(), d - x);
    ASSERT_TRUE(found);
  }
}

TEST(L1Value, MatchesBaseline) {
  std::mt19937_64 rng(83);
  for (int rep = 0; rep < 30; ++rep) {
    const double eps = rep % 2 ? 0.1 : 0.25;
    const auto [p, q, e, delta] = random_curves(rng, 1 + rng() % 150, 1 + rng() % 150, eps);
    const double expect = baseline_frechet(l1_distance, p.vertices, q.vertices);
    ASSERT_EQ(l1_frechet(p, q, eps, delta, kForceSweep), expect) << "rep " << rep;
  }
  const auto p = gen_eps_delta_curve(40, 0.25, 1, 5);
  EXPECT_EQ(l1_frechet(p, p, 0.25), 0.0);
  PlaneCurve a{{{0.5, 1}}, 1.0}, b{{{-2, 3.25}}, 1.0};
  EXPECT_EQ(l1_frechet(a, b, 0.25), 4.75);
}
