// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// all pass. `acceptance 4 7` runs a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "plane_fixtures.hpp"
#include "tilefrechet/bench.hpp"
#include "tilefrechet/generators.hpp"
#include "tilefrechet/lattice.hpp"
#include "tilefrechet/ovh_gadgets.hpp"
#include "tilefrechet/plane_l1.hpp"
#include "tilefrechet/plane_lc.hpp"
#include "tilefrechet/tiling_frechet.hpp"

using namespace tilefrechet;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

constexpr PathModel kModels[] = {PathModel::randomwalk, PathModel::staircase, PathModel::spiral,
                                 PathModel::spacefill};

struct TilingPair {
  TilingPath p, q;
};

TilingPair random_pair(TilingKind kind, std::size_t n, std::size_t m, std::mt19937_64& rng) {
  const PathModel mp = kModels[rng() % 4], mq = kModels[rng() % 4];
  auto p = gen_path(kind, n, mp, rng());
  std::uniform_int_distribution<std::int64_t> off(-6, 6);
  std::int64_t da = off(rng), db = off(rng);
  if (kind == TilingKind::hexagonal && (da + db) % 2 != 0) ++da;
  return {std::move(p), translate(gen_path(kind, m, mq, rng()), da, db)};
}

Coord random_coord(std::mt19937_64& rng, TilingKind kind, std::int64_t radius) {
  std::uniform_int_distribution<std::int64_t> d(-radius, radius);
  return make_coord(kind, d(rng), d(rng));
}

const DecideOptions kForceSweep{0};

// ---------------------------------------------------------------------------

Outcome lattice_oracle() {
  Timer timer;
  std::mt19937_64 rng(1001);
  std::size_t pairs = 0, bad = 0;
  for (TilingKind kind : all_tiling_kinds)
    for (int rep = 0; rep < 2000; ++rep) {
      // endpoint a walk of at most 30 steps away
      const Coord u = random_coord(rng, kind, 1000);
      Coord v = u;
      for (std::size_t s = rng() % 31; s > 0; --s) {
        const auto nb = neighbors(kind, v);
        v = nb[rng() % nb.size()];
      }
      const auto bfs = bfs_distance(kind, u, v, 30);
      ++pairs;
      if (!bfs || *bfs != graph_distance(kind, u, v)) ++bad;
    }
  const double t = timer.seconds();
  return {bad == 0 && t < 5, fmt("%zu pairs, %zu mismatches, %.2f s (limit 5 s)", pairs, bad, t)};
}

Outcome circle_enumeration() {
  std::mt19937_64 rng(1002);
  std::size_t circles = 0, bad = 0;
  for (TilingKind kind : all_tiling_kinds)
    for (std::int64_t r = 0; r <= 20; ++r)
      for (int rep = 0; rep < 6; ++rep) {
        const Coord c = random_coord(rng, kind, 5);
        std::uniform_int_distribution<std::int64_t> d(-25, 25);
        const std::int64_t a0 = d(rng), a1 = d(rng), b0 = d(rng), b1 = d(rng);
        LatticeWindow w{std::min(a0, a1), std::max(a0, a1), std::min(b0, b1), std::max(b0, b1)};
        if (rep % 2 == 0) w = {c.a - 30, c.a + 30, c.b - 30, c.b + 30};
        std::set<std::pair<std::int64_t, std::int64_t>> expect, got;
        for (std::int64_t a = w.a_lo; a <= w.a_hi; ++a)
          for (std::int64_t b = w.b_lo; b <= w.b_hi; ++b)
            if (graph_distance(kind, c, make_coord(kind, a, b)) == r) expect.insert({a, b});
        bool dup = false;
        for (const Coord& v : distance_circle(kind, c, r, w)) dup |= !got.insert({v.a, v.b}).second;
        ++circles;
        if (dup || got != expect) ++bad;
      }
  return {bad == 0, fmt("%zu circles (r <= 20, 3 kinds), %zu mismatches", circles, bad)};
}

Outcome kernel_equivalence() {
  std::mt19937_64 rng(1003);
  std::size_t bad_sep = 0, bad_runs = 0;
  auto steps = [&](std::size_t len, std::int64_t start) {
    std::vector<std::int64_t> out{start};
    std::uniform_int_distribution<int> step(-1, 1);
    while (out.size() < len) out.push_back(std::max<std::int64_t>(0, out.back() + step(rng)));
    return out;
  };
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t w = 1 + rng() % 200, h = 1 + rng() % 200;
    const auto a = steps(w, static_cast<std::int64_t>(rng() % 8));
    const auto b = steps(h, static_cast<std::int64_t>(rng() % 8));
    const std::int64_t delta = static_cast<std::int64_t>(rng() % 14);
    auto free = [&](std::size_t x, std::size_t y) { return a[x] + b[y] <= delta; };
    const auto entry = oracle::random_entry(w, h, free, rng, 0.2);
    const auto got = propagate_separated_block<std::int64_t>(a, b, delta, entry);
    const auto expect = oracle::block_exit(w, h, free, entry);
    if (got.row != expect.row || got.col != expect.col) ++bad_sep;
  }
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t w = 1 + rng() % 40, h = 1 + rng() % 40;
    std::bernoulli_distribution coin(std::uniform_real_distribution<double>(0.3, 0.95)(rng));
    std::vector<std::vector<std::uint8_t>> cells(w, std::vector<std::uint8_t>(h));
    for (auto& col : cells)
      for (auto& c : col) c = coin(rng);
    auto free = [&](std::size_t x, std::size_t y) { return cells[x][y] != 0; };
    const auto entry = oracle::random_entry(w, h, free, rng, 0.3);
    const auto got = propagate_runs_block(ColumnRuns::from_predicate(w, h, free), entry);
    const auto expect = oracle::block_exit(w, h, free, entry);
    if (got.row != expect.row || got.col != expect.col) ++bad_runs;
  }
  return {bad_sep == 0 && bad_runs == 0,
          fmt("separated 1000 blocks (k <= 200): %zu mismatches; runs 1000 blocks (<= 40x40): %zu mismatches",
              bad_sep, bad_runs)};
}

Outcome tiling_decision() {
  Timer timer;
  std::mt19937_64 rng(1004);
  std::size_t checks = 0, bad = 0, yes = 0;
  for (TilingKind kind : all_tiling_kinds)
    for (int rep = 0; rep < 300; ++rep) {
      const std::size_t n = 2 + rng() % 299, m = 2 + rng() % 299;
      const auto [p, q] = random_pair(kind, n, m, rng);
      const std::int64_t f = oracle_frechet(p, q);
      // below, at, above the value, and anywhere in [0, 2f + 2]
      const std::int64_t pick[] = {f - 1, f, f + 1, static_cast<std::int64_t>(rng() % (2 * f + 3))};
      for (std::int64_t delta : pick) {
        if (delta < 0) continue;
        const bool fast = decide(p, q, delta, kForceSweep).answer;
        ++checks;
        yes += fast;
        if (fast != oracle_decide(p, q, delta)) ++bad;
      }
    }
  const double t = timer.seconds();
  return {bad == 0 && t < 60,
          fmt("900 instances, %zu decisions (%zu yes), %zu mismatches, %.1f s (limit 60 s)", checks, yes, bad, t)};
}

Outcome tiling_value() {
  std::mt19937_64 rng(1005);
  std::size_t bad = 0;
  for (TilingKind kind : all_tiling_kinds)
    for (int rep = 0; rep < 100; ++rep) {
      const std::size_t n = 1 + rng() % 200, m = 1 + rng() % 200;
      const auto [p, q] = random_pair(kind, n, m, rng);
      if (frechet_value(p, q, kForceSweep) != oracle_frechet(p, q)) ++bad;
    }
  return {bad == 0, fmt("300 instances (n+m <= 400), %zu mismatches", bad)};
}

Outcome switching_budget() {
  // the constant the tallies are held to; spiral pairs reach about 0.45
  constexpr double C = 2.0;
  std::mt19937_64 rng(1006);
  std::size_t blocks = 0, bad = 0;
  for (TilingKind kind : all_tiling_kinds)
    for (int rep = 0; rep < 20; ++rep) {
      const auto [p, q] = random_pair(kind, 20 + rng() % 120, 20 + rng() % 120, rng);
      const auto t = choose_supertiling(p, q);
      const auto sp = induced_subpaths(p, t), sq = induced_subpaths(q, t);
      const std::int64_t delta = std::max<std::int64_t>(0, oracle_frechet(p, q) + static_cast<std::int64_t>(rng() % 3) - 1);
      for (const auto& blk : switching_pairs(p, q, delta, t)) {
        const auto cols = sp[blk.k], rows = sq[blk.l];
        auto free = [&](std::size_t x, std::size_t y) {
          return graph_distance(kind, p[cols.lo + x], q[rows.lo + y]) <= delta;
        };
        std::vector<CellIndex> expect;
        for (const auto& [x, y] : oracle::switching_cells(cols.size(), rows.size(), free))
          expect.push_back({cols.lo + x, rows.lo + y});
        ++blocks;
        if (blk.cells != expect) ++bad;
      }
    }
  double worst = 0;
  std::size_t corpus = 0;
  for (TilingKind kind : all_tiling_kinds)
    for (std::size_t n : {200u, 1000u, 4000u})
      for (int rep = 0; rep < 4; ++rep) {
        const std::size_t m = n / 2 + rng() % n;
        const auto [p, q] = random_pair(kind, n, m, rng);
        const std::int64_t f = oracle_frechet(p, q);
        for (std::int64_t delta : {f / 2, f, f + 1, 2 * f}) {
          const auto r = decide(p, q, delta, kForceSweep);
          worst = std::max(worst, static_cast<double>(r.switching_cells) /
                                      (static_cast<double>(n) * std::sqrt(static_cast<double>(n + m))));
          ++corpus;
        }
      }
  return {bad == 0 && worst <= C,
          fmt("%zu aligned blocks vs quadratic scan, %zu mismatches; corpus of %zu runs: max tally / "
              "(n sqrt(n+m)) = %.3f (C = %.1f)",
              blocks, bad, corpus, worst, C)};
}

Outcome scaling() {
  const std::vector<std::size_t> fast_sizes{1u << 12, 1u << 13, 1u << 14, 1u << 15, 1u << 16};
  const std::vector<std::size_t> oracle_sizes{1u << 10, 1u << 11, 1u << 12, 1u << 13};
  std::ostringstream detail;
  bool ok = true;
  double largest = 0;
  for (PathModel model : {PathModel::randomwalk, PathModel::staircase}) {
    std::vector<double> xs, fast, orc, xo;
    for (std::size_t n : fast_sizes) {
      const BenchRecord r = bench_one("fast", TilingKind::square, model, n, 1, 3);
      xs.push_back(2.0 * static_cast<double>(n));
      fast.push_back(r.elapsed_s);
      if (n == fast_sizes.back()) largest = std::max(largest, r.elapsed_s);
    }
    for (std::size_t n : oracle_sizes) {
      const BenchRecord r = bench_one("oracle", TilingKind::square, model, n, 1, 3);
      xo.push_back(2.0 * static_cast<double>(n));
      orc.push_back(r.elapsed_s);
    }
    const double sf = fit_loglog_slope(xs, fast), so = fit_loglog_slope(xo, orc);
    ok &= sf <= 1.8 && so >= 1.9;
    detail << to_string(model) << ": fast slope " << fmt("%.2f", sf) << " (<= 1.8), oracle slope "
           << fmt("%.2f", so) << " (>= 1.9); ";
  }
  ok &= largest < 300;
  detail << fmt("largest fast instance %.2f s (limit 300 s)", largest);
  return {ok, detail.str()};
}

Outcome ovh_round_trip() {
  std::size_t bad = 0, yes = 0, bad_pre = 0, bad_table = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto [U, W] = random_ov(1 + s % 5, 1 + (s / 5) % 5, 1 + s % 4, s % 2, 5000 + s);
    const OVInstance inst = preprocess_ov(U, W);
    const bool ov = brute_force_ov(U, W);
    yes += ov;
    for (const auto& u : inst.U) bad_pre += u.front() != 0 || u.back() != 0;
    for (const auto& w : inst.W) bad_pre += w.front() != 1 || w.back() != 1;
    if (!ov) {
      BitVector all;
      for (const auto& w : inst.W) all.insert(all.end(), w.begin(), w.end());
      for (const auto& u : inst.U)
        for (std::size_t k = 0; k + inst.d <= all.size(); ++k)
          bad_pre += orthogonal(u, BitVector(all.begin() + k, all.begin() + k + inst.d));
    }
    const auto g = build_gadget_graph(inst);
    const int f = graph_frechet(g);
    if (ov ? f > 4 : f < 5) ++bad;
    if (s % 20 == 0) bad_table += !verify_gadget(g).ok();
  }
  // the label table by BFS on one graph, against the literal values
  using L = GadgetLabel;
  const auto g = build_gadget_graph(preprocess_ov({parse_bitstring("1101")}, {parse_bitstring("0100")}));
  const auto adj = g.adjacency();
  const L orange[] = {L::zero, L::one, L::x, L::I};
  const L blue[] = {L::zero_b, L::one_b, L::x_b, L::I_b};
  const int table[4][4] = {{3, 4, 4, 5}, {4, 5, 5, 5}, {4, 5, 5, 4}, {5, 5, 4, 3}};
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto oi = std::find(std::begin(orange), std::end(orange), g.labels[v]) - std::begin(orange);
    if (oi == 4) continue;
    const auto d = bfs_distances(adj, v);
    for (std::size_t w = 0; w < g.size(); ++w) {
      const auto bi = std::find(std::begin(blue), std::end(blue), g.labels[w]) - std::begin(blue);
      if (bi < 4 && d[w] != table[bi][oi]) ++bad_table;
    }
  }
  return {bad == 0 && bad_pre == 0 && bad_table == 0,
          fmt("200 instances (%zu yes): %zu round-trip failures; preprocessing violations %zu; "
              "distance-table violations %zu",
              yes, bad, bad_pre, bad_table)};
}

Outcome l1_plane() {
  std::mt19937_64 rng(1009);
  std::size_t bad_dec = 0, bad_val = 0, tiled = 0, decisions = 0;
  const PlaneOptions sweep{0, SwitchingScan::adaptive, 8.0};
  for (int rep = 0; rep < 200; ++rep) {
    const double eps = rep % 2 ? 0.1 : 0.25;
    const std::size_t n = 1 + rng() % 250, m = 1 + rng() % 250;
    const auto [p, q, e, delta] = fixtures::random_curves(rng, n, m, eps);
    const double f = baseline_frechet(l1_distance, p.vertices, q.vertices);
    // default tile side on odd instances, an enlarged one on even ones
    const PlaneOptions opt = rep % 4 < 2 ? sweep : PlaneOptions{};
    const double pick[] = {f, std::nextafter(f, -1.0), f * 0.9, f * 1.1};
    for (double d : pick) {
      const auto r = l1_decide_report(p, q, d, eps, delta, opt);
      ++decisions;
      tiled += !r.used_baseline;
      if (r.answer != baseline_decide(l1_distance, p.vertices, q.vertices, d)) ++bad_dec;
    }
    if (l1_frechet(p, q, eps, delta, opt) != f) ++bad_val;
  }
  // selection against a full sort, every rank
  std::size_t bad_sel = 0, ranks = 0;
  for (int rep = 0; rep < 2; ++rep) {
    const auto a = gen_eps_delta_curve(75, 0.25, 2, rng()), b = gen_eps_delta_curve(75, 0.25, 2, rng());
    const CartesianSumSets s = l1_sum_sets(a, b);
    std::vector<double> all;
    for (double x : s.X)
      for (double y : s.Y) all.push_back(x + y);
    std::sort(all.begin(), all.end());
    const SelectOptions sel{rng(), rep == 1};
    for (std::uint64_t k = 1; k <= all.size(); ++k, ++ranks)
      if (cartesian_select(s, k, sel) != all[k - 1]) ++bad_sel;
  }
  return {bad_dec == 0 && bad_val == 0 && bad_sel == 0,
          fmt("200 instances: %zu/%zu decisions wrong (%zu tiled), %zu values wrong; selection %zu ranks on "
              "300x300, %zu wrong",
              bad_dec, decisions, tiled, bad_val, ranks, bad_sel)};
}

Outcome lc_approx() {
  std::mt19937_64 rng(1010);
  std::size_t bad = 0, runs = 0, tiled = 0;
  double worst = 0;
  for (double c : {1.0, 2.0, 3.0})
    for (double eps : {0.5, 0.25, 0.1})
      for (int rep = 0; rep < 100; ++rep) {
        const LcMetric metric{c};
        const auto [p, q, e, delta] = fixtures::random_curves(rng, 1 + rng() % 150, 1 + rng() % 150, 0.5);
        const double f = baseline_frechet(metric, p.vertices, q.vertices);
        // half at the default tile side, half with one forced to about 4
        PlaneOptions opt;
        if (rep % 2) {
          const double e3 = eps / 3;
          const auto dl = std::max<std::int64_t>(1, delta_upper_bound(q, e3));
          opt.tile_scale = 4 * std::sqrt(static_cast<double>(dl)) /
                           (e3 * std::sqrt(e3) * static_cast<double>(p.size() + q.size()));
          tiled += lc_tile_side(p, q, e3, dl, opt.tile_scale) >= 1;
        }
        const double v = approx_frechet_lc(p, q, eps, metric, std::nullopt, opt);
        ++runs;
        if (!(v >= f && v <= (1 + eps) * f)) ++bad;
        if (f > 0) worst = std::max(worst, v / f - 1);
      }
  return {bad == 0, fmt("%zu runs (c in {1,2,3}, eps in {0.5,0.25,0.1}; %zu tiled): %zu violations, worst "
                        "relative excess %.4f",
                        runs, tiled, bad, worst)};
}

Outcome resampling() {
  std::mt19937_64 rng(1011);
  std::size_t bad = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const double eps = std::vector<double>{0.5, 0.25, 0.1}[rep % 3];
    const auto p = gen_eps_delta_curve(1 + rng() % 100, 0.5, 2, rng());
    const auto r = resample(p, eps);
    bool ok = r[0] == p[0] && r[r.size() - 1] == p[p.size() - 1];
    for (std::size_t i = 1; i < r.size(); ++i) ok &= euclidean(r[i - 1], r[i]) <= eps / 8;
    bad += !ok;
  }
  return {bad == 0, fmt("100 curves, %zu with spacing above eps/8 or moved endpoints", bad)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  app.add_option("criteria", only, "run only these criteria (1-11)");
  CLI11_PARSE(app, argc, argv);

  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "lattice oracle exactness", lattice_oracle},
      {2, "circle enumeration exactness", circle_enumeration},
      {3, "kernel equivalence", kernel_equivalence},
      {4, "tiling decision correctness", tiling_decision},
      {5, "tiling value correctness", tiling_value},
      {6, "switching-cell budget", switching_budget},
      {7, "scaling", scaling},
      {8, "OVH round trip", ovh_round_trip},
      {9, "L1 plane exactness", l1_plane},
      {10, "Lc approximation", lc_approx},
      {11, "resampling", resampling},
  };
  int failed = 0, ran = 0;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    ++ran;
    failed += !o.pass;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
