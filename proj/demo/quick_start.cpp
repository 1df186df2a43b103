// Small tour: a tiling pair, an L1 plane pair, and an OV gadget.

#include <cstdio>

#include "tilefrechet/generators.hpp"
#include "tilefrechet/ovh_gadgets.hpp"
#include "tilefrechet/plane_l1.hpp"
#include "tilefrechet/plane_lc.hpp"
#include "tilefrechet/tiling_frechet.hpp"

using namespace tilefrechet;

int main() {
  const auto p = gen_path(TilingKind::hexagonal, 3000, PathModel::randomwalk, 7);
  const auto q = translate(gen_path(TilingKind::hexagonal, 2500, PathModel::spiral, 8), 4, -2);
  const auto f = frechet_value(p, q);
  const auto r = decide(p, q, f - 1);
  std::printf("hexagonal: distance %lld, below it: %s (%llu separated blocks, %llu aligned)\n",
              static_cast<long long>(f), r.answer ? "yes" : "no",
              static_cast<unsigned long long>(r.blocks_separated),
              static_cast<unsigned long long>(r.blocks_aligned));

  const double eps = 0.25;
  const auto a = gen_eps_delta_curve(400, eps, 3, 1), b = gen_eps_delta_curve(350, eps, 3, 2);
  const double exact = l1_frechet(a, b, eps);
  const double approx = approx_frechet_lc(a, b, 0.1, LcMetric{2});
  std::printf("plane: L1 distance %.4f, L2 within 10%%: %.4f\n", exact, approx);

  auto [U, W] = random_ov(4, 4, 5, true, 3);
  const auto g = build_gadget_graph(preprocess_ov(U, W));
  std::printf("OV: orthogonal pair %s, gadget distance %d on %zu vertices\n", brute_force_ov(U, W) ? "yes" : "no",
              graph_frechet(g), g.size());
}
