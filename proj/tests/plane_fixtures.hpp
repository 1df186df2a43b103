#pragma once

#include <random>
#include <vector>

#include "tilefrechet/generators.hpp"
#include "tilefrechet/plane.hpp"

namespace fixtures {

using namespace tilefrechet;

struct CurvePair {
  PlaneCurve p, q;
  double eps;
  std::int64_t delta;
};

// Q is a jittered, possibly shifted and truncated copy of P, or an
// unrelated curve.
CurvePair random_curves(std::mt19937_64& rng, std::size_t n, std::size_t m, double eps) {
  const std::int64_t target = 1 + static_cast<std::int64_t>(rng() % 3);
  PlaneCurve p = gen_eps_delta_curve(n, eps, target, rng());
  PlaneCurve q;
  switch (rng() % 3) {
    case 0: {
      q = jitter_curve(p, std::vector<double>{0.02, 0.2, 0.8}[rng() % 3], rng());
      q.vertices.resize(std::min(m, q.size()));
      break;
    }
    case 1: {
      q = gen_eps_delta_curve(m, eps, target, rng());
      for (auto& v : q.vertices) v.x += 0.5;
      break;
    }
    default:
      q = jitter_curve(gen_eps_delta_curve(m, eps, target, p.size() > 0 ? rng() : 0), 0.1, rng());
  }
  const std::int64_t delta = std::max<std::int64_t>(1, delta_for_epsilon(q, eps));
  return {std::move(p), std::move(q), eps, delta};
}

}  // namespace fixtures
