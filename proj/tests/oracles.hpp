#pragma once

// Independent brute-force references shared by the unit and acceptance tests.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "tilefrechet/freespace.hpp"

namespace oracle {

// Full reachability table of a block given its entry facets.
template <class Free>
std::vector<std::vector<std::uint8_t>> block_reach(std::size_t w, std::size_t h, Free&& free,
                                                   const tilefrechet::FacetReach& entry) {
  std::vector<std::vector<std::uint8_t>> r(w, std::vector<std::uint8_t>(h, 0));
  for (std::size_t x = 0; x < w; ++x) r[x][0] = entry.row[x];
  for (std::size_t y = 0; y < h; ++y) r[0][y] = entry.col[y];
  for (std::size_t x = 1; x < w; ++x)
    for (std::size_t y = 1; y < h; ++y)
      r[x][y] = free(x, y) && (r[x - 1][y] || r[x][y - 1] || r[x - 1][y - 1]);
  return r;
}

template <class Free>
tilefrechet::FacetReach block_exit(std::size_t w, std::size_t h, Free&& free,
                                   const tilefrechet::FacetReach& entry) {
  const auto r = block_reach(w, h, free, entry);
  tilefrechet::FacetReach out{std::vector<std::uint8_t>(w), std::vector<std::uint8_t>(h)};
  for (std::size_t x = 0; x < w; ++x) out.row[x] = r[x][h - 1];
  for (std::size_t y = 0; y < h; ++y) out.col[y] = r[w - 1][y];
  return out;
}

// Entry facets consistent with the free pattern: random seeds along the
// bottom row and left column, closed under the in-facet recurrence.
template <class Free, class Rng>
tilefrechet::FacetReach random_entry(std::size_t w, std::size_t h, Free&& free, Rng& rng,
                                     double density) {
  std::bernoulli_distribution coin(density);
  tilefrechet::FacetReach e{std::vector<std::uint8_t>(w), std::vector<std::uint8_t>(h)};
  const bool corner = free(std::size_t{0}, std::size_t{0}) && coin(rng);
  e.row[0] = e.col[0] = corner;
  for (std::size_t x = 1; x < w; ++x) e.row[x] = free(x, std::size_t{0}) && (e.row[x - 1] || coin(rng));
  for (std::size_t y = 1; y < h; ++y) e.col[y] = free(std::size_t{0}, y) && (e.col[y - 1] || coin(rng));
  return e;
}

// Plain quadratic scan for switching cells: free with a blocked vertical
// neighbour.
template <class Free>
std::vector<std::pair<std::size_t, std::size_t>> switching_cells(std::size_t n, std::size_t m,
                                                                 Free&& free) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (!free(i, j)) continue;
      const bool below_blocked = j > 0 && !free(i, j - 1);
      const bool above_blocked = j + 1 < m && !free(i, j + 1);
      if (below_blocked || above_blocked) out.emplace_back(i, j);
    }
  return out;
}

}  // namespace oracle
