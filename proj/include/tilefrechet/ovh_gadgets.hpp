#pragma once

// Orthogonal-vectors instances turned into an unweighted graph G and two
// paths P, Q in it whose discrete Fréchet distance is at most 4 exactly when
// some pair of vectors is orthogonal, and at least 5 otherwise.
//
// Layout. Every orange (person) gadget is A, box 1, x I x, box 2, ..., box d,
// y1, y2, B, where a box is a pair of vertices labelled 0 and 1; P visits the
// 1 of box i iff u_i = 1. Blue (dog) gadgets are boxes of 0' and 1' joined by
// x' I' x', and consecutive blue gadgets are joined the same way. Orange and
// blue vertices meet only through two hubs alpha and beta, each gadget vertex
// hanging off them by a private spoke whose length depends on its label, so
// all label pairs see the fixed distance table. Three more hubs put A, B and
// y1/y2 within reach 4 of the blue side:
//   hub_a: adjacent to every A, spoke 3 to every blue gadget vertex
//   hub_b: adjacent to every B, spoke 3 to every blue gadget vertex
//   hub_y: adjacent to every y1, y2, spoke 3 to the 1' of each last box
// Q runs alpha, s1, s2, h2, alpha*, blue gadgets, z', beta*, g2, t2, t1, beta
// with hub_a - h1 - h2 - alpha* and hub_b - g1 - g2 - beta*, z' ~ g2.

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tilefrechet/freespace.hpp"

namespace tilefrechet {

using BitVector = std::vector<std::uint8_t>;

struct OVInstance {
  std::size_t d = 0;
  std::vector<BitVector> U, W;
};

inline std::string to_bitstring(const BitVector& v) {
  std::string s;
  for (auto b : v) s.push_back(b ? '1' : '0');
  return s;
}

inline BitVector parse_bitstring(std::string_view s) {
  BitVector v;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string must contain only 0 and 1");
    v.push_back(c == '1');
  }
  return v;
}

inline bool orthogonal(const BitVector& u, const BitVector& w) {
  for (std::size_t i = 0; i < u.size() && i < w.size(); ++i)
    if (u[i] && w[i]) return false;
  return true;
}

inline bool brute_force_ov(const std::vector<BitVector>& U, const std::vector<BitVector>& W) {
  for (const auto& u : U)
    for (const auto& w : W)
      if (orthogonal(u, w)) return true;
  return false;
}

inline bool brute_force_ov(const OVInstance& inst) { return brute_force_ov(inst.U, inst.W); }

/// Interleaves U with 0s and W with 1s and prepends the headers 011 / 100;
/// d = 2d' + 4. Orthogonal pairs are kept, every u starts and ends with 0,
/// every w with 1, and in a no-instance no u is orthogonal to any length-d
/// window of the concatenation of W.
inline OVInstance preprocess_ov(const std::vector<BitVector>& U, const std::vector<BitVector>& W) {
  std::size_t d0 = U.empty() ? (W.empty() ? 0 : W[0].size()) : U[0].size();
  for (const auto& v : U)
    if (v.size() != d0) throw std::invalid_argument("length mismatch");
  for (const auto& v : W)
    if (v.size() != d0) throw std::invalid_argument("length mismatch");
  auto weave = [](const BitVector& v, std::uint8_t fill, std::array<std::uint8_t, 3> header) {
    BitVector out(header.begin(), header.end());
    out.push_back(fill);
    for (auto b : v) {
      out.push_back(b);
      out.push_back(fill);
    }
    return out;
  };
  OVInstance inst{2 * d0 + 4, {}, {}};
  for (const auto& u : U) inst.U.push_back(weave(u, 0, {0, 1, 1}));
  for (const auto& w : W) inst.W.push_back(weave(w, 1, {1, 0, 0}));
  return inst;
}

/// Seeded raw instance of n and m vectors of length d; `yes` selects whether
/// an orthogonal pair exists.
inline std::pair<std::vector<BitVector>, std::vector<BitVector>> random_ov(std::size_t n, std::size_t m,
                                                                           std::size_t d, bool yes,
                                                                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BitVector> U(n, BitVector(d)), W(m, BitVector(d));
  std::bernoulli_distribution dense(0.8), half(0.5);
  for (int attempt = 0; attempt < 200; ++attempt) {
    for (auto& v : U)
      for (auto& b : v) b = yes ? half(rng) : dense(rng);
    for (auto& v : W)
      for (auto& b : v) b = yes ? half(rng) : dense(rng);
    if (yes && n > 0 && m > 0 && !brute_force_ov(U, W)) {
      // plant a w inside the complement of some u
      const auto& u = U[rng() % n];
      auto& w = W[rng() % m];
      for (std::size_t i = 0; i < d; ++i) w[i] = u[i] ? 0 : static_cast<std::uint8_t>(half(rng));
    }
    if (brute_force_ov(U, W) == yes) return {U, W};
  }
  if (yes) throw std::runtime_error("cannot plant an orthogonal pair");
  // all-ones vectors are never orthogonal when d >= 1
  for (auto& v : U) std::fill(v.begin(), v.end(), 1);
  for (auto& v : W) std::fill(v.begin(), v.end(), 1);
  return {U, W};
}

enum class GadgetLabel {
  zero, one, x, I, A, B, y1, y2,
  zero_b, one_b, x_b, I_b,
  alpha, beta, alpha_star, beta_star, z_b, link
};

inline std::string_view to_string(GadgetLabel l) {
  switch (l) {
    case GadgetLabel::zero: return "0";
    case GadgetLabel::one: return "1";
    case GadgetLabel::x: return "x";
    case GadgetLabel::I: return "I";
    case GadgetLabel::A: return "A";
    case GadgetLabel::B: return "B";
    case GadgetLabel::y1: return "y1";
    case GadgetLabel::y2: return "y2";
    case GadgetLabel::zero_b: return "0'";
    case GadgetLabel::one_b: return "1'";
    case GadgetLabel::x_b: return "x'";
    case GadgetLabel::I_b: return "I'";
    case GadgetLabel::alpha: return "alpha";
    case GadgetLabel::beta: return "beta";
    case GadgetLabel::alpha_star: return "alpha*";
    case GadgetLabel::beta_star: return "beta*";
    case GadgetLabel::z_b: return "z'";
    case GadgetLabel::link: return "link";
  }
  return "?";
}

inline GadgetLabel parse_gadget_label(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(GadgetLabel::link); ++i)
    if (to_string(static_cast<GadgetLabel>(i)) == s) return static_cast<GadgetLabel>(i);
  throw std::invalid_argument("unknown gadget label: " + std::string(s));
}

inline bool is_orange(GadgetLabel l) { return l <= GadgetLabel::I; }
inline bool is_blue(GadgetLabel l) { return l >= GadgetLabel::zero_b && l <= GadgetLabel::I_b; }

struct GadgetGraph {
  std::vector<GadgetLabel> labels;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::size_t> P, Q;
  // blue box vertices in order, one pair (0', 1') per box across all gadgets
  std::vector<std::array<std::size_t, 2>> blue_boxes;
  // orange box vertices per u
  std::vector<std::vector<std::array<std::size_t, 2>>> orange_boxes;

  std::size_t size() const { return labels.size(); }

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(size());
    for (auto [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    return adj;
  }
};

/// Distance from the fixed hubs alpha and beta for each gadget label.
struct SpokeLengths {
  int to_alpha, to_beta;
};

inline SpokeLengths spoke_lengths(GadgetLabel l) {
  switch (l) {
    case GadgetLabel::zero: return {1, 3};
    case GadgetLabel::one: return {2, 3};
    case GadgetLabel::x: return {2, 2};
    case GadgetLabel::I: return {3, 1};
    case GadgetLabel::zero_b: return {2, 4};
    case GadgetLabel::one_b: return {3, 4};
    case GadgetLabel::x_b: return {3, 3};
    case GadgetLabel::I_b: return {4, 2};
    case GadgetLabel::A: return {2, 3};
    case GadgetLabel::B: return {3, 2};
    default: return {0, 0};
  }
}

/// The label-distance table between orange {0,1,x,I} and blue {0',1',x',I'}.
inline int label_distance(GadgetLabel orange, GadgetLabel blue) {
  const SpokeLengths a = spoke_lengths(orange), b = spoke_lengths(blue);
  return std::min(a.to_alpha + b.to_alpha, a.to_beta + b.to_beta);
}

namespace detail {

class GadgetBuilder {
 public:
  std::size_t vertex(GadgetLabel l) {
    g.labels.push_back(l);
    return g.labels.size() - 1;
  }
  void edge(std::size_t a, std::size_t b) { g.edges.push_back({a, b}); }
  // private path of `len` edges from a to b
  void spoke(std::size_t a, std::size_t b, int len) {
    std::size_t prev = a;
    for (int s = 1; s < len; ++s) {
      const std::size_t v = vertex(GadgetLabel::link);
      edge(prev, v);
      prev = v;
    }
    edge(prev, b);
  }

  GadgetGraph g;
};

}  // namespace detail

inline GadgetGraph build_gadget_graph(const OVInstance& inst) {
  if (inst.U.empty() || inst.W.empty()) throw std::invalid_argument("empty instance");
  if (inst.d < 2) throw std::invalid_argument("vectors must have length >= 2");
  for (const auto& u : inst.U)
    if (u.size() != inst.d || u.front() != 0 || u.back() != 0)
      throw std::invalid_argument("instance is not preprocessed");
  for (const auto& w : inst.W)
    if (w.size() != inst.d || w.front() != 1 || w.back() != 1)
      throw std::invalid_argument("instance is not preprocessed");

  detail::GadgetBuilder b;
  using L = GadgetLabel;
  const std::size_t alpha = b.vertex(L::alpha), beta = b.vertex(L::beta);
  const std::size_t hub_a = b.vertex(L::link), hub_b = b.vertex(L::link), hub_y = b.vertex(L::link);
  auto hang = [&](std::size_t v) {
    const SpokeLengths s = spoke_lengths(b.g.labels[v]);
    b.spoke(v, alpha, s.to_alpha);
    b.spoke(v, beta, s.to_beta);
  };
  auto gadget_vertex = [&](L l) {
    const std::size_t v = b.vertex(l);
    hang(v);
    if (is_blue(l)) {
      b.spoke(v, hub_a, 3);
      b.spoke(v, hub_b, 3);
    }
    return v;
  };

  // orange gadgets, chained B -> A
  std::size_t prev_b = SIZE_MAX;
  for (const auto& u : inst.U) {
    const std::size_t a = gadget_vertex(L::A);
    b.edge(a, hub_a);
    if (prev_b != SIZE_MAX) b.edge(prev_b, a);
    b.g.P.push_back(a);
    std::vector<std::array<std::size_t, 2>> boxes;
    std::size_t tail_x = a;  // vertex adjacent to both entries of the next box
    for (std::size_t i = 0; i < inst.d; ++i) {
      if (i > 0) {
        const std::size_t xa = gadget_vertex(L::x), mid = gadget_vertex(L::I), xb = gadget_vertex(L::x);
        for (std::size_t v : boxes.back()) b.edge(v, xa);
        b.edge(xa, mid);
        b.edge(mid, xb);
        b.g.P.insert(b.g.P.end(), {xa, mid, xb});
        tail_x = xb;
      }
      const std::size_t z = gadget_vertex(L::zero), o = gadget_vertex(L::one);
      b.edge(tail_x, z);
      b.edge(tail_x, o);
      boxes.push_back({z, o});
      b.g.P.push_back(u[i] ? o : z);
    }
    const std::size_t y1 = b.vertex(L::y1), y2 = b.vertex(L::y2), bb = gadget_vertex(L::B);
    for (std::size_t v : boxes.back()) b.edge(v, y1);
    b.edge(y1, y2);
    b.edge(y2, bb);
    b.edge(y1, hub_y);
    b.edge(y2, hub_y);
    b.edge(bb, hub_b);
    b.g.P.insert(b.g.P.end(), {y1, y2, bb});
    b.g.orange_boxes.push_back(std::move(boxes));
    prev_b = bb;
  }

  // dog's approach: alpha s1 s2 h2 alpha*, with hub_a - h1 - h2 - alpha*
  const std::size_t s1 = b.vertex(L::link), s2 = b.vertex(L::link);
  const std::size_t h1 = b.vertex(L::link), h2 = b.vertex(L::link);
  const std::size_t a_star = b.vertex(L::alpha_star);
  b.edge(alpha, s1);
  b.edge(s1, s2);
  b.edge(s2, h2);
  b.edge(hub_a, h1);
  b.edge(h1, h2);
  b.edge(h2, a_star);
  b.g.Q.insert(b.g.Q.end(), {alpha, s1, s2, h2, a_star});

  // blue gadgets, consecutive boxes joined by x' I' x' across gadgets too
  std::size_t prev_box_tail = SIZE_MAX;
  for (std::size_t k = 0; k < inst.W.size(); ++k) {
    const auto& w = inst.W[k];
    for (std::size_t i = 0; i < inst.d; ++i) {
      std::size_t entry = SIZE_MAX;
      if (prev_box_tail != SIZE_MAX) {
        const std::size_t xa = gadget_vertex(L::x_b), mid = gadget_vertex(L::I_b), xb = gadget_vertex(L::x_b);
        for (std::size_t v : b.g.blue_boxes.back()) b.edge(v, xa);
        b.edge(xa, mid);
        b.edge(mid, xb);
        b.g.Q.insert(b.g.Q.end(), {xa, mid, xb});
        entry = xb;
      }
      const std::size_t z = gadget_vertex(L::zero_b), o = gadget_vertex(L::one_b);
      if (entry != SIZE_MAX) {
        b.edge(entry, z);
        b.edge(entry, o);
      } else {
        b.edge(a_star, o);
      }
      b.g.blue_boxes.push_back({z, o});
      b.g.Q.push_back(w[i] ? o : z);
      prev_box_tail = o;
      if (i + 1 == inst.d) b.spoke(o, hub_y, 3);
    }
  }

  // dog's exit: z' beta* g2 t2 t1 beta, with hub_b - g1 - g2 - beta* and z' ~ g2
  const std::size_t zb = b.vertex(L::z_b), b_star = b.vertex(L::beta_star);
  const std::size_t g1 = b.vertex(L::link), g2 = b.vertex(L::link);
  const std::size_t t2 = b.vertex(L::link), t1 = b.vertex(L::link);
  b.edge(b.g.blue_boxes.back()[1], zb);
  b.edge(zb, b_star);
  b.edge(zb, g2);
  b.edge(hub_b, g1);
  b.edge(g1, g2);
  b.edge(g2, b_star);
  b.edge(g2, t2);
  b.edge(t2, t1);
  b.edge(t1, beta);
  b.g.Q.insert(b.g.Q.end(), {zb, b_star, g2, t2, t1, beta});
  return std::move(b.g);
}

/// Unweighted single-source distances; unreachable vertices get -1.
inline std::vector<int> bfs_distances(const std::vector<std::vector<std::size_t>>& adj, std::size_t src) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<std::size_t> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

struct GadgetViolation {
  std::string property;
  std::size_t a = 0, b = 0;  // witness vertices
  int expected = 0, got = 0;
};

struct GadgetReport {
  std::vector<GadgetViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// BFS check of every distance property the reduction relies on.
inline GadgetReport verify_gadget(const GadgetGraph& g) {
  GadgetReport rep;
  if (g.P.empty() || g.Q.empty()) throw std::invalid_argument("empty instance");
  using L = GadgetLabel;
  const auto adj = g.adjacency();
  auto fail = [&](std::string prop, std::size_t a, std::size_t b, int expected, int got) {
    rep.violations.push_back({std::move(prop), a, b, expected, got});
  };

  // structure: simple paths along edges, sparse enough to be planar
  for (const auto* path : {&g.P, &g.Q}) {
    std::vector<std::uint8_t> seen(g.size());
    for (std::size_t i = 0; i < path->size(); ++i) {
      const std::size_t v = (*path)[i];
      if (seen[v]) fail("path is not simple", v, v, 0, 0);
      seen[v] = 1;
      if (i > 0 && std::find(adj[v].begin(), adj[v].end(), (*path)[i - 1]) == adj[v].end())
        fail("path step is not an edge", (*path)[i - 1], v, 1, 0);
    }
  }
  if (g.size() >= 3 && g.edges.size() > 3 * g.size() - 6)
    fail("edge count exceeds planar bound", 0, 0, static_cast<int>(3 * g.size() - 6),
         static_cast<int>(g.edges.size()));

  std::vector<std::uint8_t> on_p(g.size());
  for (std::size_t v : g.P) on_p[v] = 1;
  std::size_t alpha = SIZE_MAX, beta = SIZE_MAX;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (g.labels[v] == L::alpha) alpha = v;
    if (g.labels[v] == L::beta) beta = v;
  }
  if (alpha == SIZE_MAX || beta == SIZE_MAX) {
    fail("missing hub", 0, 0, 1, 0);
    return rep;
  }
  const auto da = bfs_distances(adj, alpha), db = bfs_distances(adj, beta);

  // one representative distance to alpha and beta per label
  std::array<int, 18> first_a, first_b;
  std::array<std::size_t, 18> witness{};
  first_a.fill(-2);
  first_b.fill(-2);
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto l = static_cast<std::size_t>(g.labels[v]);
    if (!is_orange(g.labels[v]) && !is_blue(g.labels[v])) continue;
    if (first_a[l] == -2) {
      first_a[l] = da[v];
      first_b[l] = db[v];
      witness[l] = v;
    } else if (da[v] != first_a[l] || db[v] != first_b[l]) {
      fail("label class has unequal hub distances", witness[l], v, first_a[l], da[v]);
    }
  }

  for (std::size_t v = 0; v < g.size(); ++v) {
    const L lv = g.labels[v];
    if (!is_orange(lv) && lv != L::A && lv != L::B && lv != L::alpha_star && lv != L::beta_star &&
        lv != L::z_b)
      continue;
    const auto dv = bfs_distances(adj, v);
    if (is_orange(lv)) {
      for (std::size_t w = 0; w < g.size(); ++w)
        if (is_blue(g.labels[w]) && dv[w] != label_distance(lv, g.labels[w]))
          fail("label distance table", v, w, label_distance(lv, g.labels[w]), dv[w]);
      if (da[v] > 5) fail("alpha reaches orange within 5", alpha, v, 5, da[v]);
      if (db[v] > 5) fail("beta reaches orange within 5", beta, v, 5, db[v]);
    }
    if (lv == L::A || lv == L::B)
      for (std::size_t w = 0; w < g.size(); ++w)
        if (is_blue(g.labels[w]) && dv[w] > 4)
          fail(std::string(to_string(lv)) + " reaches blue within 4", v, w, 4, dv[w]);
    if (lv == L::alpha_star || lv == L::beta_star) {
      const L allowed = lv == L::alpha_star ? L::A : L::B;
      for (std::size_t w = 0; w < g.size(); ++w)
        if (on_p[w] && g.labels[w] != allowed && dv[w] <= 4)
          fail(std::string(to_string(lv)) + " locality", v, w, 5, dv[w]);
    }
    if (lv == L::z_b)
      for (std::size_t w = 0; w < g.size(); ++w)
        if (on_p[w] && g.labels[w] != L::A && g.labels[w] != L::B && dv[w] <= 4)
          fail("z' locality", v, w, 5, dv[w]);
  }
  return rep;
}

/// Exact discrete Fréchet distance of P and Q under graph distance.
inline int graph_frechet(const GadgetGraph& g) {
  if (g.P.empty() || g.Q.empty()) throw std::invalid_argument("empty instance");
  const auto adj = g.adjacency();
  std::vector<std::vector<int>> rows;
  rows.reserve(g.P.size());
  for (std::size_t v : g.P) rows.push_back(bfs_distances(adj, v));
  std::vector<std::size_t> pi(g.P.size());
  for (std::size_t i = 0; i < pi.size(); ++i) pi[i] = i;
  auto dist = [&](std::size_t i, std::size_t q) {
    const int d = rows[i][q];
    return d < 0 ? std::numeric_limits<int>::max() : d;
  };
  return baseline_frechet(dist, pi, g.Q);
}

}  // namespace tilefrechet
