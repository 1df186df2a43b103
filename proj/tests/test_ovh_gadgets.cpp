#include <gtest/gtest.h>

#include <map>

#include "tilefrechet/ovh_gadgets.hpp"

using namespace tilefrechet;

namespace {

OVInstance random_instance(std::uint64_t seed, bool yes) {
  auto [U, W] = random_ov(1 + seed % 4, 1 + (seed / 4) % 4, 1 + seed % 3, yes, seed);
  return preprocess_ov(U, W);
}

std::size_t q_index_of(const GadgetGraph& g, std::size_t v) {
  return static_cast<std::size_t>(std::find(g.Q.begin(), g.Q.end(), v) - g.Q.begin());
}

}  // namespace

TEST(Preprocess, WorkedExamples) {
  const auto inst = preprocess_ov({parse_bitstring("1101")}, {parse_bitstring("0100")});
  EXPECT_EQ(inst.d, 12u);
  EXPECT_EQ(to_bitstring(inst.U[0]), "011010100010");
  EXPECT_EQ(to_bitstring(inst.W[0]), "100101110101");
}

TEST(Preprocess, KeepsOrthogonalityAndEndBits) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto [U, W] = random_ov(3, 3, 1 + s % 5, s % 2, s);
    const auto inst = preprocess_ov(U, W);
    for (std::size_t i = 0; i < U.size(); ++i)
      for (std::size_t j = 0; j < W.size(); ++j)
        EXPECT_EQ(orthogonal(U[i], W[j]), orthogonal(inst.U[i], inst.W[j]));
    for (const auto& u : inst.U) EXPECT_TRUE(u.front() == 0 && u.back() == 0);
    for (const auto& w : inst.W) EXPECT_TRUE(w.front() == 1 && w.back() == 1);
  }
}

// In a no-instance no u is orthogonal to any window of the concatenated W.
TEST(Preprocess, NoOrthogonalWindow) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto [U, W] = random_ov(3, 4, 1 + s % 4, false, s);
    ASSERT_FALSE(brute_force_ov(U, W));
    const auto inst = preprocess_ov(U, W);
    BitVector all;
    for (const auto& w : inst.W) all.insert(all.end(), w.begin(), w.end());
    for (const auto& u : inst.U)
      for (std::size_t k = 0; k + inst.d <= all.size(); ++k)
        EXPECT_FALSE(orthogonal(u, BitVector(all.begin() + k, all.begin() + k + inst.d))) << "seed " << s;
  }
}

TEST(Preprocess, RejectsMismatchedLengths) {
  EXPECT_THROW(preprocess_ov({parse_bitstring("10")}, {parse_bitstring("101")}), std::invalid_argument);
  EXPECT_THROW(parse_bitstring("10a"), std::invalid_argument);
}

TEST(RandomOV, RequestedAnswer) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto [U, W] = random_ov(4, 4, 3, s % 2, s);
    EXPECT_EQ(brute_force_ov(U, W), static_cast<bool>(s % 2));
  }
}

TEST(Gadget, DistanceTable) {
  using L = GadgetLabel;
  const L orange[] = {L::zero, L::one, L::x, L::I};
  const L blue[] = {L::zero_b, L::one_b, L::x_b, L::I_b};
  const int table[4][4] = {{3, 4, 4, 5}, {4, 5, 5, 5}, {4, 5, 5, 4}, {5, 5, 4, 3}};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_EQ(label_distance(orange[c], blue[r]), table[r][c]);
  EXPECT_EQ(label_distance(L::x, L::x_b), 5);
}

TEST(Gadget, SpokeDistancesByBfs) {
  const auto g = build_gadget_graph(random_instance(7, true));
  const auto adj = g.adjacency();
  std::size_t alpha = 0, beta = 0;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (g.labels[v] == GadgetLabel::alpha) alpha = v;
    if (g.labels[v] == GadgetLabel::beta) beta = v;
  }
  const auto da = bfs_distances(adj, alpha), db = bfs_distances(adj, beta);
  const std::map<GadgetLabel, std::pair<int, int>> want{
      {GadgetLabel::zero, {1, 3}},   {GadgetLabel::one, {2, 3}},   {GadgetLabel::x, {2, 2}},
      {GadgetLabel::I, {3, 1}},      {GadgetLabel::zero_b, {2, 4}}, {GadgetLabel::one_b, {3, 4}},
      {GadgetLabel::x_b, {3, 3}},    {GadgetLabel::I_b, {4, 2}}};
  for (std::size_t v = 0; v < g.size(); ++v) {
    auto it = want.find(g.labels[v]);
    if (it == want.end()) continue;
    EXPECT_EQ(da[v], it->second.first) << to_string(g.labels[v]);
    EXPECT_EQ(db[v], it->second.second) << to_string(g.labels[v]);
  }
}

TEST(Gadget, VerifiesOnRandomInstances) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = build_gadget_graph(random_instance(s, s % 2));
    const auto rep = verify_gadget(g);
    EXPECT_TRUE(rep.ok()) << (rep.ok() ? "" : rep.violations[0].property);
    EXPECT_LE(g.edges.size(), 3 * g.size() - 6);
  }
}

TEST(Gadget, ShortenedApproachIsCaught) {
  auto g = build_gadget_graph(random_instance(3, true));
  // alpha straight to the second approach vertex: alpha* comes within 3 of alpha
  g.edges.push_back({g.Q[0], g.Q[2]});
  const auto rep = verify_gadget(g);
  ASSERT_FALSE(rep.ok());
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.property == "alpha* locality") {
      found = true;
      EXPECT_EQ(g.labels[v.a], GadgetLabel::alpha_star);
      EXPECT_NE(g.labels[v.b], GadgetLabel::A);
      EXPECT_LE(v.got, 4);
    }
  EXPECT_TRUE(found);
}

TEST(Gadget, RejectsEmptyAndRawInstances) {
  OVInstance empty;
  empty.d = 6;
  empty.W.push_back(BitVector(6, 1));
  EXPECT_THROW(build_gadget_graph(empty), std::invalid_argument);
  const OVInstance raw{2, {BitVector{1, 0}}, {BitVector{0, 1}}};
  EXPECT_THROW(build_gadget_graph(raw), std::invalid_argument);
  EXPECT_THROW(verify_gadget(GadgetGraph{}), std::invalid_argument);
  EXPECT_THROW(graph_frechet(GadgetGraph{}), std::invalid_argument);
}

TEST(Gadget, RoundTrip) {
  int yes = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto [U, W] = random_ov(1 + s % 5, 1 + (s / 5) % 5, 1 + s % 4, s % 2, 1000 + s);
    const auto g = build_gadget_graph(preprocess_ov(U, W));
    const int f = graph_frechet(g);
    if (brute_force_ov(U, W)) {
      ++yes;
      EXPECT_LE(f, 4) << "seed " << s;
    } else {
      EXPECT_GE(f, 5) << "seed " << s;
    }
  }
  EXPECT_EQ(yes, 100);
}

// Within distance 4, a person on box i of some u facing blue box J got there
// in lockstep: every earlier box pair was locally orthogonal.
TEST(Gadget, LockstepThroughBoxes) {
  for (std::uint64_t s = 0; s < 24; ++s) {
    const auto inst = random_instance(s, s % 2);
    const auto g = build_gadget_graph(inst);
    BitVector wstr;
    for (const auto& w : inst.W) wstr.insert(wstr.end(), w.begin(), w.end());
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> p_box;  // P index -> (u, box)
    for (std::size_t u = 0; u < g.orange_boxes.size(); ++u)
      for (std::size_t i = 0; i < inst.d; ++i) {
        const std::size_t v = g.orange_boxes[u][i][inst.U[u][i]];
        p_box[static_cast<std::size_t>(std::find(g.P.begin(), g.P.end(), v) - g.P.begin())] = {u, i};
      }
    std::map<std::size_t, std::size_t> q_box;  // Q index -> global box
    for (std::size_t J = 0; J < g.blue_boxes.size(); ++J) q_box[q_index_of(g, g.blue_boxes[J][wstr[J]])] = J;

    const auto adj = g.adjacency();
    const std::size_t n = g.P.size(), m = g.Q.size();
    std::vector<std::vector<std::uint8_t>> reach(n, std::vector<std::uint8_t>(m));
    for (std::size_t i = 0; i < n; ++i) {
      const auto d = bfs_distances(adj, g.P[i]);
      for (std::size_t j = 0; j < m; ++j) {
        const bool from = (i == 0 && j == 0) || (i > 0 && reach[i - 1][j]) || (j > 0 && reach[i][j - 1]) ||
                          (i > 0 && j > 0 && reach[i - 1][j - 1]);
        reach[i][j] = from && d[g.Q[j]] <= 4;
      }
    }
    for (const auto& [pi, ub] : p_box)
      for (const auto& [qj, J] : q_box) {
        if (!reach[pi][qj]) continue;
        const auto [u, i] = ub;
        ASSERT_GE(J, i) << "seed " << s;
        for (std::size_t k = 0; k <= i; ++k)
          EXPECT_FALSE(inst.U[u][i - k] && wstr[J - k]) << "seed " << s << " box " << i << " vs " << J;
      }
  }
}

TEST(Gadget, SingleOrthogonalPair) {
  const auto g = build_gadget_graph(preprocess_ov({BitVector{0}}, {BitVector{1}}));
  EXPECT_LE(graph_frechet(g), 4);
  const auto h = build_gadget_graph(preprocess_ov({BitVector{1}}, {BitVector{1}}));
  EXPECT_GE(graph_frechet(h), 5);
}

TEST(BruteForceOV, SmallCases) {
  EXPECT_TRUE(brute_force_ov({parse_bitstring("00")}, {parse_bitstring("11")}));
  EXPECT_FALSE(brute_force_ov({parse_bitstring("10")}, {parse_bitstring("11")}));
  EXPECT_FALSE(brute_force_ov({}, {parse_bitstring("11")}));
}

// From aligned locally orthogonal boxes to the next pair in six moves, each
// position pair within distance 4.
TEST(Gadget, SixStepBoxTraversal) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto [U, W] = random_ov(1, 1, 1 + s % 4, true, 50 + s);
    const auto inst = preprocess_ov(U, W);
    const auto g = build_gadget_graph(inst);
    const auto adj = g.adjacency();
    const auto& u = inst.U[0];
    const auto& w = inst.W[0];
    const std::size_t p0 = 1, q0 = 5;  // first box on P after A, on Q after the approach
    for (std::size_t i = 0; i + 1 < inst.d; ++i) {
      const bool person_waits = u[i] == 0;
      const bool person_leads = u[i + 1] == 0;
      const std::pair<int, int> moves[] = {
          person_waits ? std::pair{0, 1} : std::pair{1, 0},
          person_waits ? std::pair{1, 2} : std::pair{2, 1},
          {2, 2},
          person_leads ? std::pair{3, 2} : std::pair{2, 3},
          person_leads ? std::pair{4, 3} : std::pair{3, 4},
          {4, 4}};
      for (auto [dp, dq] : moves) {
        const std::size_t pv = g.P[p0 + 4 * i + dp], qv = g.Q[q0 + 4 * i + dq];
        EXPECT_LE(bfs_distances(adj, pv)[qv], 4) << "seed " << s << " box " << i;
      }
    }
  }
}
