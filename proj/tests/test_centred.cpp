#include <gtest/gtest.h>

#include <functional>
#include <map>

#include "nbc/centred.hpp"
#include "nbc/rng.hpp"

namespace nbc {
namespace {

bool connected_mask(const Graph& g, std::uint64_t s) {
  if (s == 0) return false;
  std::uint64_t seen = s & -s;
  std::uint64_t frontier = seen;
  while (frontier) {
    std::uint64_t next = 0;
    for (std::uint64_t f = frontier; f; f &= f - 1) next |= g.mask(std::countr_zero(f));
    next &= s & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == s;
}

// Every vertex subset; induced connectivity.
bool centred_oracle(const Graph& g, const Colouring& c, int r) {
  const int n = g.order();
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    if (!connected_mask(g, s)) continue;
    std::map<int, int> count;
    for (Vertex v = 0; v < n; ++v) {
      if (s >> v & 1) ++count[c[v]];
    }
    bool centre = false;
    for (auto [colour, k] : count) centre = centre || k == 1;
    if (!centre && static_cast<int>(count.size()) < r) return false;
  }
  return true;
}

// Connected subgraphs given by (vertex set, edge subset), not only induced.
bool centred_over_all_subgraphs(const Graph& g, const Colouring& c, int r) {
  const auto edges = g.edges();
  const int n = g.order();
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    std::vector<Edge> inside;
    for (auto e : edges) {
      if ((s >> e.first & 1) && (s >> e.second & 1)) inside.push_back(e);
    }
    for (std::uint64_t f = 0; f < (std::uint64_t{1} << inside.size()); ++f) {
      std::vector<Edge> chosen;
      for (std::size_t i = 0; i < inside.size(); ++i) {
        if (f >> i & 1) chosen.push_back(inside[i]);
      }
      Graph h(n, chosen);
      if (!connected_mask(h, s)) continue;
      std::map<int, int> count;
      for (Vertex v = 0; v < n; ++v) {
        if (s >> v & 1) ++count[c[v]];
      }
      bool centre = false;
      for (auto [colour, k] : count) centre = centre || k == 1;
      if (!centre && static_cast<int>(count.size()) < r) return false;
    }
  }
  return true;
}

int chi_oracle(const Graph& g, int r) {
  const int n = g.order();
  for (int k = 1;; ++k) {
    std::vector<int> colour(n, 0);
    while (true) {
      if (centred_oracle(g, Colouring(k, colour), r)) return k;
      int i = 0;
      while (i < n && ++colour[i] == k) colour[i++] = 0;
      if (i == n) break;
    }
  }
}

int treedepth_oracle(const Graph& g, std::uint64_t s) {
  if (s == 0) return 0;
  if (std::popcount(s) == 1) return 1;
  if (!connected_mask(g, s)) {
    int best = 0;
    std::uint64_t rest = s;
    while (rest) {
      // Component of the lowest remaining vertex.
      std::uint64_t comp = rest & -rest;
      std::uint64_t frontier = comp;
      while (frontier) {
        std::uint64_t next = 0;
        for (std::uint64_t f = frontier; f; f &= f - 1) next |= g.mask(std::countr_zero(f));
        next &= s & ~comp;
        comp |= next;
        frontier = next;
      }
      best = std::max(best, treedepth_oracle(g, comp));
      rest &= ~comp;
    }
    return best;
  }
  int best = 1 << 20;
  for (std::uint64_t f = s; f; f &= f - 1) {
    best = std::min(best, 1 + treedepth_oracle(g, s & ~(f & -f)));
  }
  return best;
}

TEST(Centred, Examples) {
  Colouring aba(2, {0, 1, 0});
  EXPECT_TRUE(is_r_centred(path_graph(3), aba, 4).is_centred);
  auto k2 = is_r_centred(complete_graph(2), Colouring(1, {0, 0}), 2);
  EXPECT_FALSE(k2.is_centred);
  ASSERT_TRUE(k2.witness);
  EXPECT_EQ(*k2.witness, VertexSet({0, 1}));
  Colouring injective(5, {4, 2, 0, 1, 3});
  EXPECT_TRUE(is_r_centred(complete_graph(5), injective, 9).is_centred);
  EXPECT_THROW(is_r_centred(path_graph(17), Colouring(1, std::vector<int>(17, 0)), 2),
               GuardExceeded);
}

TEST(Centred, MatchesSubsetOracleAndWitnessIsGenuine) {
  Rng rng(11);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Graph g = generate(Family::erdos_renyi, {.n = 7, .p = 0.4}, seed);
    const int palette = 1 + static_cast<int>(rng.below(5));
    std::vector<int> colour(7);
    for (int& x : colour) x = static_cast<int>(rng.below(palette));
    Colouring c(palette, colour);
    for (int r = 1; r <= 5; ++r) {
      auto verdict = is_r_centred(g, c, r);
      EXPECT_EQ(verdict.is_centred, centred_oracle(g, c, r));
      if (verdict.witness) {
        const std::uint64_t s = verdict.witness->to_mask();
        EXPECT_TRUE(connected_mask(g, s));
        std::map<int, int> count;
        for (Vertex v : *verdict.witness) ++count[c[v]];
        EXPECT_LT(static_cast<int>(count.size()), r);
        for (auto [colour_id, k] : count) EXPECT_GT(k, 1);
      }
    }
  }
}

TEST(Centred, InducedReadingAgreesWithAllSubgraphs) {
  Rng rng(12);
  for (int n = 1; n <= 5; ++n) {
    for (const Graph& g : small_graphs(n, {.unique_up_to_isomorphism = true})) {
      for (int trial = 0; trial < 3; ++trial) {
        std::vector<int> colour(n);
        for (int& x : colour) x = static_cast<int>(rng.below(3));
        Colouring c(3, colour);
        for (int r = 1; r <= 4; ++r) {
          EXPECT_EQ(is_r_centred(g, c, r).is_centred, centred_over_all_subgraphs(g, c, r));
        }
      }
    }
  }
}

TEST(Chi, Examples) {
  EXPECT_EQ(chi_r_exact(complete_graph(4), 2).value, 4);
  EXPECT_EQ(chi_r_exact(Graph(1), 3).value, 1);
  auto p3 = chi_r_exact(path_graph(3), 3);
  EXPECT_EQ(p3.value, 2);
  EXPECT_EQ(p3.witness.colour[0], p3.witness.colour[2]);
  EXPECT_NE(p3.witness.colour[0], p3.witness.colour[1]);
  EXPECT_THROW(chi_r_exact(path_graph(11), 2), GuardExceeded);
}

TEST(Chi, CompleteGraphsNeedAllColours) {
  for (int n = 1; n <= 6; ++n) {
    for (int r = 2; r <= 4; ++r) EXPECT_EQ(chi_r_exact(complete_graph(n), r).value, n);
  }
}

TEST(Chi, MatchesColouringEnumeration) {
  for (int n = 1; n <= 5; ++n) {
    for (const Graph& g : small_graphs(n, {.unique_up_to_isomorphism = true})) {
      for (int r = 1; r <= 4; ++r) {
        auto result = chi_r_exact(g, r);
        EXPECT_EQ(result.value, chi_oracle(g, r)) << write_graph(g) << " r=" << r;
        EXPECT_TRUE(centred_oracle(g, result.witness, r));
      }
    }
  }
}

TEST(Treedepth, Examples) {
  auto p3 = treedepth_exact(path_graph(3));
  EXPECT_EQ(p3.value, 2);
  EXPECT_EQ(p3.forest.parent[1], -1);
  EXPECT_EQ(treedepth_exact(complete_graph(4)).value, 4);
  EXPECT_EQ(treedepth_exact(Graph(5)).value, 1);
  // Paths on 2^k - 1 vertices have treedepth k.
  EXPECT_EQ(treedepth_exact(path_graph(7)).value, 3);
  EXPECT_EQ(treedepth_exact(path_graph(8)).value, 4);
}

TEST(Treedepth, MatchesRecursiveDefinitionAndForestsAreValid) {
  for (int n = 1; n <= 7; ++n) {
    for (const Graph& g : small_graphs(n, {.unique_up_to_isomorphism = true})) {
      auto exact = treedepth_exact(g);
      EXPECT_EQ(exact.value, treedepth_oracle(g, g.all_mask()));
      EXPECT_NO_THROW(validate(g, exact.forest));
      EXPECT_EQ(exact.forest.height(), exact.value);
      auto heuristic = treedepth_heuristic(g);
      EXPECT_FALSE(heuristic.exact);
      EXPECT_NO_THROW(validate(g, heuristic.forest));
      EXPECT_GE(heuristic.value, exact.value);
    }
  }
}

TEST(Forest, ValidationRejectsUncoveredEdges) {
  EliminationForest f;
  f.parent = {-1, -1, 1};
  f.depth = {1, 1, 2};
  EXPECT_THROW(validate(path_graph(3), f), ContractViolation);
  f.parent = {1, -1, 1};
  f.depth = {2, 1, 2};
  EXPECT_NO_THROW(validate(path_graph(3), f));
  EXPECT_TRUE(f.is_ancestor(1, 0));
  EXPECT_FALSE(f.is_ancestor(0, 2));
  EXPECT_EQ(f.roots(), VertexSet({1}));
  f.depth = {3, 1, 2};
  EXPECT_THROW(validate(path_graph(3), f), ContractViolation);
}

TEST(ForestColouring, Examples) {
  EliminationForest middle;
  middle.parent = {1, -1, 1};
  middle.depth = {2, 1, 2};
  auto c = centred_colouring_from_forest(path_graph(3), middle);
  EXPECT_EQ(c.palette, 2);
  EXPECT_EQ(c.colour[0], c.colour[2]);
  auto k4 = centred_colouring_from_forest(complete_graph(4), treedepth_exact(complete_graph(4)).forest);
  std::set<int> used(k4.colour.begin(), k4.colour.end());
  EXPECT_EQ(used.size(), 4u);
  EliminationForest star;
  star.parent = {-1, 0, 0, 0};
  star.depth = {1, 2, 2, 2};
  EXPECT_EQ(centred_colouring_from_forest(star_graph(3), star).palette, 2);
}

TEST(ForestColouring, CentredForEveryRadius) {
  for (int n = 1; n <= 6; ++n) {
    for (const Graph& g : small_graphs(n, {.unique_up_to_isomorphism = true})) {
      auto c = centred_colouring_from_forest(g, treedepth_exact(g).forest);
      EXPECT_TRUE(centred_oracle(g, c, n + 1));
      auto h = centred_colouring_from_forest(g, treedepth_heuristic(g).forest);
      EXPECT_TRUE(is_r_centred(g, h, n + 1).is_centred);
    }
  }
}

}  // namespace
}  // namespace nbc
