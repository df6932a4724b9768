#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>

#include "nbc/rng.hpp"
#include "nbc/wcol.hpp"

namespace nbc {
namespace {

// u is weakly r-reachable from v when some path of length <= r from v ends
// at u and u has the least rank on it. Enumerates simple paths directly.
std::vector<VertexSet> wreach_oracle(const Graph& g, const Ordering& order, int r) {
  const int n = g.order();
  std::vector<VertexSet> out(n);
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Vertex> found;
    std::vector<Vertex> path{v};
    std::function<void()> dfs = [&] {
      const Vertex end = path.back();
      bool least = true;
      for (Vertex w : path) least = least && order.rank(end) <= order.rank(w);
      if (least) found.push_back(end);
      if (static_cast<int>(path.size()) > r) return;
      for (Vertex w : g.neighbours(end)) {
        if (std::find(path.begin(), path.end(), w) != path.end()) continue;
        path.push_back(w);
        dfs();
        path.pop_back();
      }
    };
    dfs();
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    out[v] = VertexSet(found);
  }
  return out;
}

int wcol_oracle(const Graph& g, int r) {
  std::vector<Vertex> seq(g.order());
  std::iota(seq.begin(), seq.end(), 0);
  int best = g.order() + 1;
  do {
    int worst = 0;
    for (const auto& s : wreach_oracle(g, Ordering::from_sequence(seq), r)) {
      worst = std::max(worst, static_cast<int>(s.size()));
    }
    best = std::min(best, worst);
  } while (std::next_permutation(seq.begin(), seq.end()));
  return best;
}

Ordering random_order(int n, Rng& rng) {
  std::vector<Vertex> seq(n);
  std::iota(seq.begin(), seq.end(), 0);
  rng.shuffle(seq);
  return Ordering::from_sequence(seq);
}

// Vertices of every shortest v-x path, enumerated path by path.
VertexSet shortest_path_union(const Graph& g, Vertex v, const VertexSet& targets) {
  std::vector<Vertex> found;
  const auto dist = bfs_distances(g, v);
  for (Vertex x : targets) {
    std::vector<Vertex> path{v};
    std::function<void()> dfs = [&] {
      if (path.back() == x) {
        found.insert(found.end(), path.begin(), path.end());
        return;
      }
      if (static_cast<int>(path.size()) > dist[x]) return;
      for (Vertex w : g.neighbours(path.back())) {
        if (std::find(path.begin(), path.end(), w) != path.end()) continue;
        path.push_back(w);
        dfs();
        path.pop_back();
      }
    };
    if (dist[x] != kUnreachable) dfs();
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return VertexSet(found);
}

TEST(Ordering, RanksAndSerialisation) {
  auto o = Ordering::from_sequence({2, 0, 1});
  EXPECT_EQ(o.rank(2), 0);
  EXPECT_EQ(o.at(2), 1);
  EXPECT_EQ(Ordering::from_ranks({1, 2, 0}), o);
  EXPECT_EQ(write_ordering(o), "2 0 1\n");
  EXPECT_EQ(parse_ordering("2 0 1", 3), o);
  EXPECT_THROW(Ordering::from_sequence({0, 0, 1}), ContractViolation);
  EXPECT_THROW(parse_ordering("0 1", 3), ContractViolation);
}

TEST(WReach, Examples) {
  auto idx = wreach(path_graph(3), Ordering::identity(3), 1);
  EXPECT_EQ(idx[0], VertexSet({0}));
  EXPECT_EQ(idx[1], VertexSet({0, 1}));
  EXPECT_EQ(idx[2], VertexSet({1, 2}));
  EXPECT_EQ(idx.max_size(), 2);
  auto zero = wreach(cycle_graph(5), Ordering::identity(5), 0);
  for (Vertex v = 0; v < 5; ++v) EXPECT_EQ(zero[v], VertexSet({v}));
  EXPECT_EQ(wreach(complete_graph(3), Ordering::from_sequence({1, 2, 0}), 1).max_size(), 3);
  EXPECT_EQ(idx.of_set({0, 2}), VertexSet({0, 1, 2}));
}

TEST(WReach, MatchesPathEnumeration) {
  Rng rng(21);
  for (int n = 2; n <= 7; ++n) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      Graph g = generate(Family::erdos_renyi, {.n = n, .p = 0.45}, seed * 31 + n);
      for (int k = 0; k < 10; ++k) {
        Ordering o = random_order(n, rng);
        for (int r = 0; r <= 3; ++r) {
          EXPECT_EQ(wreach(g, o, r).sets, wreach_oracle(g, o, r));
        }
      }
    }
  }
}

TEST(Wcol, GivenOrderExamples) {
  Rng rng(22);
  EXPECT_EQ(wcol_given_order(Graph(5), random_order(5, rng), 3), 1);
  EXPECT_EQ(wcol_given_order(path_graph(3), Ordering::identity(3), 1), 2);
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(wcol_given_order(complete_graph(n), random_order(n, rng), 1), n);
  }
}

TEST(Wcol, ExactExamples) {
  EXPECT_EQ(wcol_exact(complete_graph(4), 2).value, 4);
  EXPECT_EQ(wcol_exact(path_graph(3), 1).value, 2);
  EXPECT_EQ(wcol_exact(Graph(1), 3).value, 1);
  EXPECT_THROW(wcol_exact(path_graph(12), 2), GuardExceeded);
}

TEST(Wcol, ExactMatchesAllOrdersAndWitnessAchievesValue) {
  for (int n = 1; n <= 6; ++n) {
    for (const Graph& g : small_graphs(n, {.connected_only = true, .unique_up_to_isomorphism = true})) {
      for (int r = 1; r <= 4; ++r) {
        auto result = wcol_exact(g, r);
        ASSERT_EQ(result.value, wcol_oracle(g, r)) << write_graph(g) << " r=" << r;
        EXPECT_EQ(wcol_given_order(g, result.order, r), result.value);
      }
    }
  }
}

TEST(Wcol, WitnessIsLexicographicallyLeastOptimalOrder) {
  for (const Graph& g : small_graphs(5, {.connected_only = true, .unique_up_to_isomorphism = true})) {
    auto result = wcol_exact(g, 2);
    std::vector<Vertex> seq(g.order());
    std::iota(seq.begin(), seq.end(), 0);
    do {
      if (wcol_given_order(g, Ordering::from_sequence(seq), 2) == result.value) break;
    } while (std::next_permutation(seq.begin(), seq.end()));
    EXPECT_EQ(result.order.sequence(), seq);
  }
}

TEST(Wcol, RadiusOneIsDegeneracyPlusOne) {
  for (int n = 1; n <= 7; ++n) {
    for (const Graph& g : small_graphs(n, {.unique_up_to_isomorphism = true})) {
      EXPECT_EQ(wcol_exact(g, 1).value, degeneracy(g) + 1);
    }
  }
}

TEST(WcolHeuristic, BoundsAndDeterminism) {
  for (auto s : {WcolStrategy::smallest_degree_last, WcolStrategy::descending_degree,
                 WcolStrategy::local_search}) {
    auto p3 = wcol_heuristic(path_graph(3), 1, s);
    EXPECT_GE(p3.value, 2);
    EXPECT_LE(p3.value, 3);
    EXPECT_EQ(wcol_heuristic(Graph(4), 2, s).value, 1);
    EXPECT_EQ(strategy_from_name(strategy_name(s)), s);
  }
  Graph grid = grid_graph(3, 3);
  const int exact = wcol_exact(grid, 2).value;
  for (auto s : {WcolStrategy::smallest_degree_last, WcolStrategy::descending_degree,
                 WcolStrategy::local_search}) {
    auto h = wcol_heuristic(grid, 2, s, {.seed = 5});
    EXPECT_GE(h.value, exact);
    EXPECT_EQ(wcol_given_order(grid, h.order, 2), h.value);
  }
  auto a = wcol_heuristic(grid_graph(4, 4), 2, WcolStrategy::local_search, {.seed = 9, .budget = 500});
  auto b = wcol_heuristic(grid_graph(4, 4), 2, WcolStrategy::local_search, {.seed = 9, .budget = 500});
  EXPECT_EQ(a.order, b.order);
  EXPECT_FALSE(strategy_from_name("greedy"));
}

TEST(WitnessBundle, StarExample) {
  Graph star = star_graph(3);
  auto order = Ordering::from_sequence({1, 2, 3, 0});
  auto bundle = witness_bundle(star, order, {1, 2, 3}, 1);
  EXPECT_EQ(bundle.class_count, 4);
  EXPECT_FALSE(bundle.has_empty_class);
  ASSERT_EQ(bundle.classes.size(), 4u);
  std::vector<Vertex> reps;
  for (const auto& cls : bundle.classes) reps.push_back(cls.representative);
  std::sort(reps.begin(), reps.end());
  EXPECT_EQ(reps, (std::vector<Vertex>{0, 1, 2, 3}));
}

TEST(WitnessBundle, IsolatedVertexExample) {
  std::vector<Edge> edges{{1, 2}};
  Graph g(3, edges);
  auto bundle = witness_bundle(g, Ordering::identity(3), {0}, 2);
  EXPECT_TRUE(bundle.has_empty_class);
  ASSERT_EQ(bundle.classes.size(), 1u);
  EXPECT_EQ(bundle.classes[0].y, VertexSet({0}));
}

TEST(WitnessBundle, PathExampleAgainstOracle) {
  Graph p4 = path_graph(4);
  auto bundle = witness_bundle(p4, Ordering::identity(4), {0}, 2);
  EXPECT_TRUE(bundle.has_empty_class);
  ASSERT_EQ(bundle.classes.size(), 1u);
  const auto& cls = bundle.classes[0];
  EXPECT_EQ(cls.trace, VertexSet({0}));
  EXPECT_EQ(cls.representative, 0);
  EXPECT_EQ(cls.closure, VertexSet({0}));
  EXPECT_EQ(cls.y, VertexSet({0}));
}

TEST(WitnessBundle, ClosureMatchesExplicitShortestPaths) {
  Rng rng(23);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Graph g = generate(Family::erdos_renyi, {.n = 8, .p = 0.35}, seed);
    for (int r = 1; r <= 3; ++r) {
      Ordering o = random_order(8, rng);
      const VertexSet x = VertexSet::from_mask(rng.below(255) + 1);
      auto bundle = witness_bundle(g, o, x, r);
      for (const auto& cls : bundle.classes) {
        EXPECT_EQ(cls.trace, closed_ball(g, cls.representative, r).intersect(x));
        EXPECT_EQ(cls.closure, shortest_path_union(g, cls.representative, cls.trace));
        EXPECT_TRUE(cls.y.contains(cls.last));
        for (Vertex y : cls.y) EXPECT_LE(o.rank(y), o.rank(cls.last));
      }
    }
  }
}

TEST(WitnessBundle, PropertiesHoldOnRandomInstances) {
  Rng rng(24);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Graph g = generate(Family::random_bounded_degree, {.n = 10, .max_degree = 4}, seed);
    for (int r = 1; r <= 2; ++r) {
      WitnessBundleBuilder builder(g, random_order(10, rng), r);
      for (int k = 0; k < 10; ++k) {
        const VertexSet x = VertexSet::from_mask(rng.below(1023) + 1);
        auto check = builder.check(builder.build(x), x);
        EXPECT_TRUE(check.all()) << check.first_failure;
      }
    }
  }
}

TEST(WitnessBundle, CheckDetectsTamperedBundles) {
  Graph g = grid_graph(3, 3);
  WitnessBundleBuilder builder(g, Ordering::identity(9), 1);
  const VertexSet x{0, 8};
  auto bundle = builder.build(x);
  ASSERT_TRUE(builder.check(bundle, x).all());
  for (auto& cls : bundle.classes) {
    cls.y = VertexSet{};
  }
  auto broken = builder.check(bundle, x);
  EXPECT_FALSE(broken.all());
  EXPECT_FALSE(broken.first_failure.empty());
}

}  // namespace
}  // namespace nbc
