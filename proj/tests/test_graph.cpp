#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "nbc/graph.hpp"
#include "nbc/rng.hpp"

namespace nbc {
namespace {

// Floyd-Warshall on an adjacency matrix; kUnreachable for no path.
std::vector<std::vector<int>> all_pairs(const Graph& g) {
  const int n = g.order();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (Vertex v = 0; v < n; ++v) d[v][v] = 0;
  for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (int& x : row)
      if (x == inf) x = kUnreachable;
  return d;
}

// Degeneracy as the maximum, over vertex subsets, of the minimum degree.
int degeneracy_oracle(const Graph& g) {
  const int n = g.order();
  int best = 0;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    int low = n;
    for (Vertex v = 0; v < n; ++v) {
      if (!(s >> v & 1)) continue;
      low = std::min(low, std::popcount(g.mask(v) & s));
    }
    best = std::max(best, low);
  }
  return best;
}

Graph relabelled(const Graph& g, const std::vector<Vertex>& perm) {
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  return Graph(g.order(), edges);
}

TEST(VertexSet, SortsAndDeduplicates) {
  VertexSet s{3, 1, 3, 2};
  EXPECT_EQ(s.members(), (std::vector<Vertex>{1, 2, 3}));
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(0));
  EXPECT_EQ(VertexSet::from_mask(0b1010).members(), (std::vector<Vertex>{1, 3}));
  EXPECT_EQ(s.to_mask(), 0b1110u);
  EXPECT_EQ(s.intersect({2, 5}), VertexSet({2}));
  EXPECT_EQ(s.unite({0}), VertexSet({0, 1, 2, 3}));
  EXPECT_TRUE(VertexSet({1, 3}).is_subset_of(s));
}

TEST(Graph, CollapsesDuplicatesAndRejectsLoops) {
  std::vector<Edge> edges{{0, 1}, {1, 0}, {1, 2}};
  Graph g(3, edges);
  EXPECT_EQ(g.size(), 2u);
  EXPECT_TRUE(g.adjacent(1, 0));
  EXPECT_FALSE(g.adjacent(0, 2));
  std::vector<Edge> loop{{1, 1}};
  EXPECT_THROW(Graph(2, loop), ContractViolation);
  std::vector<Edge> out_of_range{{0, 5}};
  EXPECT_THROW(Graph(2, out_of_range), ContractViolation);
}

TEST(Graph, NeighboursSortedAndSymmetric) {
  Graph g = generate(Family::erdos_renyi, {.n = 12, .p = 0.4}, 7);
  for (Vertex v = 0; v < g.order(); ++v) {
    auto nb = g.neighbours(v);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    for (Vertex w : nb) EXPECT_TRUE(g.adjacent(w, v));
  }
}

TEST(Parse, EdgeListExamples) {
  Graph p3 = parse_graph("3 2\n0 1\n1 2\n", GraphFormat::edge_list);
  EXPECT_EQ(p3, path_graph(3));
  Graph k1 = parse_graph("1 0\n", GraphFormat::edge_list);
  EXPECT_EQ(k1.order(), 1);
  EXPECT_EQ(k1.size(), 0u);
  try {
    parse_graph("2 1\n0 0\n", GraphFormat::edge_list);
    FAIL() << "self-loop accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::self_loop);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Parse, ErrorKinds) {
  auto kind_of = [](std::string_view text, GraphFormat f) {
    try {
      parse_graph(text, f);
    } catch (const ParseError& e) {
      return static_cast<int>(e.kind());
    }
    return -1;
  };
  EXPECT_EQ(kind_of("3 1\n0 7\n", GraphFormat::edge_list), static_cast<int>(ParseError::Kind::range));
  EXPECT_EQ(kind_of("3 2\n0 1\n", GraphFormat::edge_list), static_cast<int>(ParseError::Kind::malformed));
  EXPECT_EQ(kind_of("3 1\n0 x\n", GraphFormat::edge_list), static_cast<int>(ParseError::Kind::malformed));
  EXPECT_EQ(kind_of("e 1 2\n", GraphFormat::dimacs), static_cast<int>(ParseError::Kind::malformed));
  EXPECT_EQ(kind_of("", GraphFormat::edge_list), static_cast<int>(ParseError::Kind::malformed));
}

TEST(Parse, RoundTripBothFormats) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = generate(Family::erdos_renyi, {.n = 9, .p = 0.35}, seed);
    for (auto f : {GraphFormat::edge_list, GraphFormat::dimacs}) {
      EXPECT_EQ(parse_graph(write_graph(g, f), f), g);
    }
  }
  Graph d = parse_graph("c comment\np edge 3 2\ne 1 2\ne 2 3\n", GraphFormat::dimacs);
  EXPECT_EQ(d, path_graph(3));
}

TEST(Distances, BallAndSphereExamples) {
  Graph p3 = path_graph(3);
  EXPECT_EQ(closed_ball(p3, 1, 0), VertexSet({1}));
  EXPECT_EQ(closed_ball(p3, 1, 1), VertexSet({0, 1, 2}));
  EXPECT_EQ(closed_ball(cycle_graph(5), 0, 2).size(), 5u);
  EXPECT_EQ(exact_sphere(p3, 0, 2), VertexSet({2}));
  EXPECT_TRUE(exact_sphere(complete_graph(4), 0, 2).empty());
  EXPECT_EQ(exact_sphere(star_graph(3), 0, 1), VertexSet({1, 2, 3}));
}

TEST(Distances, BfsMatchesFloydWarshall) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = generate(Family::erdos_renyi, {.n = 10, .p = 0.2}, seed);
    auto oracle = all_pairs(g);
    DistanceTable table(g);
    for (Vertex u = 0; u < g.order(); ++u) {
      auto d = bfs_distances(g, u);
      for (Vertex v = 0; v < g.order(); ++v) {
        EXPECT_EQ(d[v], oracle[u][v]);
        EXPECT_EQ(table(u, v), oracle[u][v]);
      }
      auto bounded = bfs_distances(g, u, 2);
      for (Vertex v = 0; v < g.order(); ++v) {
        const int expect = oracle[u][v] != kUnreachable && oracle[u][v] <= 2 ? oracle[u][v] : kUnreachable;
        EXPECT_EQ(bounded[v], expect);
      }
    }
  }
}

TEST(Structure, DegeneracyMatchesSubsetOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Graph g = generate(Family::erdos_renyi, {.n = 9, .p = 0.45}, seed);
    EXPECT_EQ(degeneracy(g), degeneracy_oracle(g)) << write_graph(g);
  }
}

TEST(Structure, ComponentsAndBipartition) {
  std::vector<Edge> edges{{0, 1}, {2, 3}, {3, 4}};
  Graph g(6, edges);
  auto comps = components(g);
  ASSERT_EQ(comps.size(), 3u);
  EXPECT_EQ(comps[0], VertexSet({0, 1}));
  EXPECT_EQ(comps[2], VertexSet({5}));
  EXPECT_FALSE(is_connected(g));
  EXPECT_TRUE(bipartition(g).has_value());
  EXPECT_FALSE(bipartition(cycle_graph(5)).has_value());
  auto sides = bipartition(complete_bipartite_graph(2, 3));
  ASSERT_TRUE(sides);
  for (auto [u, v] : complete_bipartite_graph(2, 3).edges()) EXPECT_NE((*sides)[u], (*sides)[v]);
  EXPECT_EQ(min_degree(star_graph(3)), 1);
  EXPECT_EQ(max_degree(star_graph(3)), 3);
}

TEST(Subgraph, RealizeExamples) {
  Graph k3 = complete_graph(3);
  SubgraphSpec spec{{0, 1, 2}, {{0, 1}, {1, 2}}};
  auto sub = realize_subgraph(k3, spec);
  EXPECT_EQ(sub.graph, path_graph(3));
  EXPECT_EQ(realize_subgraph(k3, SubgraphSpec::whole(k3)).graph, k3);
  Graph c4 = cycle_graph(4);
  auto p = realize_subgraph(c4, SubgraphSpec::induced(c4, {1, 2, 3}));
  EXPECT_EQ(p.graph.size(), 2u);
  EXPECT_EQ(p.original, (std::vector<Vertex>{1, 2, 3}));
  SubgraphSpec bad{{0, 1}, {{0, 2}}};
  EXPECT_THROW(validate(k3, bad), ContractViolation);
}

TEST(Blowup, Examples) {
  auto b = blowup(complete_graph(2), 2);
  EXPECT_EQ(canonical_code(b.graph()), canonical_code(cycle_graph(4)));
  auto p = blowup(path_graph(3), 2);
  EXPECT_EQ(p.graph().order(), 6);
  EXPECT_EQ(p.graph().size(), 8u);
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      EXPECT_TRUE(p.graph().adjacent(p.copy(0, i), p.copy(1, j)));
      EXPECT_TRUE(p.graph().adjacent(p.copy(1, i), p.copy(2, j)));
    }
  }
  EXPECT_FALSE(p.graph().adjacent(p.copy(0, 1), p.copy(0, 2)));
  EXPECT_EQ(p.base_of(p.copy(2, 2)), 2);
  EXPECT_EQ(p.index_of(p.copy(2, 2)), 2);
  Graph g = generate(Family::erdos_renyi, {.n = 7, .p = 0.5}, 3);
  EXPECT_EQ(blowup(g, 1).graph(), g);
}

TEST(Generate, FamiliesAndDeterminism) {
  EXPECT_EQ(generate(Family::path, {.n = 3}), path_graph(3));
  EXPECT_EQ(generate(Family::complete, {.n = 4}).size(), 6u);
  Graph grid = generate(Family::grid, {.rows = 3, .cols = 3});
  EXPECT_EQ(grid.order(), 9);
  EXPECT_EQ(grid.size(), 12u);
  Graph g4 = grid_graph(4, 4);
  EXPECT_EQ(g4.order(), 16);
  EXPECT_EQ(g4.size(), 24u);
  Graph a = generate(Family::random_bounded_degree, {.n = 20, .max_degree = 3}, 11);
  Graph b = generate(Family::random_bounded_degree, {.n = 20, .max_degree = 3}, 11);
  EXPECT_EQ(a, b);
  EXPECT_LE(max_degree(a), 3);
  EXPECT_EQ(generate(Family::erdos_renyi, {.n = 15, .p = 0.3}, 5),
            generate(Family::erdos_renyi, {.n = 15, .p = 0.3}, 5));
  EXPECT_EQ(family_from_name("complete-bipartite"), Family::complete_bipartite);
  EXPECT_FALSE(family_from_name("hypercube"));
}

TEST(Enumerate, LabelledCounts) {
  EXPECT_EQ(small_graphs(1, {}).size(), 1u);
  EXPECT_EQ(small_graphs(2, {}).size(), 2u);
  EXPECT_EQ(small_graphs(2, {.connected_only = true}).size(), 1u);
  EXPECT_EQ(small_graphs(3, {.connected_only = true}).size(), 4u);
  // Connected labelled graphs on 4 and 5 vertices.
  EXPECT_EQ(small_graphs(4, {.connected_only = true}).size(), 38u);
  EXPECT_EQ(small_graphs(5, {.connected_only = true}).size(), 728u);
  EXPECT_THROW(small_graphs(8, {}), GuardExceeded);
}

TEST(Enumerate, IsomorphismClassCounts) {
  const std::size_t all[] = {1, 2, 4, 11, 34, 156, 1044};
  const std::size_t connected[] = {1, 1, 2, 6, 21, 112, 853};
  for (int n = 1; n <= 7; ++n) {
    EXPECT_EQ(small_graphs(n, {.unique_up_to_isomorphism = true}).size(), all[n - 1]) << n;
    EXPECT_EQ(small_graphs(n, {.connected_only = true, .unique_up_to_isomorphism = true}).size(),
              connected[n - 1])
        << n;
  }
}

TEST(Canonical, InvariantUnderRelabelling) {
  Rng rng(4);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Graph g = generate(Family::erdos_renyi, {.n = 8, .p = 0.4}, seed);
    std::vector<Vertex> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    Graph h = relabelled(g, perm);
    EXPECT_EQ(canonical_code(g), canonical_code(h));
    EXPECT_EQ(canonical_form(g), canonical_form(h));
  }
  EXPECT_NE(canonical_code(path_graph(4)), canonical_code(star_graph(3)));
  // Highly symmetric graphs are where a bounded search may give up.
  EXPECT_TRUE(canonical_code_bounded(path_graph(5), 1000).has_value());
}

TEST(Canonical, SeparatesAllClassesOnSixVertices) {
  std::set<std::uint64_t> codes;
  for (const Graph& g : small_graphs(6, {.unique_up_to_isomorphism = true})) {
    codes.insert(canonical_code(g));
  }
  EXPECT_EQ(codes.size(), 156u);
}

}  // namespace
}  // namespace nbc
