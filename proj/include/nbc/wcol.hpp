#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nbc/graph.hpp"

namespace nbc {

// Linear order on V(G) stored both ways: sequence() lists vertices by
// increasing rank.
class Ordering {
 public:
  Ordering() = default;
  static Ordering identity(int n);
  static Ordering from_sequence(std::vector<Vertex> sequence);
  static Ordering from_ranks(std::vector<int> ranks);

  int size() const { return static_cast<int>(sequence_.size()); }
  int rank(Vertex v) const { return rank_[v]; }
  Vertex at(int position) const { return sequence_[position]; }
  const std::vector<Vertex>& sequence() const { return sequence_; }

  friend bool operator==(const Ordering&, const Ordering&) = default;

 private:
  std::vector<Vertex> sequence_;
  std::vector<int> rank_;
};

// "v_0 v_1 ... v_{n-1}" in increasing rank.
std::string write_ordering(const Ordering& order);
Ordering parse_ordering(std::string_view text, int n);

struct WReachIndex {
  int radius = 0;
  Ordering order;
  std::vector<VertexSet> sets;  // sets[v] = WReach_r[v]

  const VertexSet& operator[](Vertex v) const { return sets[v]; }
  int max_size() const;
  // Union of WReach_r[x] over x in `x`.
  VertexSet of_set(const VertexSet& x) const;
};

// For each u by increasing rank, BFS from u to depth r inside the vertices
// ranked at least as high as u; u joins the set of everything reached.
WReachIndex wreach(const Graph& g, const Ordering& order, int r);

int wcol_given_order(const Graph& g, const Ordering& order, int r);

struct WcolResult {
  int value = 0;
  Ordering order;
};

inline constexpr int kWcolGuard = 11;

// Branch and bound over rank prefixes. The witness is the lexicographically
// least optimal vertex sequence.
WcolResult wcol_exact(const Graph& g, int r, int guard_n = kWcolGuard);

enum class WcolStrategy { smallest_degree_last, descending_degree, local_search };

std::optional<WcolStrategy> strategy_from_name(std::string_view name);
std::string_view strategy_name(WcolStrategy strategy);

struct LocalSearchOptions {
  std::uint64_t seed = 0;
  long long budget = -1;  // transposition trials; -1 means 200 * n
};

WcolResult wcol_heuristic(const Graph& g, int r, WcolStrategy strategy,
                          const LocalSearchOptions& options = {});

// ---------------------------------------------------------------------------
// Witness sets from the wcol bound on neighbourhood complexity.

struct WitnessClass {
  VertexSet trace;           // N^r[v] ∩ X, never empty
  Vertex representative;     // least vertex of the class
  VertexSet closure;         // vertices of all shortest representative-X paths
  VertexSet y;               // Y for this class
  Vertex last;               // member of y with the highest rank
};

struct WitnessBundle {
  int radius = 0;
  int class_count = 0;                // all twin classes, empty trace included
  bool has_empty_class = false;
  std::vector<WitnessClass> classes;  // classes with non-empty trace
  VertexSet y_union;
};

struct BundleCheck {
  bool size_bound = true;        // |Y| <= wcol_2r under the order
  bool hits_paths = true;        // Y meets every shortest path to X
  bool reachable_from_last = true;
  bool distances_separate = true;
  bool inside_reach_of_x = true;  // union of Y inside WReach_r[X]
  bool count_bound = true;        // class count <= 1/2 (2r+2)^w |last(Y)| + 1
  std::string first_failure;

  bool all() const {
    return size_bound && hits_paths && reachable_from_last && distances_separate &&
           inside_reach_of_x && count_bound;
  }
};

// Reuses distances and weak-reachability sets across many choices of X.
class WitnessBundleBuilder {
 public:
  WitnessBundleBuilder(const Graph& g, const Ordering& order, int r);

  WitnessBundle build(const VertexSet& x) const;
  BundleCheck check(const WitnessBundle& bundle, const VertexSet& x) const;

  const DistanceTable& distances() const { return dist_; }
  const WReachIndex& reach_r() const { return reach_r_; }
  const WReachIndex& reach_2r() const { return reach_2r_; }

 private:
  const Graph& g_;
  Ordering order_;
  int r_;
  DistanceTable dist_;
  WReachIndex reach_r_;
  WReachIndex reach_2r_;
};

WitnessBundle witness_bundle(const Graph& g, const Ordering& order, const VertexSet& x, int r);

}  // namespace nbc
