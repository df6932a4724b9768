#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nbc {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

// Raised when a caller breaks an operation's precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when an exponential search would exceed its instance-size guard.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { malformed, range, self_loop };
  ParseError(Kind kind, std::size_t line, const std::string& what);
  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

// Sorted, duplicate-free set of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<Vertex> members);
  VertexSet(std::initializer_list<Vertex> members);

  static VertexSet from_mask(std::uint64_t mask);
  std::uint64_t to_mask() const;

  bool contains(Vertex v) const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  Vertex operator[](std::size_t i) const { return members_[i]; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  const std::vector<Vertex>& members() const { return members_; }

  VertexSet intersect(const VertexSet& other) const;
  VertexSet unite(const VertexSet& other) const;
  bool is_subset_of(const VertexSet& other) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
};

std::string to_string(const VertexSet& set);

// Immutable undirected simple graph on vertices 0..n-1 in compressed
// adjacency form. Neighbour lists are sorted ascending.
class Graph {
 public:
  static constexpr int kMaskLimit = 64;

  Graph() = default;
  explicit Graph(int n);
  // Duplicate edges collapse; self-loops and out-of-range ids throw
  // ContractViolation.
  Graph(int n, std::span<const Edge> edges);

  int order() const { return n_; }
  std::size_t size() const { return targets_.size() / 2; }

  std::span<const Vertex> neighbours(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  int degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(Vertex u, Vertex v) const;

  // Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

  // Adjacency bitmask; only available when order() <= kMaskLimit.
  bool has_masks() const { return !masks_.empty() || n_ == 0; }
  std::uint64_t mask(Vertex v) const { return masks_[v]; }
  std::uint64_t all_mask() const {
    return n_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
  }

 private:
  int n_ = 0;
  std::vector<int> offsets_{0};
  std::vector<Vertex> targets_;
  std::vector<std::uint64_t> masks_;
};

int min_degree(const Graph& g);
int max_degree(const Graph& g);
bool is_connected(const Graph& g);
// Connected components as sorted vertex sets, ordered by smallest member.
std::vector<VertexSet> components(const Graph& g);
// Two-colouring sides when bipartite.
std::optional<std::vector<int>> bipartition(const Graph& g);
// Smallest k such that every subgraph has a vertex of degree <= k.
int degeneracy(const Graph& g);

// ---------------------------------------------------------------------------
// Distances and neighbourhoods.

inline constexpr int kUnreachable = -1;

// BFS distances from `source`; vertices farther than `max_depth` (when
// non-negative) are reported unreachable.
std::vector<int> bfs_distances(const Graph& g, Vertex source, int max_depth = -1);

// N^r[v]: vertices at distance <= r.
VertexSet closed_ball(const Graph& g, Vertex v, int r);
// N^r(v): vertices at distance exactly r.
VertexSet exact_sphere(const Graph& g, Vertex v, int r);

// Memoised all-pairs distance table (plain BFS per row).
class DistanceTable {
 public:
  static constexpr int kMaxOrder = 2048;
  explicit DistanceTable(const Graph& g);
  int operator()(Vertex u, Vertex v) const { return dist_[static_cast<std::size_t>(u) * n_ + v]; }
  int order() const { return n_; }

 private:
  int n_;
  std::vector<int> dist_;
};

// ---------------------------------------------------------------------------
// Subgraphs and products.

struct SubgraphSpec {
  VertexSet vertices;
  std::vector<Edge> edges;  // (u, v) with u < v, host ids

  static SubgraphSpec induced(const Graph& g, const VertexSet& vertices);
  static SubgraphSpec whole(const Graph& g);
};

// Throws ContractViolation unless every edge is a host edge inside `vertices`.
void validate(const Graph& host, const SubgraphSpec& spec);

struct RealizedSubgraph {
  Graph graph;
  std::vector<Vertex> original;  // new id -> host id
};

RealizedSubgraph realize_subgraph(const Graph& host, const SubgraphSpec& spec);

// G composed with the edgeless graph on `copies` vertices: vertex (v, i),
// 1 <= i <= copies, is stored as v * copies + (i - 1).
class BlowupGraph {
 public:
  BlowupGraph(const Graph& base, int copies);

  const Graph& graph() const { return graph_; }
  int base_order() const { return base_order_; }
  int copies() const { return copies_; }
  Vertex copy(Vertex v, int index) const { return v * copies_ + (index - 1); }
  Vertex base_of(Vertex x) const { return x / copies_; }
  int index_of(Vertex x) const { return x % copies_ + 1; }

 private:
  Graph graph_;
  int base_order_;
  int copies_;
};

BlowupGraph blowup(const Graph& g, int copies);

// ---------------------------------------------------------------------------
// Parsing and serialisation.

enum class GraphFormat { edge_list, dimacs };

Graph parse_graph(std::string_view text, GraphFormat format);
std::string write_graph(const Graph& g, GraphFormat format = GraphFormat::edge_list);

// ---------------------------------------------------------------------------
// Generators.

enum class Family {
  path,
  cycle,
  grid,
  complete,
  complete_bipartite,
  random_bounded_degree,
  erdos_renyi,
};

std::optional<Family> family_from_name(std::string_view name);
std::string_view family_name(Family family);

struct GeneratorParams {
  int n = 0;           // path, cycle, complete, random families
  int rows = 0;        // grid
  int cols = 0;        // grid
  int left = 0;        // complete-bipartite
  int right = 0;       // complete-bipartite
  int max_degree = 0;  // random-bounded-degree
  double p = 0.0;      // erdos-renyi
};

Graph generate(Family family, const GeneratorParams& params, std::uint64_t seed = 0);

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph grid_graph(int rows, int cols);
Graph complete_graph(int n);
Graph complete_bipartite_graph(int left, int right);
Graph edgeless_graph(int n);
Graph star_graph(int leaves);

// ---------------------------------------------------------------------------
// Small-graph enumeration.

inline constexpr int kMaxEnumerationOrder = 7;

struct EnumerationOptions {
  bool connected_only = false;
  // One representative per isomorphism class, in canonical labelling.
  bool unique_up_to_isomorphism = false;
};

// Labelled graphs on n vertices in ascending edge-mask order (pairs (i, j),
// i < j, ordered lexicographically; bit k is the k-th pair).
void for_each_small_graph(int n, const EnumerationOptions& options,
                          const std::function<void(const Graph&)>& visit);
std::vector<Graph> small_graphs(int n, const EnumerationOptions& options);

// Canonical adjacency encoding, invariant under relabelling. Requires
// order() <= 11.
std::uint64_t canonical_code(const Graph& g);
// As canonical_code, giving up after `max_leaves` discrete refinements.
std::optional<std::uint64_t> canonical_code_bounded(const Graph& g, std::uint64_t max_leaves);
// Labelled adjacency encoding (bit k = k-th vertex pair); order() <= 11.
std::uint64_t labelled_code(const Graph& g);
Graph canonical_form(const Graph& g);

}  // namespace nbc
