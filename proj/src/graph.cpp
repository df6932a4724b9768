#include "nbc/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace nbc {

ParseError::ParseError(Kind kind, std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

// ---------------------------------------------------------------------------
// VertexSet

VertexSet::VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet::VertexSet(std::initializer_list<Vertex> members)
    : VertexSet(std::vector<Vertex>(members)) {}

VertexSet VertexSet::from_mask(std::uint64_t mask) {
  VertexSet out;
  while (mask != 0) {
    out.members_.push_back(static_cast<Vertex>(__builtin_ctzll(mask)));
    mask &= mask - 1;
  }
  return out;
}

std::uint64_t VertexSet::to_mask() const {
  std::uint64_t mask = 0;
  for (Vertex v : members_) {
    if (v >= 64) throw ContractViolation("VertexSet::to_mask: member exceeds 63");
    mask |= std::uint64_t{1} << v;
  }
  return mask;
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

VertexSet VertexSet::intersect(const VertexSet& other) const {
  VertexSet out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(out.members_));
  return out;
}

VertexSet VertexSet::unite(const VertexSet& other) const {
  VertexSet out;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(out.members_));
  return out;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

std::string to_string(const VertexSet& set) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out << ',';
    out << set[i];
  }
  out << '}';
  return out.str();
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(int n) : Graph(n, std::span<const Edge>{}) {}

Graph::Graph(int n, std::span<const Edge> edges) : n_(n) {
  if (n < 0) throw ContractViolation("Graph: negative order");
  std::vector<Edge> arcs;
  arcs.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ContractViolation("Graph: edge endpoint out of range");
    }
    if (u == v) throw ContractViolation("Graph: self-loop");
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  targets_.reserve(arcs.size());
  for (auto [u, v] : arcs) {
    ++offsets_[u + 1];
    targets_.push_back(v);
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());

  if (n <= kMaskLimit) {
    masks_.assign(n, 0);
    for (auto [u, v] : arcs) masks_[u] |= std::uint64_t{1} << v;
  }
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  auto nb = neighbours(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(size());
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbours(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

int min_degree(const Graph& g) {
  int best = g.order() == 0 ? 0 : g.degree(0);
  for (Vertex v = 1; v < g.order(); ++v) best = std::min(best, g.degree(v));
  return best;
}

int max_degree(const Graph& g) {
  int best = 0;
  for (Vertex v = 0; v < g.order(); ++v) best = std::max(best, g.degree(v));
  return best;
}

std::vector<VertexSet> components(const Graph& g) {
  std::vector<VertexSet> out;
  std::vector<char> seen(g.order(), 0);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> members;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (Vertex w : g.neighbours(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    out.emplace_back(std::move(members));
  }
  return out;
}

bool is_connected(const Graph& g) { return g.order() <= 1 || components(g).size() == 1; }

std::optional<std::vector<int>> bipartition(const Graph& g) {
  std::vector<int> side(g.order(), -1);
  std::deque<Vertex> queue;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      for (Vertex w : g.neighbours(v)) {
        if (side[w] == -1) {
          side[w] = 1 - side[v];
          queue.push_back(w);
        } else if (side[w] == side[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

int degeneracy(const Graph& g) {
  const int n = g.order();
  std::vector<int> deg(n);
  std::vector<char> removed(n, 0);
  for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
  int best = 0;
  for (int step = 0; step < n; ++step) {
    Vertex pick = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (!removed[v] && (pick == -1 || deg[v] < deg[pick])) pick = v;
    }
    best = std::max(best, deg[pick]);
    removed[pick] = 1;
    for (Vertex w : g.neighbours(pick)) {
      if (!removed[w]) --deg[w];
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Distances

std::vector<int> bfs_distances(const Graph& g, Vertex source, int max_depth) {
  if (source < 0 || source >= g.order()) throw ContractViolation("bfs: source out of range");
  std::vector<int> dist(g.order(), kUnreachable);
  std::vector<Vertex> frontier{source};
  dist[source] = 0;
  for (int depth = 1; !frontier.empty() && (max_depth < 0 || depth <= max_depth); ++depth) {
    std::vector<Vertex> next;
    for (Vertex v : frontier) {
      for (Vertex w : g.neighbours(v)) {
        if (dist[w] == kUnreachable) {
          dist[w] = depth;
          next.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

VertexSet closed_ball(const Graph& g, Vertex v, int r) {
  if (r < 0) throw ContractViolation("closed_ball: negative radius");
  auto dist = bfs_distances(g, v, r);
  std::vector<Vertex> out;
  for (Vertex w = 0; w < g.order(); ++w) {
    if (dist[w] != kUnreachable) out.push_back(w);
  }
  return VertexSet(std::move(out));
}

VertexSet exact_sphere(const Graph& g, Vertex v, int r) {
  if (r < 0) throw ContractViolation("exact_sphere: negative radius");
  auto dist = bfs_distances(g, v, r);
  std::vector<Vertex> out;
  for (Vertex w = 0; w < g.order(); ++w) {
    if (dist[w] == r) out.push_back(w);
  }
  return VertexSet(std::move(out));
}

DistanceTable::DistanceTable(const Graph& g) : n_(g.order()) {
  if (n_ > kMaxOrder) throw GuardExceeded("DistanceTable: order exceeds 2048");
  dist_.resize(static_cast<std::size_t>(n_) * n_);
  for (Vertex s = 0; s < n_; ++s) {
    auto row = bfs_distances(g, s);
    std::copy(row.begin(), row.end(), dist_.begin() + static_cast<std::ptrdiff_t>(s) * n_);
  }
}

// ---------------------------------------------------------------------------
// Subgraphs

SubgraphSpec SubgraphSpec::induced(const Graph& g, const VertexSet& vertices) {
  SubgraphSpec spec{vertices, {}};
  for (auto [u, v] : g.edges()) {
    if (vertices.contains(u) && vertices.contains(v)) spec.edges.emplace_back(u, v);
  }
  return spec;
}

SubgraphSpec SubgraphSpec::whole(const Graph& g) {
  std::vector<Vertex> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return SubgraphSpec{VertexSet(std::move(all)), g.edges()};
}

void validate(const Graph& host, const SubgraphSpec& spec) {
  for (Vertex v : spec.vertices) {
    if (v < 0 || v >= host.order()) throw ContractViolation("subgraph: vertex out of range");
  }
  for (auto [u, v] : spec.edges) {
    if (!spec.vertices.contains(u) || !spec.vertices.contains(v)) {
      throw ContractViolation("subgraph: edge endpoint outside vertex set");
    }
    if (!host.adjacent(u, v)) throw ContractViolation("subgraph: edge not in host");
  }
}

RealizedSubgraph realize_subgraph(const Graph& host, const SubgraphSpec& spec) {
  validate(host, spec);
  std::vector<Vertex> relabel(host.order(), -1);
  RealizedSubgraph out;
  for (Vertex v : spec.vertices) {
    relabel[v] = static_cast<Vertex>(out.original.size());
    out.original.push_back(v);
  }
  std::vector<Edge> edges;
  edges.reserve(spec.edges.size());
  for (auto [u, v] : spec.edges) edges.emplace_back(relabel[u], relabel[v]);
  out.graph = Graph(static_cast<int>(out.original.size()), edges);
  return out;
}

BlowupGraph::BlowupGraph(const Graph& base, int copies)
    : base_order_(base.order()), copies_(copies) {
  if (copies < 1) throw ContractViolation("blowup: copies must be positive");
  std::vector<Edge> edges;
  for (auto [u, v] : base.edges()) {
    for (int i = 1; i <= copies; ++i) {
      for (int j = 1; j <= copies; ++j) edges.emplace_back(copy(u, i), copy(v, j));
    }
  }
  graph_ = Graph(base.order() * copies, edges);
}

BlowupGraph blowup(const Graph& g, int copies) { return BlowupGraph(g, copies); }

}  // namespace nbc
