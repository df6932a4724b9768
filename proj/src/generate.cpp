#include <algorithm>
#include <map>
#include <numeric>

#include "nbc/graph.hpp"
#include "nbc/rng.hpp"

namespace nbc {

Graph path_graph(int n) {
  if (n < 1) throw ContractViolation("path: n must be positive");
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, edges);
}

Graph cycle_graph(int n) {
  if (n < 3) throw ContractViolation("cycle: n must be at least 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph(n, edges);
}

Graph grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1) throw ContractViolation("grid: dimensions must be positive");
  std::vector<Edge> edges;
  auto id = [cols](int i, int j) { return static_cast<Vertex>(i * cols + j); };
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (j + 1 < cols) edges.emplace_back(id(i, j), id(i, j + 1));
      if (i + 1 < rows) edges.emplace_back(id(i, j), id(i + 1, j));
    }
  }
  return Graph(rows * cols, edges);
}

Graph complete_graph(int n) {
  if (n < 1) throw ContractViolation("complete: n must be positive");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph(n, edges);
}

Graph complete_bipartite_graph(int left, int right) {
  if (left < 0 || right < 0 || left + right < 1) {
    throw ContractViolation("complete-bipartite: invalid side sizes");
  }
  std::vector<Edge> edges;
  for (Vertex u = 0; u < left; ++u) {
    for (Vertex v = 0; v < right; ++v) edges.emplace_back(u, left + v);
  }
  return Graph(left + right, edges);
}

Graph edgeless_graph(int n) {
  if (n < 1) throw ContractViolation("edgeless: n must be positive");
  return Graph(n);
}

Graph star_graph(int leaves) { return complete_bipartite_graph(1, leaves); }

namespace {

Graph random_bounded_degree(int n, int max_degree, std::uint64_t seed) {
  if (n < 1 || max_degree < 0) throw ContractViolation("random-bounded-degree: invalid params");
  Rng rng(seed);
  std::vector<int> deg(n, 0);
  std::vector<Edge> edges;
  const long long trials = static_cast<long long>(n) * std::max(max_degree, 1) * 2;
  for (long long t = 0; t < trials && n > 1; ++t) {
    auto u = static_cast<Vertex>(rng.below(n));
    auto v = static_cast<Vertex>(rng.below(n));
    if (u == v || deg[u] >= max_degree || deg[v] >= max_degree) continue;
    Edge e{std::min(u, v), std::max(u, v)};
    if (std::find(edges.begin(), edges.end(), e) != edges.end()) continue;
    edges.push_back(e);
    ++deg[u];
    ++deg[v];
  }
  return Graph(n, edges);
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 1 || !(p >= 0.0 && p <= 1.0)) throw ContractViolation("erdos-renyi: invalid params");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.chance(p)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

constexpr std::pair<Family, std::string_view> kFamilyNames[] = {
    {Family::path, "path"},
    {Family::cycle, "cycle"},
    {Family::grid, "grid"},
    {Family::complete, "complete"},
    {Family::complete_bipartite, "complete-bipartite"},
    {Family::random_bounded_degree, "random-bounded-degree"},
    {Family::erdos_renyi, "erdos-renyi"},
};

}  // namespace

std::optional<Family> family_from_name(std::string_view name) {
  for (auto [family, text] : kFamilyNames) {
    if (text == name) return family;
  }
  return std::nullopt;
}

std::string_view family_name(Family family) {
  for (auto [f, text] : kFamilyNames) {
    if (f == family) return text;
  }
  return "unknown";
}

Graph generate(Family family, const GeneratorParams& params, std::uint64_t seed) {
  switch (family) {
    case Family::path: return path_graph(params.n);
    case Family::cycle: return cycle_graph(params.n);
    case Family::grid: return grid_graph(params.rows, params.cols);
    case Family::complete: return complete_graph(params.n);
    case Family::complete_bipartite: return complete_bipartite_graph(params.left, params.right);
    case Family::random_bounded_degree:
      return random_bounded_degree(params.n, params.max_degree, seed);
    case Family::erdos_renyi: return erdos_renyi(params.n, params.p, seed);
  }
  throw ContractViolation("generate: unknown family");
}

// ---------------------------------------------------------------------------
// Canonical forms

namespace {

constexpr int kMaxCanonicalOrder = 11;

std::uint64_t code_for(const Graph& g, const std::vector<Vertex>& order) {
  const int n = g.order();
  std::uint64_t code = 0;
  int bit = 0;
  for (int p = 0; p < n; ++p) {
    const std::uint64_t row = g.mask(order[p]);
    for (int q = p + 1; q < n; ++q, ++bit) {
      if (row >> order[q] & 1) code |= std::uint64_t{1} << bit;
    }
  }
  return code;
}

// Individualisation-refinement: branch on the members of the first
// non-singleton cell, refine, and keep the least code over discrete leaves.
// Cell order is derived from invariant keys, so the minimum is canonical.
class CanonicalSearch {
 public:
  CanonicalSearch(const Graph& g, std::uint64_t max_leaves) : g_(g), max_leaves_(max_leaves) {}

  bool run() {
    if (g_.order() > kMaxCanonicalOrder) throw GuardExceeded("canonical form: order exceeds 11");
    std::vector<int> colour(g_.order());
    for (Vertex v = 0; v < g_.order(); ++v) colour[v] = g_.degree(v);
    search(std::move(colour));
    return !aborted_;
  }

  std::uint64_t code() const { return best_; }
  const std::vector<Vertex>& order() const { return best_order_; }

 private:
  void search(std::vector<int> colour) {
    if (aborted_) return;
    const int n = g_.order();
    const int classes = refine(colour);
    if (classes == n) {
      if (++leaves_ > max_leaves_) {
        aborted_ = true;
        return;
      }
      std::vector<Vertex> order(n);
      for (Vertex v = 0; v < n; ++v) order[colour[v]] = v;
      const std::uint64_t code = code_for(g_, order);
      if (best_order_.empty() || code < best_) {
        best_ = code;
        best_order_ = std::move(order);
      }
      return;
    }
    std::vector<int> size(classes, 0);
    for (int c : colour) ++size[c];
    int target = 0;
    while (size[target] == 1) ++target;
    for (Vertex v = 0; v < n; ++v) {
      if (colour[v] != target) continue;
      std::vector<int> split(n);
      for (Vertex w = 0; w < n; ++w) split[w] = 2 * colour[w] + (w == v ? 0 : 1);
      search(std::move(split));
    }
  }

  // Stable refinement; returns the number of cells.
  int refine(std::vector<int>& colour) const {
    const int n = g_.order();
    int classes = -1;
    std::vector<std::vector<int>> keys(n);
    while (true) {
      for (Vertex v = 0; v < n; ++v) {
        auto& key = keys[v];
        key.assign(1, colour[v]);
        for (Vertex w : g_.neighbours(v)) key.push_back(colour[w]);
        std::sort(key.begin() + 1, key.end());
      }
      std::vector<std::vector<int>> distinct = keys;
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      for (Vertex v = 0; v < n; ++v) {
        colour[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), keys[v]) -
                                     distinct.begin());
      }
      const int now = static_cast<int>(distinct.size());
      if (now == classes) return now;
      classes = now;
    }
  }

  const Graph& g_;
  std::uint64_t max_leaves_;
  std::uint64_t leaves_ = 0;
  bool aborted_ = false;
  std::uint64_t best_ = 0;
  std::vector<Vertex> best_order_;
};

std::pair<std::uint64_t, std::vector<Vertex>> canonical_search(const Graph& g) {
  CanonicalSearch search(g, ~std::uint64_t{0});
  search.run();
  return {search.code(), search.order()};
}

Graph relabel(const Graph& g, const std::vector<Vertex>& order) {
  std::vector<Vertex> position(g.order());
  for (int p = 0; p < g.order(); ++p) position[order[p]] = p;
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) edges.emplace_back(position[u], position[v]);
  return Graph(g.order(), edges);
}

Graph from_pair_mask(int n, std::uint64_t mask) {
  std::vector<Edge> edges;
  int bit = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++bit) {
      if (mask >> bit & 1) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

constexpr int kMaxIsomorphismOrder = 9;

std::vector<Graph> isomorphism_classes(int n, bool connected_only) {
  if (n < 1) throw ContractViolation("enumeration: n must be positive");
  if (n == 1) return {Graph(1)};
  auto previous = isomorphism_classes(n - 1, connected_only);
  std::map<std::uint64_t, Graph> found;
  for (const Graph& h : previous) {
    auto edges = h.edges();
    const std::uint64_t subsets = std::uint64_t{1} << (n - 1);
    // A connected graph always has a vertex whose removal keeps it connected,
    // so extending connected classes by a non-isolated vertex suffices.
    for (std::uint64_t s = connected_only ? 1 : 0; s < subsets; ++s) {
      std::vector<Edge> extended = edges;
      for (Vertex v = 0; v < n - 1; ++v) {
        if (s >> v & 1) extended.emplace_back(v, n - 1);
      }
      Graph g(n, extended);
      auto [code, order] = canonical_search(g);
      if (!found.contains(code)) found.emplace(code, relabel(g, order));
    }
  }
  std::vector<Graph> out;
  for (auto& [code, g] : found) {
    if (!connected_only || is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) { return canonical_search(g).first; }

std::uint64_t labelled_code(const Graph& g) {
  if (g.order() > kMaxCanonicalOrder) throw GuardExceeded("labelled code: order exceeds 11");
  std::vector<Vertex> order(g.order());
  std::iota(order.begin(), order.end(), 0);
  return code_for(g, order);
}

std::optional<std::uint64_t> canonical_code_bounded(const Graph& g, std::uint64_t max_leaves) {
  CanonicalSearch search(g, max_leaves);
  if (!search.run()) return std::nullopt;
  return search.code();
}

Graph canonical_form(const Graph& g) { return relabel(g, canonical_search(g).second); }

void for_each_small_graph(int n, const EnumerationOptions& options,
                          const std::function<void(const Graph&)>& visit) {
  if (n < 1) throw ContractViolation("enumeration: n must be positive");
  if (options.unique_up_to_isomorphism) {
    if (n > kMaxIsomorphismOrder) {
      throw GuardExceeded("enumeration: isomorphism classes limited to n <= 9");
    }
    for (const Graph& g : isomorphism_classes(n, options.connected_only)) visit(g);
    return;
  }
  if (n > kMaxEnumerationOrder) {
    throw GuardExceeded("enumeration: labelled graphs limited to n <= 7");
  }
  const int pairs = n * (n - 1) / 2;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
    Graph g = from_pair_mask(n, mask);
    if (options.connected_only && !is_connected(g)) continue;
    visit(g);
  }
}

std::vector<Graph> small_graphs(int n, const EnumerationOptions& options) {
  std::vector<Graph> out;
  for_each_small_graph(n, options, [&](const Graph& g) { out.push_back(g); });
  return out;
}

}  // namespace nbc
