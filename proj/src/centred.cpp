#include "nbc/centred.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace nbc {

namespace {

using Mask = std::uint64_t;

inline Vertex low_bit(Mask m) { return static_cast<Vertex>(__builtin_ctzll(m)); }
inline Mask bit(Vertex v) { return Mask{1} << v; }

// Enumerates each connected vertex subset once, grown from its least vertex
// by include/exclude branching on the frontier. `visit(set)` returns false to
// skip every superset of `set` reached through this branch.
class ConnectedSubsets {
 public:
  explicit ConnectedSubsets(const Graph& g) : g_(g) {}

  template <typename Visit>
  void run(Visit&& visit) {
    for (Vertex a = 0; a < g_.order(); ++a) {
      const Mask allowed = g_.all_mask() & ~((bit(a) << 1) - 1);
      if (!visit(bit(a))) continue;
      grow(bit(a), g_.mask(a) & allowed, 0, allowed, visit);
    }
  }

 private:
  template <typename Visit>
  void grow(Mask set, Mask frontier, Mask banned, Mask allowed, Visit& visit) {
    frontier &= ~banned;
    if (frontier == 0) return;
    const Vertex v = low_bit(frontier);
    // Include v.
    const Mask bigger = set | bit(v);
    if (visit(bigger)) {
      grow(bigger, (frontier | (g_.mask(v) & allowed)) & ~bigger, banned, allowed, visit);
    }
    // Exclude v for the rest of this branch.
    grow(set, frontier & ~bit(v), banned | bit(v), allowed, visit);
  }

  const Graph& g_;
};

struct ColourCount {
  int distinct = 0;
  bool has_unique = false;
};

ColourCount count_colours(Mask set, const Colouring& c, std::vector<int>& scratch) {
  ColourCount out;
  for (Mask rest = set; rest; rest &= rest - 1) {
    if (scratch[c[low_bit(rest)]]++ == 0) ++out.distinct;
  }
  for (Mask rest = set; rest; rest &= rest - 1) {
    int& k = scratch[c[low_bit(rest)]];
    if (k == 1) out.has_unique = true;
    k = 0;
  }
  return out;
}

}  // namespace

CentredVerdict is_r_centred(const Graph& g, const Colouring& c, int r, int guard_n) {
  validate(g, c);
  if (guard_n > Graph::kMaskLimit) throw ContractViolation("is_r_centred: guard above 64");
  if (g.order() > guard_n) throw GuardExceeded("is_r_centred: order exceeds guard");
  CentredVerdict verdict;
  if (r <= 1) return verdict;
  std::vector<int> scratch(c.palette, 0);
  ConnectedSubsets(g).run([&](Mask set) {
    if (!verdict.is_centred) return false;
    const ColourCount count = count_colours(set, c, scratch);
    if (count.distinct >= r) return false;
    if (!count.has_unique) {
      verdict.is_centred = false;
      verdict.witness = VertexSet::from_mask(set);
      return false;
    }
    return true;
  });
  return verdict;
}

ChiResult chi_r_exact(const Graph& g, int r, int guard_n) {
  const int n = g.order();
  if (n > guard_n || n > kChiGuard * 2) throw GuardExceeded("chi_r_exact: order exceeds guard");
  if (n == 0) return {0, Colouring(0, {})};

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;

  // Connected subsets of size >= 2, grouped by their last-coloured member.
  std::vector<std::vector<Mask>> closing(n);
  ConnectedSubsets(g).run([&](Mask set) {
    if (__builtin_popcountll(set) >= 2) {
      int last = 0;
      for (Mask rest = set; rest; rest &= rest - 1) last = std::max(last, position[low_bit(rest)]);
      closing[last].push_back(set);
    }
    return true;
  });

  std::vector<int> colour(n, -1);
  std::vector<int> scratch(n, 0);
  for (int k = 1; k <= n; ++k) {
    Colouring probe(k, std::vector<int>(n, 0));
    auto violates = [&](int pos) {
      for (Mask set : closing[pos]) {
        for (Mask rest = set; rest; rest &= rest - 1) {
          probe.colour[low_bit(rest)] = colour[low_bit(rest)];
        }
        const ColourCount count = count_colours(set, probe, scratch);
        if (count.distinct < r && !count.has_unique) return true;
      }
      return false;
    };
    auto search = [&](auto& self, int pos, int used) -> bool {
      if (pos == n) return true;
      const Vertex v = order[pos];
      for (int col = 0; col < std::min(k, used + 1); ++col) {
        colour[v] = col;
        if (!violates(pos) && self(self, pos + 1, std::max(used, col + 1))) return true;
      }
      colour[v] = -1;
      return false;
    };
    if (search(search, 0, 0)) {
      Colouring witness(k, colour);
      if (n <= Graph::kMaskLimit && !is_r_centred(g, witness, r, Graph::kMaskLimit).is_centred) {
        throw std::logic_error("chi_r_exact: witness failed verification");
      }
      return {k, std::move(witness)};
    }
  }
  throw std::logic_error("chi_r_exact: injective colouring rejected");
}

// ---------------------------------------------------------------------------

int EliminationForest::height() const {
  return depth.empty() ? 0 : *std::max_element(depth.begin(), depth.end());
}

VertexSet EliminationForest::roots() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < order(); ++v) {
    if (parent[v] < 0) out.push_back(v);
  }
  return VertexSet(std::move(out));
}

bool EliminationForest::is_ancestor(Vertex a, Vertex v) const {
  for (Vertex x = v; x >= 0; x = parent[x]) {
    if (x == a) return true;
  }
  return false;
}

void validate(const Graph& g, const EliminationForest& f) {
  const int n = g.order();
  if (f.order() != n || static_cast<int>(f.depth.size()) != n) {
    throw ContractViolation("forest: size does not match graph");
  }
  for (Vertex v = 0; v < n; ++v) {
    const Vertex p = f.parent[v];
    if (p < -1 || p >= n || p == v) throw ContractViolation("forest: invalid parent");
    const int expected = p < 0 ? 1 : f.depth[p] + 1;
    if (f.depth[v] != expected) throw ContractViolation("forest: inconsistent depth or cycle");
  }
  for (auto [u, v] : g.edges()) {
    if (!f.is_ancestor(u, v) && !f.is_ancestor(v, u)) {
      throw ContractViolation("forest: edge " + std::to_string(u) + "-" + std::to_string(v) +
                              " joins unrelated vertices");
    }
  }
}

std::string write_forest(const EliminationForest& f) {
  std::ostringstream out;
  for (Vertex v = 0; v < f.order(); ++v) out << v << ' ' << f.parent[v] << ' ' << f.depth[v] << '\n';
  return out.str();
}

namespace {

std::vector<Mask> mask_components(const Graph& g, Mask set) {
  std::vector<Mask> out;
  while (set) {
    Mask comp = bit(low_bit(set));
    Mask frontier = comp;
    while (frontier) {
      Mask next = 0;
      for (Mask rest = frontier; rest; rest &= rest - 1) next |= g.mask(low_bit(rest));
      next &= set & ~comp;
      comp |= next;
      frontier = next;
    }
    out.push_back(comp);
    set &= ~comp;
  }
  return out;
}

class TreedepthSearch {
 public:
  explicit TreedepthSearch(const Graph& g) : g_(g) {}

  int depth(Mask set) {
    if (set == 0) return 0;
    if (auto it = memo_.find(set); it != memo_.end()) return it->second;
    int best = 0;
    auto comps = mask_components(g_, set);
    if (comps.size() > 1) {
      for (Mask comp : comps) best = std::max(best, depth(comp));
    } else {
      best = __builtin_popcountll(set);
      for (Mask rest = set; rest && best > 1; rest &= rest - 1) {
        best = std::min(best, 1 + depth(set & ~bit(low_bit(rest))));
      }
    }
    memo_.emplace(set, best);
    return best;
  }

  void build(Mask set, Vertex parent, int level, EliminationForest& f) {
    for (Mask comp : mask_components(g_, set)) {
      const int target = depth(comp);
      for (Mask rest = comp; rest; rest &= rest - 1) {
        const Vertex v = low_bit(rest);
        if (1 + depth(comp & ~bit(v)) == target) {
          f.parent[v] = parent;
          f.depth[v] = level;
          build(comp & ~bit(v), v, level + 1, f);
          break;
        }
      }
    }
  }

 private:
  const Graph& g_;
  std::unordered_map<Mask, int> memo_;
};

}  // namespace

TreedepthResult treedepth_exact(const Graph& g, int guard_n) {
  const int n = g.order();
  if (n > guard_n || n > 32) throw GuardExceeded("treedepth_exact: order exceeds guard");
  TreedepthSearch search(g);
  TreedepthResult out;
  out.value = search.depth(g.all_mask());
  out.forest.parent.assign(n, -1);
  out.forest.depth.assign(n, 0);
  search.build(g.all_mask(), -1, 1, out.forest);
  return out;
}

TreedepthResult treedepth_heuristic(const Graph& g) {
  const int n = g.order();
  TreedepthResult out;
  out.exact = false;
  out.forest.parent.assign(n, -1);
  out.forest.depth.assign(n, 0);
  std::vector<char> removed(n, 0);
  // Work list of (component members, parent, level).
  struct Item {
    std::vector<Vertex> members;
    Vertex parent;
    int level;
  };
  std::vector<Item> work;
  for (const VertexSet& comp : components(g)) work.push_back({comp.members(), -1, 1});
  while (!work.empty()) {
    Item item = std::move(work.back());
    work.pop_back();
    auto live_degree = [&](Vertex v) {
      int d = 0;
      for (Vertex w : g.neighbours(v)) d += !removed[w];
      return d;
    };
    Vertex root = item.members.front();
    for (Vertex v : item.members) {
      if (live_degree(v) > live_degree(root)) root = v;
    }
    removed[root] = 1;
    out.forest.parent[root] = item.parent;
    out.forest.depth[root] = item.level;
    out.value = std::max(out.value, item.level);
    // Split what remains of the component.
    std::vector<char> seen(n, 0);
    for (Vertex s : item.members) {
      if (removed[s] || seen[s]) continue;
      std::vector<Vertex> comp{s};
      seen[s] = 1;
      for (std::size_t i = 0; i < comp.size(); ++i) {
        for (Vertex w : g.neighbours(comp[i])) {
          if (!removed[w] && !seen[w]) {
            seen[w] = 1;
            comp.push_back(w);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      work.push_back({std::move(comp), root, item.level + 1});
    }
  }
  return out;
}

Colouring centred_colouring_from_forest(const Graph& g, const EliminationForest& f) {
  validate(g, f);
  std::vector<int> colour(g.order());
  for (Vertex v = 0; v < g.order(); ++v) colour[v] = f.depth[v] - 1;
  return Colouring(std::max(f.height(), 1), std::move(colour));
}

}  // namespace nbc
