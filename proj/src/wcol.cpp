#include "nbc/wcol.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "nbc/bounds.hpp"
#include "nbc/rng.hpp"

namespace nbc {

Ordering Ordering::identity(int n) {
  std::vector<Vertex> seq(n);
  std::iota(seq.begin(), seq.end(), 0);
  return from_sequence(std::move(seq));
}

Ordering Ordering::from_sequence(std::vector<Vertex> sequence) {
  const int n = static_cast<int>(sequence.size());
  Ordering o;
  o.rank_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    const Vertex v = sequence[i];
    if (v < 0 || v >= n || o.rank_[v] >= 0) throw ContractViolation("Ordering: not a permutation");
    o.rank_[v] = i;
  }
  o.sequence_ = std::move(sequence);
  return o;
}

Ordering Ordering::from_ranks(std::vector<int> ranks) {
  const int n = static_cast<int>(ranks.size());
  std::vector<Vertex> seq(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    const int k = ranks[v];
    if (k < 0 || k >= n || seq[k] >= 0) throw ContractViolation("Ordering: ranks not bijective");
    seq[k] = v;
  }
  return from_sequence(std::move(seq));
}

std::string write_ordering(const Ordering& order) {
  std::ostringstream out;
  for (int i = 0; i < order.size(); ++i) out << (i ? " " : "") << order.at(i);
  out << '\n';
  return out.str();
}

Ordering parse_ordering(std::string_view text, int n) {
  std::vector<Vertex> seq;
  std::istringstream in{std::string(text)};
  long long v;
  while (in >> v) {
    if (v < 0 || v >= n) throw ContractViolation("ordering: vertex out of range");
    seq.push_back(static_cast<Vertex>(v));
  }
  if (!in.eof()) throw ContractViolation("ordering: malformed token");
  if (static_cast<int>(seq.size()) != n) throw ContractViolation("ordering: wrong length");
  return Ordering::from_sequence(std::move(seq));
}

int WReachIndex::max_size() const {
  int best = 0;
  for (const auto& s : sets) best = std::max(best, static_cast<int>(s.size()));
  return best;
}

VertexSet WReachIndex::of_set(const VertexSet& x) const {
  std::vector<Vertex> all;
  for (Vertex v : x) all.insert(all.end(), sets[v].begin(), sets[v].end());
  return VertexSet(std::move(all));
}

namespace {

// BFS from `source` to depth r through vertices with allowed[w] set; calls
// reach(w) for every vertex reached, source included.
template <typename Reach>
void bounded_bfs(const Graph& g, Vertex source, int r, const std::vector<char>& allowed,
                 std::vector<int>& dist, std::vector<Vertex>& queue, Reach&& reach) {
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    reach(u);
    if (dist[u] == r) continue;
    for (Vertex w : g.neighbours(u)) {
      if (allowed[w] && dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  for (Vertex u : queue) dist[u] = -1;
}

void check_order(const Graph& g, const Ordering& order) {
  if (order.size() != g.order()) throw ContractViolation("ordering does not match graph order");
}

}  // namespace

WReachIndex wreach(const Graph& g, const Ordering& order, int r) {
  check_order(g, order);
  if (r < 0) throw ContractViolation("wreach: negative radius");
  const int n = g.order();
  std::vector<std::vector<Vertex>> members(n);
  std::vector<char> allowed(n, 1);
  std::vector<int> dist(n, -1);
  std::vector<Vertex> queue;
  for (int i = 0; i < n; ++i) {
    const Vertex u = order.at(i);
    bounded_bfs(g, u, r, allowed, dist, queue, [&](Vertex w) { members[w].push_back(u); });
    allowed[u] = 0;
  }
  WReachIndex index;
  index.radius = r;
  index.order = order;
  for (auto& m : members) index.sets.emplace_back(std::move(m));
  return index;
}

int wcol_given_order(const Graph& g, const Ordering& order, int r) {
  return wreach(g, order, r).max_size();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Vertex> smallest_degree_last(const Graph& g) {
  const int n = g.order();
  std::vector<int> deg(n);
  std::vector<char> gone(n, 0);
  for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::vector<Vertex> removal;
  for (int step = 0; step < n; ++step) {
    Vertex best = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (!gone[v] && (best < 0 || deg[v] < deg[best])) best = v;
    }
    gone[best] = 1;
    removal.push_back(best);
    for (Vertex w : g.neighbours(best)) --deg[w];
  }
  // The first vertex removed goes last.
  std::reverse(removal.begin(), removal.end());
  return removal;
}

std::vector<Vertex> descending_degree(const Graph& g) {
  std::vector<Vertex> seq(g.order());
  std::iota(seq.begin(), seq.end(), 0);
  std::stable_sort(seq.begin(), seq.end(),
                   [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  return seq;
}

class WcolSearch {
 public:
  WcolSearch(const Graph& g, int r)
      : g_(g), r_(r), n_(g.order()), count_(n_, 0), placed_(n_, 0), free_(n_, 1),
        dist_(n_, -1) {}

  WcolResult run(int bound, int floor) {
    bound_ = bound;
    floor_ = floor;
    dfs(0);
    return {bound_, Ordering::from_sequence(best_)};
  }

 private:
  bool dfs(int pos) {
    if (pos == n_) {
      int value = *std::max_element(count_.begin(), count_.end());
      if (value < bound_) {
        bound_ = value;
        best_ = prefix_;
      }
      return bound_ <= floor_;
    }
    for (Vertex u = 0; u < n_; ++u) {
      if (placed_[u]) continue;
      std::vector<Vertex> reached;
      bounded_bfs(g_, u, r_, free_, dist_, queue_, [&](Vertex w) {
        ++count_[w];
        reached.push_back(w);
      });
      placed_[u] = 1;
      free_[u] = 0;
      prefix_.push_back(u);
      int lb = 0;
      for (Vertex w = 0; w < n_; ++w) lb = std::max(lb, count_[w] + (placed_[w] ? 0 : 1));
      const bool done = lb < bound_ && dfs(pos + 1);
      prefix_.pop_back();
      placed_[u] = 0;
      free_[u] = 1;
      for (Vertex w : reached) --count_[w];
      if (done) return true;
    }
    return false;
  }

  const Graph& g_;
  int r_;
  int n_;
  int bound_ = 0;
  int floor_ = 0;
  std::vector<int> count_;
  std::vector<char> placed_;
  std::vector<char> free_;
  std::vector<int> dist_;
  std::vector<Vertex> queue_;
  std::vector<Vertex> prefix_;
  std::vector<Vertex> best_;
};

}  // namespace

WcolResult wcol_exact(const Graph& g, int r, int guard_n) {
  if (g.order() > guard_n) throw GuardExceeded("wcol_exact: order exceeds guard");
  if (r < 0) throw ContractViolation("wcol_exact: negative radius");
  const int n = g.order();
  if (n == 0) return {0, Ordering()};
  const int floor = r == 0 ? 1 : degeneracy(g) + 1;
  const int start = wcol_given_order(g, Ordering::from_sequence(smallest_degree_last(g)), r);
  return WcolSearch(g, r).run(start + 1, floor);
}

namespace {

constexpr std::pair<WcolStrategy, std::string_view> kStrategyNames[] = {
    {WcolStrategy::smallest_degree_last, "smallest-degree-last"},
    {WcolStrategy::descending_degree, "descending-degree"},
    {WcolStrategy::local_search, "local-search"},
};

std::pair<int, long long> score(const Graph& g, const Ordering& order, int r) {
  const auto index = wreach(g, order, r);
  long long total = 0;
  for (const auto& s : index.sets) total += static_cast<long long>(s.size());
  return {index.max_size(), total};
}

}  // namespace

std::optional<WcolStrategy> strategy_from_name(std::string_view name) {
  for (auto [s, text] : kStrategyNames) {
    if (text == name) return s;
  }
  return std::nullopt;
}

std::string_view strategy_name(WcolStrategy strategy) {
  for (auto [s, text] : kStrategyNames) {
    if (s == strategy) return text;
  }
  return "unknown";
}

WcolResult wcol_heuristic(const Graph& g, int r, WcolStrategy strategy,
                          const LocalSearchOptions& options) {
  const int n = g.order();
  if (strategy == WcolStrategy::descending_degree) {
    auto order = Ordering::from_sequence(descending_degree(g));
    return {wcol_given_order(g, order, r), order};
  }
  auto seq = smallest_degree_last(g);
  if (strategy == WcolStrategy::smallest_degree_last || n < 2) {
    auto order = Ordering::from_sequence(seq);
    return {wcol_given_order(g, order, r), order};
  }
  // Adjacent transpositions, kept when (max, sum) does not get worse.
  Rng rng(options.seed);
  const long long budget = options.budget < 0 ? 200LL * n : options.budget;
  auto current = score(g, Ordering::from_sequence(seq), r);
  for (long long t = 0; t < budget; ++t) {
    const auto i = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n - 1)));
    std::swap(seq[i], seq[i + 1]);
    auto trial = score(g, Ordering::from_sequence(seq), r);
    if (trial <= current) {
      current = trial;
    } else {
      std::swap(seq[i], seq[i + 1]);
    }
  }
  return {current.first, Ordering::from_sequence(std::move(seq))};
}

// ---------------------------------------------------------------------------

WitnessBundleBuilder::WitnessBundleBuilder(const Graph& g, const Ordering& order, int r)
    : g_(g), order_(order), r_(r), dist_(g), reach_r_(wreach(g, order, r)),
      reach_2r_(wreach(g, order, 2 * r)) {
  if (r < 0) throw ContractViolation("witness bundle: negative radius");
}

namespace {

bool within(int d, int r) { return d != kUnreachable && d <= r; }

}  // namespace

WitnessBundle WitnessBundleBuilder::build(const VertexSet& x) const {
  if (x.empty()) throw ContractViolation("witness bundle: X must be non-empty");
  const int n = g_.order();
  for (Vertex v : x) {
    if (v < 0 || v >= n) throw ContractViolation("witness bundle: X outside graph");
  }
  WitnessBundle bundle;
  bundle.radius = r_;

  // Twin classes by trace; std::map keeps the least member first seen.
  std::map<VertexSet, Vertex> first_member;
  std::vector<VertexSet> order_of_classes;
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Vertex> trace;
    for (Vertex y : x) {
      if (within(dist_(v, y), r_)) trace.push_back(y);
    }
    VertexSet key(std::move(trace));
    if (first_member.emplace(key, v).second) order_of_classes.push_back(key);
  }
  bundle.class_count = static_cast<int>(order_of_classes.size());

  std::vector<char> allowed(n, 0);
  std::vector<int> dist(n, -1);
  std::vector<Vertex> queue;
  for (const VertexSet& trace : order_of_classes) {
    if (trace.empty()) {
      bundle.has_empty_class = true;
      continue;
    }
    WitnessClass cls;
    cls.trace = trace;
    const Vertex v = first_member.at(trace);
    cls.representative = v;

    std::vector<Vertex> closure;
    for (Vertex w = 0; w < n; ++w) {
      const int dvw = dist_(v, w);
      if (dvw == kUnreachable) continue;
      for (Vertex t : trace) {
        const int dwt = dist_(w, t);
        if (dwt != kUnreachable && dvw + dwt == dist_(v, t)) {
          closure.push_back(w);
          break;
        }
      }
    }
    cls.closure = VertexSet(closure);

    // WReach_r of v inside the induced closure, order restricted.
    std::vector<Vertex> inner;
    for (Vertex u : closure) {
      if (order_.rank(u) > order_.rank(v)) continue;
      for (Vertex w : closure) allowed[w] = order_.rank(w) >= order_.rank(u);
      bool hit = false;
      bounded_bfs(g_, u, r_, allowed, dist, queue, [&](Vertex w) { hit = hit || w == v; });
      if (hit) inner.push_back(u);
      for (Vertex w : closure) allowed[w] = 0;
    }
    cls.y = VertexSet(std::move(inner)).intersect(reach_r_.of_set(trace));
    cls.last = *std::max_element(cls.y.begin(), cls.y.end(), [&](Vertex a, Vertex b) {
      return order_.rank(a) < order_.rank(b);
    });
    bundle.y_union = bundle.y_union.unite(cls.y);
    bundle.classes.push_back(std::move(cls));
  }
  return bundle;
}

BundleCheck WitnessBundleBuilder::check(const WitnessBundle& bundle, const VertexSet& x) const {
  BundleCheck out;
  auto fail = [&](bool& flag, const std::string& what) {
    flag = false;
    if (out.first_failure.empty()) out.first_failure = what;
  };
  const int n = g_.order();
  const int w2 = reach_2r_.max_size();
  std::vector<char> allowed(n, 1);
  std::vector<int> dist(n, -1);
  std::vector<Vertex> queue;
  std::set<Vertex> lasts;
  for (const WitnessClass& cls : bundle.classes) {
    const std::string tag = "class of " + std::to_string(cls.representative);
    if (static_cast<int>(cls.y.size()) > w2) fail(out.size_bound, tag + ": |Y| exceeds wcol_2r");

    // Some shortest path to an X vertex avoiding Y would survive deleting Y
    // with its length intact.
    const Vertex v = cls.representative;
    if (!cls.y.contains(v)) {
      for (Vertex y : cls.y) allowed[y] = 0;
      std::vector<int> avoiding(n, kUnreachable);
      std::vector<Vertex> q{v};
      avoiding[v] = 0;
      for (std::size_t h = 0; h < q.size(); ++h) {
        if (avoiding[q[h]] == r_) continue;
        for (Vertex w : g_.neighbours(q[h])) {
          if (allowed[w] && avoiding[w] == kUnreachable) {
            avoiding[w] = avoiding[q[h]] + 1;
            q.push_back(w);
          }
        }
      }
      for (Vertex t : cls.trace) {
        if (!cls.y.contains(t) && avoiding[t] == dist_(v, t)) {
          fail(out.hits_paths, tag + ": shortest path to " + std::to_string(t) + " misses Y");
        }
      }
      for (Vertex y : cls.y) allowed[y] = 1;
    }

    if (!cls.y.is_subset_of(reach_2r_[cls.last])) {
      fail(out.reachable_from_last, tag + ": Y not inside WReach_2r of its last vertex");
    }
    lasts.insert(cls.last);
  }

  for (std::size_t i = 0; i < bundle.classes.size(); ++i) {
    for (std::size_t j = i + 1; j < bundle.classes.size(); ++j) {
      const auto& a = bundle.classes[i];
      const auto& b = bundle.classes[j];
      if (a.y != b.y) continue;
      bool same = true;
      for (Vertex z : a.y) same = same && dist_(a.representative, z) == dist_(b.representative, z);
      if (same) {
        fail(out.distances_separate, "classes of " + std::to_string(a.representative) + " and " +
                                         std::to_string(b.representative) +
                                         " share Y and distances");
      }
    }
  }

  if (!bundle.y_union.is_subset_of(reach_r_.of_set(x))) {
    fail(out.inside_reach_of_x, "union of Y leaves WReach_r[X]");
  }

  BigInt power = 1;
  for (int i = 0; i < w2; ++i) power *= 2 * r_ + 2;
  const BigInt lhs = 2 * BigInt(bundle.class_count);
  const BigInt rhs = power * BigInt(lasts.size()) + 2;
  if (lhs > rhs) fail(out.count_bound, "class count exceeds bound");
  return out;
}

WitnessBundle witness_bundle(const Graph& g, const Ordering& order, const VertexSet& x, int r) {
  return WitnessBundleBuilder(g, order, r).build(x);
}

}  // namespace nbc
