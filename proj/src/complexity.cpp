#include "nbc/complexity.hpp"

#include <algorithm>
#include <functional>

#include "nbc/rng.hpp"

namespace nbc {

std::string_view mode_name(NuMode mode) {
  switch (mode) {
    case NuMode::exact: return "exact";
    case NuMode::lower_bound: return "lower-bound";
    case NuMode::fixed_instance: return "fixed-instance";
  }
  return "unknown";
}

namespace {

void check_x(const Graph& g, const VertexSet& x) {
  if (x.empty()) throw ContractViolation("X must be non-empty");
  for (Vertex v : x) {
    if (v < 0 || v >= g.order()) throw ContractViolation("X contains a vertex outside the graph");
  }
}

}  // namespace

TraceTable trace_table(const Graph& g, const VertexSet& x, int r) {
  check_x(g, x);
  if (r < 0) throw ContractViolation("trace_table: negative radius");
  TraceTable table;
  table.radius = r;
  table.x = x;
  std::vector<Vertex> all(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    all[v] = v;
    table.traces.push_back(closed_ball(g, v, r).intersect(x));
  }
  table.partition = Partition::from_keys(VertexSet(std::move(all)), table.traces);
  return table;
}

Rational nu_fixed(const Graph& g, const VertexSet& x, int r) {
  return Rational(trace_table(g, x, r).class_count(), static_cast<std::int64_t>(x.size()));
}

std::optional<Rational> NuCache::find(int n, std::uint64_t code, int r, bool induced) const {
  auto it = values_.find({n, code, r, induced});
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

void NuCache::store(int n, std::uint64_t code, int r, bool induced, Rational value) {
  values_.insert_or_assign({n, code, r, induced}, value);
}

Rational evaluate_witness(const Graph& g, const NuReport& report) {
  validate(g, report.witness);
  auto sub = realize_subgraph(g, report.witness);
  std::vector<Vertex> local;
  for (Vertex x : report.witness_x) {
    auto it = std::find(sub.original.begin(), sub.original.end(), x);
    if (it == sub.original.end()) throw ContractViolation("witness X outside witness subgraph");
    local.push_back(static_cast<Vertex>(it - sub.original.begin()));
  }
  return nu_fixed(sub.graph, VertexSet(std::move(local)), report.radius);
}

// ---------------------------------------------------------------------------

namespace {

using Mask = std::uint64_t;

// Closed r-balls as masks, for graphs with at most 64 vertices.
std::vector<Mask> ball_masks(const Graph& h, int r) {
  const int n = h.order();
  std::vector<Mask> balls(n);
  for (Vertex v = 0; v < n; ++v) {
    Mask ball = Mask{1} << v;
    Mask frontier = ball;
    for (int d = 0; d < r && frontier; ++d) {
      Mask next = 0;
      for (Mask rest = frontier; rest; rest &= rest - 1) next |= h.mask(__builtin_ctzll(rest));
      frontier = next & ~ball;
      ball |= frontier;
    }
    balls[v] = ball;
  }
  return balls;
}

// Best X over a fixed graph, strictly above `floor`. Ties keep the least mask.
class TraceCounter {
 public:
  struct Best {
    Rational value;
    Mask x = 0;  // 0 when nothing beats the floor
  };

  Best best_above(const std::vector<Mask>& balls, Mask ground, Rational floor) {
    const int n = static_cast<int>(balls.size());
    stamp_.resize(std::size_t{1} << n, 0);
    std::vector<Mask> distinct_balls;
    for (Mask rest = ground; rest; rest &= rest - 1) distinct_balls.push_back(balls[__builtin_ctzll(rest)]);
    std::sort(distinct_balls.begin(), distinct_balls.end());
    const auto d = static_cast<std::int64_t>(
        std::unique(distinct_balls.begin(), distinct_balls.end()) - distinct_balls.begin());
    const std::int64_t size = __builtin_popcountll(ground);
    Best best{floor, 0};
    // Enumerate the non-empty submasks of `ground` in increasing order.
    for (Mask x = ground & (~ground + 1); x; x = ((x | ~ground) + 1) & ground) {
      const std::int64_t k = __builtin_popcountll(x);
      const std::int64_t cap = std::min({size, d, k >= 62 ? size : (std::int64_t{1} << k)});
      if (Rational(cap, k) <= best.value) continue;
      ++epoch_;
      std::int64_t classes = 0;
      for (Mask rest = ground; rest; rest &= rest - 1) {
        const Mask trace = balls[__builtin_ctzll(rest)] & x;
        if (stamp_[trace] != epoch_) {
          stamp_[trace] = epoch_;
          ++classes;
        }
      }
      if (Rational(classes, k) > best.value) best = {Rational(classes, k), x};
    }
    return best;
  }

 private:
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

Graph delete_edge(const Graph& h, Edge e) {
  std::vector<Edge> edges;
  for (Edge f : h.edges()) {
    if (f != e) edges.push_back(f);
  }
  return Graph(h.order(), edges);
}

Graph delete_vertex(const Graph& h, Vertex v) {
  std::vector<Edge> edges;
  for (auto [a, b] : h.edges()) {
    if (a != v && b != v) edges.emplace_back(a - (a > v), b - (b > v));
  }
  return Graph(h.order() - 1, edges);
}

constexpr std::uint64_t kCanonicalLeafBudget = 720;

class MemoSearch {
 public:
  MemoSearch(int r, bool induced, NuCache& cache) : r_(r), induced_(induced), cache_(cache) {}

  Rational value(const Graph& h) {
    const int n = h.order();
    const auto canonical = canonical_code_bounded(h, kCanonicalLeafBudget);
    const std::uint64_t code = canonical ? *canonical : labelled_code(h);
    if (auto hit = cache_.find(n, code, r_, induced_)) return *hit;
    Rational best(0);
    if (!induced_) {
      for (Edge e : h.edges()) best = std::max(best, value(delete_edge(h, e)));
    }
    if (n >= 2) {
      for (Vertex v = 0; v < n; ++v) best = std::max(best, value(delete_vertex(h, v)));
    }
    const auto own = counter_.best_above(ball_masks(h, r_), h.all_mask(), best);
    if (own.x) best = own.value;
    cache_.store(n, code, r_, induced_, best);
    return best;
  }

  // Descends to the first subgraph, in deletion order, whose own best X
  // attains the target value.
  void witness(Graph h, std::vector<Vertex> original, Rational target, NuReport& report) {
    while (true) {
      const auto own = counter_.best_above(ball_masks(h, r_), h.all_mask(), Rational(0));
      if (own.value == target) {
        std::vector<Vertex> vs = original;
        std::sort(vs.begin(), vs.end());
        std::vector<Edge> edges;
        for (auto [a, b] : h.edges()) {
          edges.emplace_back(std::min(original[a], original[b]), std::max(original[a], original[b]));
        }
        std::sort(edges.begin(), edges.end());
        std::vector<Vertex> xs;
        for (Mask rest = own.x; rest; rest &= rest - 1) xs.push_back(original[__builtin_ctzll(rest)]);
        report.witness = SubgraphSpec{VertexSet(std::move(vs)), std::move(edges)};
        report.witness_x = VertexSet(std::move(xs));
        return;
      }
      bool moved = false;
      if (!induced_) {
        for (Edge e : h.edges()) {
          Graph child = delete_edge(h, e);
          if (value(child) == target) {
            h = std::move(child);
            moved = true;
            break;
          }
        }
      }
      for (Vertex v = 0; !moved && v < h.order(); ++v) {
        Graph child = delete_vertex(h, v);
        if (value(child) == target) {
          h = std::move(child);
          original.erase(original.begin() + v);
          moved = true;
        }
      }
      if (!moved) throw std::logic_error("nu_exact: witness descent lost the optimum");
    }
  }

 private:
  int r_;
  bool induced_;
  NuCache& cache_;
  TraceCounter counter_;
};

NuReport enumerate_all(const Graph& g, int r, bool induced) {
  const int n = g.order();
  NuReport report;
  report.radius = r;
  report.induced_only = induced;
  TraceCounter counter;
  Rational best(0);
  const auto host_edges = g.edges();
  for (Mask s = 1; s <= g.all_mask(); ++s) {
    std::vector<Edge> inside;
    for (Edge e : host_edges) {
      if ((s >> e.first & 1) && (s >> e.second & 1)) inside.push_back(e);
    }
    const Mask subsets = induced ? 1 : Mask{1} << inside.size();
    for (Mask f = 0; f < subsets; ++f) {
      std::vector<Edge> chosen;
      for (std::size_t i = 0; i < inside.size(); ++i) {
        if (induced || (f >> i & 1)) chosen.push_back(inside[i]);
      }
      // Balls in H, kept on host ids with vertices outside S absent.
      Graph h(n, chosen);
      auto balls = ball_masks(h, r);
      const auto own = counter.best_above(balls, s, best);
      if (own.x) {
        best = own.value;
        report.witness = SubgraphSpec{VertexSet::from_mask(s), chosen};
        report.witness_x = VertexSet::from_mask(own.x);
      }
    }
    if (s == g.all_mask()) break;
  }
  report.value = best;
  return report;
}

}  // namespace

NuReport nu_exact(const Graph& g, int r, const NuOptions& options) {
  if (r < 0) throw ContractViolation("nu_exact: negative radius");
  if (g.order() > options.guard.max_n || static_cast<int>(g.size()) > options.guard.max_m) {
    throw GuardExceeded("nu_exact: graph exceeds the enumeration guard (n <= " +
                        std::to_string(options.guard.max_n) + ", m <= " +
                        std::to_string(options.guard.max_m) + "); use nu_lower_bound");
  }
  if (g.order() > 11) throw GuardExceeded("nu_exact: order above 11 is not supported");
  if (options.engine == NuEngine::enumerate) return enumerate_all(g, r, options.induced_only);

  NuCache local;
  NuCache& cache = options.cache ? *options.cache : local;
  MemoSearch search(r, options.induced_only, cache);
  NuReport report;
  report.radius = r;
  report.induced_only = options.induced_only;
  report.value = search.value(g);
  std::vector<Vertex> ids(g.order());
  for (Vertex v = 0; v < g.order(); ++v) ids[v] = v;
  search.witness(g, ids, report.value, report);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

struct Candidate {
  std::vector<char> alive;
  std::vector<char> deleted;  // by host edge index
  std::vector<char> in_x;
};

Rational evaluate(const Graph& g, const std::vector<Edge>& edges, const Candidate& c, int r,
                  NuReport* fill) {
  std::vector<Vertex> vs, xs;
  std::vector<Edge> kept;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (c.alive[v]) vs.push_back(v);
    if (c.alive[v] && c.in_x[v]) xs.push_back(v);
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!c.deleted[i] && c.alive[edges[i].first] && c.alive[edges[i].second]) {
      kept.push_back(edges[i]);
    }
  }
  NuReport probe;
  probe.radius = r;
  probe.witness = SubgraphSpec{VertexSet(vs), kept};
  probe.witness_x = VertexSet(xs);
  const Rational value = evaluate_witness(g, probe);
  if (fill) {
    fill->witness = probe.witness;
    fill->witness_x = probe.witness_x;
  }
  return value;
}

}  // namespace

NuReport nu_lower_bound(const Graph& g, int r, std::uint64_t seed, long long budget) {
  const int n = g.order();
  const auto edges = g.edges();
  NuReport best;
  best.radius = r;
  best.mode = NuMode::lower_bound;
  best.seed = seed;
  best.budget = budget;
  Rng rng(seed);

  auto fresh = [&](Vertex x) {
    Candidate c{std::vector<char>(n, 1), std::vector<char>(edges.size(), 0),
                std::vector<char>(n, 0)};
    c.in_x[x] = 1;
    return c;
  };
  // Every single-vertex X on the whole graph first.
  for (Vertex v = 0; v < n; ++v) {
    NuReport probe;
    const Rational value = evaluate(g, edges, fresh(v), r, &probe);
    if (v == 0 || value > best.value) {
      best.value = value;
      best.witness = probe.witness;
      best.witness_x = probe.witness_x;
    }
  }

  const long long restart_every = std::max<long long>(1, std::min<long long>(budget, 100));
  Candidate current = fresh(0);
  Rational current_value(0);
  for (long long step = 0; step < budget; ++step) {
    if (step % restart_every == 0) {
      current = fresh(static_cast<Vertex>(rng.below(n)));
      current_value = evaluate(g, edges, current, r, nullptr);
    }
    Candidate next = current;
    const auto move = rng.below(3);
    const auto v = static_cast<Vertex>(rng.below(n));
    if (move == 0) {
      if (!next.alive[v]) continue;
      next.in_x[v] ^= 1;
    } else if (move == 1) {
      if (edges.empty()) continue;
      next.deleted[rng.below(edges.size())] ^= 1;
    } else {
      next.alive[v] ^= 1;
      if (!next.alive[v]) next.in_x[v] = 0;
    }
    bool has_x = false;
    for (Vertex w = 0; w < n; ++w) has_x = has_x || (next.alive[w] && next.in_x[w]);
    if (!has_x) continue;
    const Rational value = evaluate(g, edges, next, r, nullptr);
    if (value >= current_value) {
      current = std::move(next);
      current_value = value;
      if (value > best.value) {
        best.value = value;
        evaluate(g, edges, current, r, &best);
      }
    }
  }
  return best;
}

BoundReport complexity_bounds(const NuReport& nu, std::optional<ParameterInput> chi,
                                 std::optional<ParameterInput> wcol) {
  BoundReport out;
  out.radius = nu.radius;
  out.nu = nu.value;
  out.nu_mode = nu.mode;
  const BigRational value = to_big(nu.value);
  const bool nu_exact = nu.mode == NuMode::exact;
  if (chi) {
    BoundComparison c;
    c.parameter = chi->value;
    c.parameter_exact = chi->exact;
    c.rhs = centred_complexity_bound(nu.radius, chi->value);
    c.holds = c.rhs.admits(value);
    c.informational = !chi->exact || !nu_exact;
    out.centred = c;
  }
  if (wcol) {
    BoundComparison c;
    c.parameter = wcol->value;
    c.parameter_exact = wcol->exact;
    c.rhs = wcol_complexity_bound(nu.radius, wcol->value);
    c.holds = c.rhs.admits(value);
    c.informational = !wcol->exact || !nu_exact;
    out.wcol = c;
  }
  return out;
}

}  // namespace nbc
