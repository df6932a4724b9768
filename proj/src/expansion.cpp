#include "nbc/expansion.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>
#include <charconv>
#include <cmath>
#include <sstream>

#include "nbc/paths.hpp"

namespace nbc {

std::string half_to_string(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

std::optional<int> parse_half(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::optional<int> {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) return std::nullopt;
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    if (text.substr(slash + 1) != "2") return std::nullopt;
    return parse_int(text.substr(0, slash));
  }
  auto whole = parse_int(text);
  if (!whole) return std::nullopt;
  return *whole * 2;
}

int EmbeddingCertificate::twice_depth() const {
  int longest = 1;
  for (const auto& p : phi_e) longest = std::max(longest, static_cast<int>(p.size()) - 1);
  return longest - 1;
}

EmbeddingVerdict validate_embedding(const Graph& g, const EmbeddingCertificate& cert) {
  auto bad = [](std::string why) { return EmbeddingVerdict{false, std::move(why)}; };
  const int n = g.order();
  const int h = cert.pattern.order();
  if (static_cast<int>(cert.phi_v.size()) != h) return bad("phi_v size differs from pattern order");
  std::vector<int> owner(n, -1);
  for (Vertex u = 0; u < h; ++u) {
    const Vertex x = cert.phi_v[u];
    if (x < 0 || x >= n) return bad("phi_v(" + std::to_string(u) + ") outside G");
    if (owner[x] >= 0) return bad("phi_v is not injective");
    owner[x] = u;
  }
  const auto edges = cert.pattern.edges();
  if (cert.phi_e.size() != edges.size()) return bad("phi_e size differs from pattern size");
  std::vector<int> interior_of(n, -1);
  std::vector<std::vector<char>> on_path(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& path = cert.phi_e[i];
    const std::string tag = "path " + std::to_string(edges[i].first) + "-" +
                            std::to_string(edges[i].second);
    if (path.size() < 2) return bad(tag + " has fewer than two vertices");
    const Vertex a = cert.phi_v[edges[i].first];
    const Vertex b = cert.phi_v[edges[i].second];
    if (!((path.front() == a && path.back() == b) || (path.front() == b && path.back() == a))) {
      return bad(tag + " has wrong endpoints");
    }
    on_path[i].assign(n, 0);
    for (std::size_t k = 0; k < path.size(); ++k) {
      const Vertex x = path[k];
      if (x < 0 || x >= n) return bad(tag + " leaves G");
      if (on_path[i][x]) return bad(tag + " repeats a vertex");
      on_path[i][x] = 1;
      if (k > 0 && !g.adjacent(path[k - 1], x)) return bad(tag + " uses a non-edge");
    }
  }
  // Interior vertices may not appear on any other path.
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& path = cert.phi_e[i];
    for (std::size_t k = 1; k + 1 < path.size(); ++k) {
      for (std::size_t j = 0; j < edges.size(); ++j) {
        if (j != i && on_path[j][path[k]]) {
          return bad("paths " + std::to_string(i) + " and " + std::to_string(j) +
                     " share vertex " + std::to_string(path[k]));
        }
      }
    }
  }
  return {};
}

std::string write_certificate(const EmbeddingCertificate& cert) {
  std::ostringstream out;
  out << write_graph(cert.pattern);
  for (Vertex u = 0; u < cert.pattern.order(); ++u) out << "phiV " << u << " -> " << cert.phi_v[u] << '\n';
  const auto edges = cert.pattern.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out << "phiE " << edges[i].first << ' ' << edges[i].second << " :";
    for (Vertex x : cert.phi_e[i]) out << ' ' << x;
    out << '\n';
  }
  return out.str();
}

std::string_view grad_mode_name(GradMode mode) {
  return mode == GradMode::exact ? "exact" : "lower-bound";
}

namespace {

EmbeddingCertificate subgraph_certificate(const Graph& g, const std::vector<Vertex>& members) {
  std::vector<int> local(g.order(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    if (local[u] >= 0 && local[v] >= 0) edges.emplace_back(local[u], local[v]);
  }
  EmbeddingCertificate cert;
  cert.pattern = Graph(static_cast<int>(members.size()), edges);
  cert.phi_v = members;
  for (auto [a, b] : cert.pattern.edges()) cert.phi_e.push_back({members[a], members[b]});
  return cert;
}

using FlowTraits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using FlowGraph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, long long,
                    boost::property<boost::edge_residual_capacity_t, long long,
                                    boost::property<boost::edge_reverse_t,
                                                    FlowTraits::edge_descriptor>>>>;

// Vertex set maximising q*|E(S)| - p*|S| (possibly empty).
std::vector<Vertex> max_closure(const Graph& g, long long p, long long q) {
  const int n = g.order();
  const auto edges = g.edges();
  const int m = static_cast<int>(edges.size());
  const int source = n + m;
  const int sink = source + 1;
  FlowGraph net(n + m + 2);
  auto capacity = get(boost::edge_capacity, net);
  auto reverse = get(boost::edge_reverse, net);
  auto residual = get(boost::edge_residual_capacity, net);
  auto link = [&](int a, int b, long long cap) {
    auto e = add_edge(a, b, net).first;
    auto back = add_edge(b, a, net).first;
    capacity[e] = cap;
    capacity[back] = 0;
    reverse[e] = back;
    reverse[back] = e;
  };
  const long long infinite = q * (m + 1) + 1;
  for (int i = 0; i < m; ++i) {
    link(source, n + i, q);
    link(n + i, edges[i].first, infinite);
    link(n + i, edges[i].second, infinite);
  }
  for (Vertex v = 0; v < n; ++v) link(v, sink, p);
  boost::push_relabel_max_flow(net, source, sink);

  std::vector<char> seen(n + m + 2, 0);
  std::vector<int> stack{source};
  seen[source] = 1;
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    for (auto [it, end] = out_edges(a, net); it != end; ++it) {
      const int b = static_cast<int>(target(*it, net));
      if (!seen[b] && residual[*it] > 0) {
        seen[b] = 1;
        stack.push_back(b);
      }
    }
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v) {
    if (seen[v]) out.push_back(v);
  }
  return out;
}

std::int64_t induced_edges(const Graph& g, const std::vector<Vertex>& members) {
  std::vector<char> in(g.order(), 0);
  for (Vertex v : members) in[v] = 1;
  std::int64_t count = 0;
  for (auto [u, v] : g.edges()) count += in[u] && in[v];
  return count;
}

}  // namespace

GradReport grad0_exact(const Graph& g) {
  const int n = g.order();
  if (n < 1) throw ContractViolation("grad0_exact: empty graph");
  GradReport report;
  std::vector<Vertex> best(n);
  for (Vertex v = 0; v < n; ++v) best[v] = v;
  Rational density(static_cast<std::int64_t>(g.size()), n);
  if (g.size() == 0) {
    report.witness = subgraph_certificate(g, {0});
    return report;
  }
  // Each round either proves optimality or strictly raises the density.
  while (true) {
    auto s = max_closure(g, density.numerator(), density.denominator());
    if (s.empty()) break;
    const Rational next(induced_edges(g, s), static_cast<std::int64_t>(s.size()));
    if (next <= density) break;
    density = next;
    best = std::move(s);
  }
  report.value = density;
  report.witness = subgraph_certificate(g, best);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

using Mask = std::uint64_t;

struct PairPaths {
  Vertex a;
  Vertex b;
  std::vector<Mask> interiors;           // inclusion-minimal
  std::vector<std::vector<Vertex>> paths;  // one path per interior
};

class PathPacker {
 public:
  PathPacker(const std::vector<PairPaths>& pairs, int direct, int size)
      : pairs_(pairs), direct_(direct), size_(size), choice_(pairs.size(), -1),
        best_choice_(pairs.size(), -1) {}

  // Largest packed edge count strictly above `floor_edges`, or -1.
  int run(int floor_edges) {
    best_ = floor_edges;
    found_ = false;
    dfs(0, 0, direct_);
    return found_ ? best_ : -1;
  }

  const std::vector<int>& choice() const { return best_choice_; }

 private:
  void dfs(std::size_t i, Mask used, int edges) {
    if (edges + static_cast<int>(pairs_.size() - i) <= best_) return;
    if (i == pairs_.size()) {
      best_ = edges;
      best_choice_ = choice_;
      found_ = true;
      return;
    }
    const auto& p = pairs_[i];
    for (std::size_t k = 0; k < p.interiors.size(); ++k) {
      if (p.interiors[k] & used) continue;
      choice_[i] = static_cast<int>(k);
      dfs(i + 1, used | p.interiors[k], edges + 1);
    }
    choice_[i] = -1;
    dfs(i + 1, used, edges);
  }

  const std::vector<PairPaths>& pairs_;
  int direct_;
  int size_;
  int best_ = 0;
  bool found_ = false;
  std::vector<int> choice_;
  std::vector<int> best_choice_;
};

}  // namespace

GradReport gradr_bruteforce(const Graph& g, int twice_r, int guard_n) {
  const int n = g.order();
  if (n > guard_n || n > 16) throw GuardExceeded("gradr_bruteforce: order exceeds guard");
  if (n < 1) throw ContractViolation("gradr_bruteforce: empty graph");
  if (twice_r < 0) throw ContractViolation("gradr_bruteforce: negative depth");
  const int max_edges = twice_r + 1;

  GradReport report;
  report.twice_r = twice_r;
  report.witness = subgraph_certificate(g, {0});
  Rational best(0);

  for (Mask b = 1; b <= g.all_mask(); ++b) {
    const int size = __builtin_popcountll(b);
    // A pattern on |B| vertices has at most |B|(|B|-1)/2 edges.
    if (Rational(size - 1, 2) <= best) continue;
    std::vector<Vertex> members;
    for (Mask rest = b; rest; rest &= rest - 1) members.push_back(__builtin_ctzll(rest));

    int direct = 0;
    std::vector<Edge> direct_pairs;
    std::vector<PairPaths> pairs;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const Vertex a = members[i];
        const Vertex c = members[j];
        if (g.adjacent(a, c)) {
          ++direct;
          direct_pairs.emplace_back(a, c);
          continue;
        }
        if (max_edges < 2) continue;
        PairPaths pp{a, c, {}, {}};
        std::vector<std::pair<Mask, std::vector<Vertex>>> found;
        for_each_simple_path(
            g, a, max_edges + 1,
            [&](const std::vector<Vertex>& prefix, Vertex w) {
              if (prefix.empty()) return true;
              if (prefix.back() == c) return false;
              return w == c || !(b >> w & 1);
            },
            [&](const std::vector<Vertex>& path) {
              if (path.size() < 3 || path.back() != c) return;
              Mask interior = 0;
              for (std::size_t k = 1; k + 1 < path.size(); ++k) interior |= Mask{1} << path[k];
              found.emplace_back(interior, path);
            });
        std::sort(found.begin(), found.end());
        for (const auto& [mask, path] : found) {
          bool dominated = false;
          for (Mask kept : pp.interiors) dominated = dominated || (kept & mask) == kept;
          if (!dominated) {
            pp.interiors.push_back(mask);
            pp.paths.push_back(path);
          }
        }
        if (!pp.interiors.empty()) pairs.push_back(std::move(pp));
      }
    }
    if (Rational(direct + static_cast<int>(pairs.size()), size) <= best) continue;

    // Smallest edge count beating the current best density.
    const std::int64_t floor_edges =
        (best * Rational(size)).numerator() / (best * Rational(size)).denominator();
    PathPacker packer(pairs, direct, size);
    const int edges = packer.run(static_cast<int>(floor_edges));
    if (edges < 0 || Rational(edges, size) <= best) continue;
    best = Rational(edges, size);

    std::vector<int> local(n, -1);
    for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);
    std::vector<std::pair<Edge, std::vector<Vertex>>> chosen;
    for (auto [a, c] : direct_pairs) chosen.push_back({{local[a], local[c]}, {a, c}});
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const int k = packer.choice()[i];
      if (k >= 0) chosen.push_back({{local[pairs[i].a], local[pairs[i].b]}, pairs[i].paths[k]});
    }
    std::sort(chosen.begin(), chosen.end());
    EmbeddingCertificate cert;
    std::vector<Edge> pattern_edges;
    for (auto& [e, path] : chosen) {
      pattern_edges.push_back(e);
      cert.phi_e.push_back(path);
    }
    cert.pattern = Graph(size, pattern_edges);
    cert.phi_v = members;
    report.witness = std::move(cert);
  }
  report.value = best;
  return report;
}

// ---------------------------------------------------------------------------

namespace {

void require_bipartite_sides(const Graph& g, const VertexSet& a) {
  for (Vertex v : a) {
    if (v < 0 || v >= g.order()) throw ContractViolation("side A outside graph");
  }
  for (auto [u, v] : g.edges()) {
    if (a.contains(u) == a.contains(v)) {
      throw ContractViolation("edge " + std::to_string(u) + "-" + std::to_string(v) +
                              " does not cross the bipartition");
    }
  }
}

}  // namespace

std::optional<std::pair<VertexSet, VertexSet>> dense_half_oracle(const Graph& g, const VertexSet& a,
                                                              int r, int s) {
  require_bipartite_sides(g, a);
  const int size_a = static_cast<int>(a.size());
  if (size_a > 16) throw GuardExceeded("dense_half_oracle: |A| exceeds 16");
  if (!(1 <= r && r <= s && s <= size_a)) {
    throw ContractViolation("dense_half_oracle: requires 1 <= r <= s <= |A|");
  }
  std::vector<Vertex> b;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (!a.contains(v)) {
      if (g.degree(v) < r) throw ContractViolation("dense_half_oracle: B-vertex below degree r");
      b.push_back(v);
    }
  }
  // Combinations of A in lexicographic order.
  std::vector<char> pick(size_a, 0);
  std::fill(pick.begin(), pick.begin() + s, 1);
  do {
    std::vector<Vertex> chosen;
    std::vector<char> in(g.order(), 0);
    for (int i = 0; i < size_a; ++i) {
      if (pick[i]) {
        chosen.push_back(a[i]);
        in[a[i]] = 1;
      }
    }
    std::vector<Vertex> kept;
    for (Vertex v : b) {
      int deg = 0;
      for (Vertex w : g.neighbours(v)) deg += in[w];
      if (static_cast<long long>(deg) * size_a >= static_cast<long long>(r) * s) kept.push_back(v);
    }
    if (2 * kept.size() >= b.size()) {
      return std::make_pair(VertexSet(std::move(chosen)), VertexSet(std::move(kept)));
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return std::nullopt;
}

namespace {

Rational exact_nu1(const Graph& g, std::optional<Rational> nu1, const NuOptions& options) {
  return nu1 ? *nu1 : nu_exact(g, 1, options).value;
}

}  // namespace

MinDegreeVerdict min_degree_check(const Graph& g, std::optional<Rational> nu1,
                               const NuOptions& options) {
  if (!bipartition(g)) throw ContractViolation("min_degree_check: graph is not bipartite");
  MinDegreeVerdict out;
  out.min_degree = min_degree(g);
  out.nu1 = exact_nu1(g, nu1, options);
  out.ceil_log = ceil_log2(out.nu1);
  const BigRational nu = to_big(out.nu1);
  const BigRational lg(out.ceil_log);
  out.rhs = 4 * nu * (2 * lg + 1) * (64 * nu * nu * nu * lg + 16 * nu * nu + 1);
  out.holds = BigRational(out.min_degree) < out.rhs;
  return out;
}

BigRational density_term_lower(const Rational& nu) {
  if (nu < Rational(1)) throw ContractViolation("density term: nu below 1");
  const BigRational big = to_big(nu);
  BigRational lg;
  const auto num = nu.numerator();
  const auto den = nu.denominator();
  if (den == 1 && (num & (num - 1)) == 0) {
    lg = BigRational(__builtin_ctzll(static_cast<unsigned long long>(num)));
  } else {
    // log2 in extended precision, then pushed down to a multiple of 1e-12.
    const long double value = std::log2(static_cast<long double>(num)) -
                              std::log2(static_cast<long double>(den));
    const long double scaled = std::floor(value * 1e12L * (1.0L - 1e-15L));
    lg = BigRational(BigInt(static_cast<long long>(std::max(scaled, 0.0L))), BigInt(1000000000000LL));
  }
  return 5445 * big * big * big * big * lg * lg;
}

DensityVerdict density_check(const Graph& g, std::optional<Rational> nu1,
                                 const NuOptions& options) {
  DensityVerdict out;
  out.grad0 = grad0_exact(g).value;
  out.nu1 = exact_nu1(g, nu1, options);
  out.rhs = density_term_lower(out.nu1);
  const BigRational lhs = to_big(out.grad0);
  out.strict_holds = lhs < out.rhs;
  out.single_vertex = g.order() == 1;
  out.holds = out.strict_holds || (out.single_vertex && lhs <= out.rhs);
  return out;
}

ShallowGradVerdict shallow_grad_check(const Graph& g, int twice_r, const NuOptions& options,
                                   int guard_n) {
  if (g.order() > guard_n) throw GuardExceeded("shallow_grad_check: order exceeds guard");
  ShallowGradVerdict out;
  out.twice_r = twice_r;
  out.lhs = gradr_bruteforce(g, twice_r, guard_n).value;
  const int k = (twice_r + 2) / 2;
  for (int i = 1; i <= k; ++i) out.nus.push_back(nu_exact(g, i, options).value);
  BigRational inner = density_term_lower(out.nus[0]);
  for (int i = 1; i < k; ++i) inner = std::max(inner, to_big(out.nus[i]));
  out.rhs = BigRational(twice_r + 1) * inner;
  out.holds = to_big(out.lhs) <= out.rhs;
  return out;
}

}  // namespace nbc
