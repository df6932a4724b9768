#include "nbc/signatures.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "nbc/paths.hpp"

namespace nbc {

Colouring::Colouring(int palette, std::vector<int> colour)
    : palette(palette), colour(std::move(colour)) {
  for (int x : this->colour) {
    if (x < 0 || x >= palette) throw ContractViolation("Colouring: colour outside palette");
  }
}

void validate(const Graph& g, const Colouring& c) {
  if (c.order() != g.order()) throw ContractViolation("colouring does not match graph order");
}

std::string write_colouring(const Colouring& c) {
  std::ostringstream out;
  for (int v = 0; v < c.order(); ++v) out << v << ' ' << c[v] << '\n';
  return out.str();
}

Signature::Signature(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw ContractViolation("Signature: must be non-empty");
}

bool Signature::proper() const {
  auto sorted = entries_;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

Signature Signature::reversed() const {
  return Signature(std::vector<int>(entries_.rbegin(), entries_.rend()));
}

std::string to_string(const Signature& sigma) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < sigma.length(); ++i) {
    if (i) out << ',';
    out << sigma[i];
  }
  out << ')';
  return out.str();
}

HattedSignature HattedSignature::from(const Signature& sigma) {
  HattedSignature hat;
  for (std::size_t i = 0; i < sigma.length(); ++i) {
    hat.entries.emplace_back(sigma[i], static_cast<int>(i) + 1);
  }
  return hat;
}

Signature HattedSignature::flatten(int copies) const {
  std::vector<int> flat;
  for (auto [colour, index] : entries) {
    if (index < 1 || index > copies) throw ContractViolation("HattedSignature: index exceeds copies");
    flat.push_back(colour * copies + index - 1);
  }
  return Signature(std::move(flat));
}

int Partition::label_of(Vertex v) const {
  auto it = std::lower_bound(ground_.begin(), ground_.end(), v);
  if (it == ground_.end() || *it != v) throw ContractViolation("Partition: vertex not in ground");
  return labels_[static_cast<std::size_t>(it - ground_.begin())];
}

std::vector<VertexSet> Partition::classes() const {
  std::vector<std::vector<Vertex>> members(classes_);
  for (std::size_t i = 0; i < ground_.size(); ++i) members[labels_[i]].push_back(ground_[i]);
  std::vector<VertexSet> out;
  for (auto& m : members) out.emplace_back(std::move(m));
  return out;
}

std::optional<Edge> Partition::refinement_violation(const Partition& coarser) const {
  if (ground_ != coarser.ground_) throw ContractViolation("Partition: grounds differ");
  std::vector<int> first(classes_, -1);
  for (std::size_t i = 0; i < ground_.size(); ++i) {
    int& f = first[labels_[i]];
    if (f < 0) {
      f = static_cast<int>(i);
    } else if (coarser.labels_[f] != coarser.labels_[i]) {
      return Edge{ground_[f], ground_[i]};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

void check_vertex(const Graph& g, Vertex v) {
  if (v < 0 || v >= g.order()) throw ContractViolation("vertex out of range");
}

}  // namespace

VertexSet sigma_neighbourhood(const Graph& g, const Colouring& c, Vertex v,
                              const Signature& sigma, SigmaMode mode) {
  validate(g, c);
  check_vertex(g, v);
  const std::size_t len = sigma.length();
  if (mode == SigmaMode::walk_dp) {
    if (!sigma.proper()) {
      throw ContractViolation("sigma_neighbourhood: walk-dp requires a proper signature");
    }
    std::vector<Vertex> frontier;
    if (c[v] == sigma[0]) frontier.push_back(v);
    std::vector<char> mark(g.order(), 0);
    for (std::size_t i = 1; i < len && !frontier.empty(); ++i) {
      std::vector<Vertex> next;
      for (Vertex u : frontier) {
        for (Vertex w : g.neighbours(u)) {
          if (c[w] == sigma[i] && !mark[w]) {
            mark[w] = 1;
            next.push_back(w);
          }
        }
      }
      for (Vertex w : next) mark[w] = 0;
      frontier = std::move(next);
    }
    return VertexSet(std::move(frontier));
  }
  std::vector<Vertex> ends;
  for_each_simple_path(
      g, v, static_cast<int>(len),
      [&](const std::vector<Vertex>& prefix, Vertex w) { return c[w] == sigma[prefix.size()]; },
      [&](const std::vector<Vertex>& path) {
        if (path.size() == len) ends.push_back(path.back());
      });
  return VertexSet(std::move(ends));
}

VertexSet sigma_in_neighbourhood(const Graph& g, const Colouring& c, Vertex v,
                                 const Signature& sigma) {
  return sigma_neighbourhood(g, c, v, sigma.reversed(), SigmaMode::paths);
}

std::vector<std::vector<Vertex>> sigma_paths(const Graph& g, const Colouring& c, Vertex v,
                                             const Signature& sigma) {
  validate(g, c);
  check_vertex(g, v);
  std::vector<std::vector<Vertex>> out;
  for_each_simple_path(
      g, v, static_cast<int>(sigma.length()),
      [&](const std::vector<Vertex>& prefix, Vertex w) { return c[w] == sigma[prefix.size()]; },
      [&](const std::vector<Vertex>& path) {
        if (path.size() == sigma.length()) out.push_back(path);
      });
  return out;
}

std::vector<Signature> realised_proper_signatures(const Graph& g, const Colouring& c,
                                                  int max_length) {
  validate(g, c);
  std::set<std::vector<int>> traces;
  std::vector<int> trace;
  for (Vertex v = 0; v < g.order(); ++v) {
    for_each_simple_path(
        g, v, max_length,
        [&](const std::vector<Vertex>& prefix, Vertex w) {
          return std::none_of(prefix.begin(), prefix.end(),
                              [&](Vertex u) { return c[u] == c[w]; });
        },
        [&](const std::vector<Vertex>& path) {
          trace.clear();
          for (Vertex u : path) trace.push_back(c[u]);
          traces.insert(trace);
        });
  }
  std::vector<Signature> out;
  for (const auto& t : traces) out.emplace_back(t);
  return out;
}

std::vector<Signature> signatures_starting_with(int palette, int first, int max_length) {
  std::vector<Signature> out;
  std::vector<int> current{first};
  std::function<void()> extend = [&] {
    out.emplace_back(current);
    if (static_cast<int>(current.size()) == max_length) return;
    for (int colour = 0; colour < palette; ++colour) {
      current.push_back(colour);
      extend();
      current.pop_back();
    }
  };
  if (max_length >= 1) extend();
  return out;
}

SigmaTable::SigmaTable(const Graph& g, const Colouring& c, std::vector<Signature> signatures,
                       SigmaMode mode)
    : n_(g.order()), signatures_(std::move(signatures)) {
  validate(g, c);
  if (n_ > 64) throw GuardExceeded("SigmaTable: order exceeds 64");
  out_.assign(signatures_.size() * n_, 0);
  if (mode == SigmaMode::walk_dp) {
    for (std::size_t s = 0; s < signatures_.size(); ++s) {
      for (Vertex v = 0; v < n_; ++v) {
        out_[s * n_ + v] = sigma_neighbourhood(g, c, v, signatures_[s], mode).to_mask();
      }
    }
    return;
  }
  // One path walk per start vertex, pruned to prefixes of listed signatures.
  std::set<std::vector<int>> prefixes;
  std::map<std::vector<int>, std::vector<std::size_t>> index;
  int longest = 0;
  for (std::size_t s = 0; s < signatures_.size(); ++s) {
    const auto& e = signatures_[s].entries();
    for (std::size_t k = 1; k <= e.size(); ++k) prefixes.emplace(e.begin(), e.begin() + k);
    index[e].push_back(s);
    longest = std::max(longest, static_cast<int>(e.size()));
  }
  std::vector<int> trace;
  for (Vertex v = 0; v < n_; ++v) {
    trace.clear();
    for_each_simple_path(
        g, v, longest,
        [&](const std::vector<Vertex>& prefix, Vertex w) {
          trace.resize(prefix.size());
          trace.push_back(c[w]);
          return prefixes.contains(trace);
        },
        [&](const std::vector<Vertex>& path) {
          trace.resize(path.size());
          for (std::size_t i = 0; i < path.size(); ++i) trace[i] = c[path[i]];
          if (auto it = index.find(trace); it != index.end()) {
            for (std::size_t s : it->second) out_[s * n_ + v] |= std::uint64_t{1} << path.back();
          }
        });
  }
}

// ---------------------------------------------------------------------------

DichotomyVerdict check_dichotomy(const SigmaTable& table, std::size_t sig) {
  if (!table.signatures()[sig].proper()) {
    throw ContractViolation("check_dichotomy: signature must be proper");
  }
  const int n = table.order();
  for (Vertex u = 0; u < n; ++u) {
    const std::uint64_t a = table.out(sig, u);
    for (Vertex v = u + 1; v < n; ++v) {
      const std::uint64_t b = table.out(sig, v);
      if ((a & b) != 0 && a != b) return {false, Edge{u, v}};
    }
  }
  return {};
}

DichotomyVerdict check_dichotomy(const Graph& g, const Colouring& c, const Signature& sigma) {
  return check_dichotomy(SigmaTable(g, c, {sigma}), 0);
}

namespace {

// Members of `within` whose key equals key(v), as a mask.
template <typename KeyOf>
std::uint64_t class_of(Vertex v, std::uint64_t within, KeyOf key) {
  std::uint64_t out = 0;
  const auto target = key(v);
  for (std::uint64_t rest = within; rest; rest &= rest - 1) {
    auto w = static_cast<Vertex>(__builtin_ctzll(rest));
    if (key(w) == target) out |= std::uint64_t{1} << w;
  }
  return out;
}

}  // namespace

LaminarityVerdict check_laminarity(const SigmaTable& table, std::size_t first,
                                   std::size_t second, std::uint64_t x) {
  const int n = table.order();
  std::uint64_t y = 0;
  for (Vertex w = 0; w < n; ++w) {
    if ((table.out(first, w) & x) != 0 && (table.out(second, w) & x) != 0) {
      y |= std::uint64_t{1} << w;
    }
  }
  LaminarityVerdict verdict;
  verdict.reachers = VertexSet::from_mask(y);
  if (first == second || __builtin_popcountll(y) <= 1) return verdict;
  auto key1 = [&](Vertex w) { return table.out(first, w) & x; };
  auto key2 = [&](Vertex w) { return table.out(second, w) & x; };
  std::vector<std::uint64_t> classes1, classes2;
  for (std::uint64_t rest = y; rest; rest &= rest - 1) {
    auto w = static_cast<Vertex>(__builtin_ctzll(rest));
    classes1.push_back(class_of(w, y, key1));
    classes2.push_back(class_of(w, y, key2));
  }
  for (std::uint64_t a : classes1) {
    for (std::uint64_t b : classes2) {
      const std::uint64_t both = a & b;
      if (both != 0 && both != a && both != b) {
        verdict.holds = false;
        verdict.crossing = {VertexSet::from_mask(a), VertexSet::from_mask(b)};
        return verdict;
      }
    }
  }
  return verdict;
}

LaminarityVerdict check_laminarity(const Graph& g, const Colouring& c, const Signature& first,
                                   const Signature& second, const VertexSet& x) {
  if (!first.proper() || !second.proper()) {
    throw ContractViolation("check_laminarity: signatures must be proper");
  }
  if (first == second) {
    return check_laminarity(SigmaTable(g, c, {first}), 0, 0, x.to_mask());
  }
  return check_laminarity(SigmaTable(g, c, {first, second}), 0, 1, x.to_mask());
}

Partition trace_partition_sigma_family(const Graph& g, const Colouring& c, const VertexSet& x,
                                       std::span<const Signature> family,
                                       const VertexSet& ground) {
  validate(g, c);
  std::vector<std::vector<VertexSet>> keys;
  keys.reserve(ground.size());
  for (Vertex v : ground) {
    check_vertex(g, v);
    std::vector<VertexSet> traces;
    for (const Signature& sigma : family) {
      traces.push_back(sigma_neighbourhood(g, c, v, sigma).intersect(x));
    }
    keys.push_back(std::move(traces));
  }
  return Partition::from_keys(ground, keys);
}

FamilyCountVerdict family_class_count_check(const SigmaTable& table, std::span<const std::size_t> family,
                                 std::uint64_t x) {
  if (family.empty()) throw ContractViolation("family_class_count_check: empty signature family");
  for (std::size_t s : family) {
    if (!table.signatures()[s].proper()) {
      throw ContractViolation("family_class_count_check: signatures must be proper");
    }
  }
  const int n = table.order();
  std::uint64_t w_mask = 0;
  std::vector<Vertex> members;
  std::vector<std::vector<std::uint64_t>> keys;
  for (Vertex w = 0; w < n; ++w) {
    std::vector<std::uint64_t> key;
    bool all = true;
    for (std::size_t s : family) {
      const std::uint64_t t = table.out(s, w) & x;
      if (t == 0) {
        all = false;
        break;
      }
      key.push_back(t);
    }
    if (!all) continue;
    w_mask |= std::uint64_t{1} << w;
    keys.push_back(std::move(key));
  }
  FamilyCountVerdict verdict;
  verdict.common_reachers = VertexSet::from_mask(w_mask);
  verdict.classes = static_cast<std::size_t>(
      Partition::from_keys(verdict.common_reachers, keys).class_count());
  verdict.bound = family.size() * static_cast<std::size_t>(__builtin_popcountll(x));
  verdict.holds = verdict.classes <= verdict.bound;
  return verdict;
}

FamilyCountVerdict family_class_count_check(const Graph& g, const Colouring& c, const VertexSet& x,
                                 std::span<const Signature> family) {
  std::vector<Signature> sigs(family.begin(), family.end());
  std::vector<std::size_t> idx(sigs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  if (sigs.empty()) throw ContractViolation("family_class_count_check: empty signature family");
  return family_class_count_check(SigmaTable(g, c, std::move(sigs)), idx, x.to_mask());
}

// ---------------------------------------------------------------------------

Colouring hatted_colouring(const Graph& g, const Colouring& c, int copies) {
  validate(g, c);
  if (copies < 1) throw ContractViolation("hatted_colouring: copies must be positive");
  std::vector<int> colour(static_cast<std::size_t>(g.order()) * copies);
  for (Vertex v = 0; v < g.order(); ++v) {
    for (int i = 1; i <= copies; ++i) colour[v * copies + i - 1] = c[v] * copies + i - 1;
  }
  return Colouring(c.palette * copies, std::move(colour));
}

namespace {

using TraceKey = std::vector<std::pair<std::vector<int>, Vertex>>;

void normalise(TraceKey& key) {
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
}

}  // namespace

ChainReport refinement_chain_check(const Graph& g, const Colouring& c, const VertexSet& x, int r) {
  validate(g, c);
  if (r < 1) throw ContractViolation("refinement_chain_check: r must be positive");
  for (Vertex v : x) check_vertex(g, v);
  const int n = g.order();
  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  const VertexSet ground(all);

  ChainReport report;
  report.radius = r;

  std::vector<VertexSet> twin_keys;
  for (Vertex v = 0; v < n; ++v) twin_keys.push_back(closed_ball(g, v, r - 1).intersect(x));
  report.twin = Partition::from_keys(ground, twin_keys);

  // The full trace vector over all signatures of length <= r is determined by
  // the set of (trace, endpoint) pairs of paths ending in X.
  std::vector<TraceKey> sigma_keys(n);
  for (Vertex v = 0; v < n; ++v) {
    for_each_simple_path(
        g, v, r, [](const std::vector<Vertex>&, Vertex) { return true; },
        [&](const std::vector<Vertex>& path) {
          if (!x.contains(path.back())) return;
          std::vector<int> trace;
          for (Vertex u : path) trace.push_back(c[u]);
          sigma_keys[v].emplace_back(std::move(trace), path.back());
        });
    normalise(sigma_keys[v]);
  }
  report.sigma = Partition::from_keys(ground, sigma_keys);

  // Hatted signatures force the i-th path vertex into copy i.
  const BlowupGraph hat = blowup(g, r);
  const Colouring hat_c = hatted_colouring(g, c, r);
  std::vector<TraceKey> hatted_keys(n);
  for (Vertex v = 0; v < n; ++v) {
    for_each_simple_path(
        hat.graph(), hat.copy(v, 1), r,
        [&](const std::vector<Vertex>& prefix, Vertex w) {
          return hat.index_of(w) == static_cast<int>(prefix.size()) + 1;
        },
        [&](const std::vector<Vertex>& path) {
          if (!x.contains(hat.base_of(path.back()))) return;
          std::vector<int> trace;
          for (Vertex u : path) trace.push_back(hat_c[u]);
          hatted_keys[v].emplace_back(std::move(trace), path.back());
        });
    normalise(hatted_keys[v]);
  }
  report.hatted = Partition::from_keys(ground, hatted_keys);

  if (auto bad = report.sigma.refinement_violation(report.twin)) {
    report.holds = false;
    report.violation = ChainViolation{"sigma->twin", bad->first, bad->second};
  } else if (auto bad2 = report.hatted.refinement_violation(report.sigma)) {
    report.holds = false;
    report.violation = ChainViolation{"hatted->sigma", bad2->first, bad2->second};
  }
  report.hatted_bound = hatted_class_bound(r, c.palette, x.size());
  report.bound_holds = report.hatted_bound.admits(BigRational(report.hatted.class_count()));
  return report;
}

}  // namespace nbc
