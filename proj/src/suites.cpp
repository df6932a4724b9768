#include "nbc/suites.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "nbc/bounds.hpp"
#include "nbc/centred.hpp"
#include "nbc/complexity.hpp"
#include "nbc/expansion.hpp"
#include "nbc/rng.hpp"
#include "nbc/signatures.hpp"
#include "nbc/wcol.hpp"

namespace nbc {

namespace {

struct SuiteInfo {
  Suite suite;
  std::string_view name;
  std::string_view token;
  int default_guard;
  int hard_guard;
};

constexpr SuiteInfo kSuites[] = {
    {Suite::dichotomy, "dichotomy", "lemma4", 7, 10},
    {Suite::laminarity, "laminarity", "lemma5", 7, 10},
    {Suite::refinement_chain, "refinement-chain", "chain", 7, 10},
    {Suite::family_count, "family-count", "lemma7", 7, 10},
    {Suite::hatted_count, "hatted-count", "lemma9", 7, 10},
    {Suite::wcol_witness, "wcol-witness", "wcol-witness", 12, 64},
    {Suite::centred_bound, "centred-bound", "theorem2", 7, kChiGuard},
    {Suite::wcol_bound, "wcol-bound", "theorem3", 8, kWcolGuard},
    {Suite::min_degree, "min-degree", "lemma13", 8, 9},
    {Suite::density, "density", "corollary14", 8, 9},
    {Suite::shallow_grad, "shallow-grad", "theorem15", kGradGuard, kGradGuard},
};

const SuiteInfo& info(Suite suite) {
  for (const auto& i : kSuites) {
    if (i.suite == suite) return i;
  }
  throw ContractViolation("unknown suite");
}

bool uses_nu(Suite suite) {
  return suite == Suite::min_degree || suite == Suite::density || suite == Suite::shallow_grad;
}

bool uses_signatures(Suite suite) {
  return suite == Suite::dichotomy || suite == Suite::laminarity ||
         suite == Suite::refinement_chain || suite == Suite::family_count ||
         suite == Suite::hatted_count;
}

nlohmann::json graph_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.order()}, {"edges", edges}};
}

nlohmann::json set_json(const VertexSet& s) { return s.members(); }

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Non-empty subsets of V as bitmasks: all of them for small n, otherwise a
// fixed number drawn uniformly with replacement.
std::vector<std::uint64_t> x_choices(int n, const SuiteOptions& options, Rng& rng) {
  std::vector<std::uint64_t> out;
  if (n == 0) return out;
  const std::uint64_t full = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  if (n <= options.all_x_up_to) {
    for (std::uint64_t x = 1; x <= full; ++x) out.push_back(x);
    return out;
  }
  for (int i = 0; i < options.x_per_graph; ++i) {
    if (n >= 64) {
      std::uint64_t x;
      do {
        x = rng.next();
      } while (x == 0);
      out.push_back(x);
    } else {
      out.push_back(rng.below(full) + 1);
    }
  }
  return out;
}

std::vector<std::uint64_t> ball_masks(const Graph& g, int r) {
  std::vector<std::uint64_t> out(g.order());
  for (Vertex v = 0; v < g.order(); ++v) out[v] = closed_ball(g, v, r).to_mask();
  return out;
}

int twin_class_count(const std::vector<std::uint64_t>& balls, std::uint64_t x) {
  std::vector<std::uint64_t> traces;
  traces.reserve(balls.size());
  for (std::uint64_t b : balls) traces.push_back(b & x);
  std::sort(traces.begin(), traces.end());
  return static_cast<int>(std::unique(traces.begin(), traces.end()) - traces.begin());
}

using CanonKey = std::pair<int, std::uint64_t>;

CanonKey canon_key(const Graph& g) { return {g.order(), canonical_code(g)}; }

class Runner {
 public:
  Runner(Suite suite, const SuiteOptions& options) : suite_(suite), options_(options) {
    result_.suite = std::string(info(suite).name);
    result_.twice_r = options.twice_r;
    r_ = options.twice_r / 2;
    nu_options_.cache = &nu_cache_;
  }

  void visit(std::size_t index, const Graph& g) {
    ++result_.graphs;
    Rng rng(mix(options_.seed, index));
    switch (suite_) {
      case Suite::dichotomy:
      case Suite::laminarity:
      case Suite::refinement_chain:
      case Suite::family_count:
      case Suite::hatted_count:
        signature_suite(g, rng);
        break;
      case Suite::wcol_witness:
        witness_suite(g, rng);
        break;
      case Suite::centred_bound:
      case Suite::wcol_bound:
        complexity_bound_suite(g, rng);
        break;
      case Suite::min_degree:
        min_degree_suite(g);
        break;
      case Suite::density:
        density_suite(g);
        break;
      case Suite::shallow_grad:
        shallow_grad_suite(g);
        break;
    }
  }

  SuiteResult finish() {
    for (auto& [key, value] : counters_) result_.stats[key] = std::to_string(value);
    if (max_ratio_) result_.stats["max_classes_per_x"] = to_string(*max_ratio_);
    return std::move(result_);
  }

 private:
  void violation(nlohmann::json detail) {
    ++result_.violations;
    if (!result_.counterexample) {
      detail["suite"] = result_.suite;
      detail["r"] = half_to_string(options_.twice_r);
      result_.counterexample = std::move(detail);
    }
  }

  void note_ratio(int classes, std::uint64_t x) {
    const Rational q(classes, std::popcount(x));
    if (!max_ratio_ || q > *max_ratio_) max_ratio_ = q;
  }

  // -------------------------------------------------------------------------
  // Centred colourings and signature structure

  struct TestColouring {
    Colouring colouring;
    bool fully_centred;
    std::string source;
  };

  std::vector<TestColouring> colourings(const Graph& g, Rng& rng) {
    std::vector<TestColouring> out;
    std::set<std::vector<int>> seen;
    const int centred_r = 2 * r_ + 2;
    auto add_forest = [&](const EliminationForest& forest, const char* source) {
      Colouring c = centred_colouring_from_forest(g, forest);
      if (!seen.insert(c.colour).second) return;
      if (!is_r_centred(g, c, centred_r).is_centred) {
        violation({{"graph", graph_json(g)},
                   {"colouring", c.colour},
                   {"detail", std::string("forest colouring is not centred: ") + source}});
        return;
      }
      out.push_back({std::move(c), true, source});
    };
    if (g.order() > 0) {
      add_forest(treedepth_exact(g).forest, "treedepth-exact");
      add_forest(treedepth_heuristic(g).forest, "treedepth-heuristic");
    }
    for (int i = 0; i < options_.random_colourings && g.order() > 0; ++i) {
      const int palette = 1 + static_cast<int>(rng.below(g.order()));
      std::vector<int> colour(g.order());
      for (int& c : colour) c = static_cast<int>(rng.below(palette));
      Colouring c(palette, colour);
      if (!seen.insert(c.colour).second) continue;
      if (!is_r_centred(g, c, centred_r).is_centred) {
        ++counters_["random_colourings_rejected"];
        continue;
      }
      const bool full = is_r_centred(g, c, g.order() + 1).is_centred;
      out.push_back({std::move(c), full, "random"});
    }
    counters_["colourings"] += static_cast<long long>(out.size());
    return out;
  }

  static int colour_union(const Signature& a, const Signature& b) {
    std::set<int> colours(a.entries().begin(), a.entries().end());
    colours.insert(b.entries().begin(), b.entries().end());
    return static_cast<int>(colours.size());
  }

  nlohmann::json colouring_case(const Graph& g, const TestColouring& tc) const {
    return {{"graph", graph_json(g)},
            {"colouring", tc.colouring.colour},
            {"colouring_source", tc.source}};
  }

  void signature_suite(const Graph& g, Rng& rng) {
    const auto xs = x_choices(g.order(), options_, rng);
    for (const TestColouring& tc : colourings(g, rng)) {
      const Colouring& c = tc.colouring;
      switch (suite_) {
        case Suite::dichotomy: {
          SigmaTable table(g, c, realised_proper_signatures(g, c, 2 * r_ + 1));
          for (std::size_t i = 0; i < table.signatures().size(); ++i) {
            ++result_.cases;
            auto verdict = check_dichotomy(table, i);
            if (!verdict.holds) {
              auto detail = colouring_case(g, tc);
              detail["signature"] = to_string(table.signatures()[i]);
              detail["pair"] = {verdict.counterexample->first, verdict.counterexample->second};
              violation(std::move(detail));
            }
          }
          break;
        }
        case Suite::laminarity: {
          SigmaTable table(g, c, realised_proper_signatures(g, c, 2 * r_ + 1));
          const auto& sigs = table.signatures();
          std::vector<std::pair<std::size_t, std::size_t>> pairs;
          for (std::size_t i = 0; i < sigs.size(); ++i) {
            for (std::size_t j = i + 1; j < sigs.size(); ++j) {
              if (tc.fully_centred || colour_union(sigs[i], sigs[j]) <= 2 * r_ + 1) {
                pairs.emplace_back(i, j);
              }
            }
          }
          for (std::uint64_t x : xs) {
            for (auto [i, j] : pairs) {
              ++result_.cases;
              auto verdict = check_laminarity(table, i, j, x);
              if (!verdict.holds) {
                auto detail = colouring_case(g, tc);
                detail["x"] = set_json(VertexSet::from_mask(x));
                detail["signatures"] = {to_string(sigs[i]), to_string(sigs[j])};
                violation(std::move(detail));
              }
            }
          }
          break;
        }
        case Suite::family_count: {
          const int max_len = tc.fully_centred ? 2 * r_ + 1 : r_;
          SigmaTable table(g, c, realised_proper_signatures(g, c, max_len));
          const std::size_t k = table.signatures().size();
          std::vector<std::vector<std::size_t>> families;
          for (std::size_t i = 0; i < k; ++i) families.push_back({i});
          for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) families.push_back({i, j});
          }
          if (k > 2) {
            std::vector<std::size_t> all(k);
            for (std::size_t i = 0; i < k; ++i) all[i] = i;
            families.push_back(std::move(all));
          }
          for (std::uint64_t x : xs) {
            for (const auto& family : families) {
              ++result_.cases;
              auto verdict = family_class_count_check(table, family, x);
              if (!verdict.holds) {
                auto detail = colouring_case(g, tc);
                detail["x"] = set_json(VertexSet::from_mask(x));
                std::vector<std::string> names;
                for (std::size_t i : family) names.push_back(to_string(table.signatures()[i]));
                detail["family"] = names;
                detail["classes"] = verdict.classes;
                detail["bound"] = verdict.bound;
                violation(std::move(detail));
              }
            }
          }
          break;
        }
        case Suite::refinement_chain:
        case Suite::hatted_count: {
          for (std::uint64_t x : xs) {
            ++result_.cases;
            const VertexSet xset = VertexSet::from_mask(x);
            ChainReport report = refinement_chain_check(g, c, xset, r_);
            const bool ok = suite_ == Suite::refinement_chain ? report.holds : report.bound_holds;
            if (suite_ == Suite::hatted_count) note_ratio(report.hatted.class_count(), x);
            if (!ok) {
              auto detail = colouring_case(g, tc);
              detail["x"] = set_json(xset);
              detail["class_counts"] = {report.twin.class_count(), report.sigma.class_count(),
                                        report.hatted.class_count()};
              if (report.violation) {
                detail["stage"] = report.violation->stage;
                detail["pair"] = {report.violation->u, report.violation->v};
              }
              detail["bound"] = report.hatted_bound.to_string();
              violation(std::move(detail));
            }
          }
          break;
        }
        default:
          break;
      }
    }
  }

  // -------------------------------------------------------------------------
  // Witness sets from random orders

  void witness_suite(const Graph& g, Rng& rng) {
    const int n = g.order();
    for (int k = 0; k < options_.orders_per_graph; ++k) {
      std::vector<Vertex> seq(n);
      for (Vertex v = 0; v < n; ++v) seq[v] = v;
      rng.shuffle(seq);
      const Ordering order = Ordering::from_sequence(seq);
      WitnessBundleBuilder builder(g, order, r_);
      for (std::uint64_t x : x_choices(n, options_, rng)) {
        ++result_.cases;
        const VertexSet xset = VertexSet::from_mask(x);
        const WitnessBundle bundle = builder.build(xset);
        const BundleCheck check = builder.check(bundle, xset);
        if (!check.all()) {
          violation({{"graph", graph_json(g)},
                     {"order", seq},
                     {"x", set_json(xset)},
                     {"detail", check.first_failure}});
        }
      }
    }
  }

  // -------------------------------------------------------------------------
  // Twin-class counts against colouring-number bounds

  int cached_parameter(const Graph& g) {
    const CanonKey key = canon_key(g);
    auto it = parameter_cache_.find(key);
    if (it != parameter_cache_.end()) return it->second;
    const int value = suite_ == Suite::centred_bound ? chi_r_exact(g, 2 * r_ + 2).value
                                                     : wcol_exact(g, 2 * r_).value;
    parameter_cache_.emplace(key, value);
    return value;
  }

  void complexity_bound_suite(const Graph& g, Rng& rng) {
    if (g.order() == 0) return;
    const int parameter = cached_parameter(g);
    const BigBound per_x = suite_ == Suite::centred_bound ? centred_complexity_bound(r_, parameter)
                                                          : wcol_complexity_bound(r_, parameter);
    const auto balls = ball_masks(g, r_);
    for (std::uint64_t x : x_choices(g.order(), options_, rng)) {
      ++result_.cases;
      const int classes = twin_class_count(balls, x);
      note_ratio(classes, x);
      const BigRational size(std::popcount(x));
      const bool ok = !per_x.materialised() || BigRational(classes) <= per_x.value() * size;
      if (!ok) {
        violation({{"graph", graph_json(g)},
                   {"x", set_json(VertexSet::from_mask(x))},
                   {"classes", classes},
                   {"parameter", parameter},
                   {"bound_per_x", per_x.to_string()}});
      }
    }
  }

  // -------------------------------------------------------------------------
  // Expansion bounds from neighbourhood complexity

  void min_degree_suite(const Graph& g) {
    if (!bipartition(g)) {
      ++result_.skipped;
      return;
    }
    ++result_.cases;
    const CanonKey key = canon_key(g);
    auto it = verdict_cache_.find(key);
    if (it == verdict_cache_.end()) {
      const MinDegreeVerdict v = min_degree_check(g, std::nullopt, nu_options_);
      nlohmann::json detail = {{"min_degree", v.min_degree},
                               {"nu1", to_string(v.nu1)},
                               {"rhs", to_string(v.rhs)}};
      it = verdict_cache_.emplace(key, std::make_pair(v.holds, detail)).first;
    }
    if (!it->second.first) {
      auto detail = it->second.second;
      detail["graph"] = graph_json(g);
      violation(std::move(detail));
    }
  }

  void density_suite(const Graph& g) {
    ++result_.cases;
    const CanonKey key = canon_key(g);
    auto it = verdict_cache_.find(key);
    if (it == verdict_cache_.end()) {
      const DensityVerdict v = density_check(g, std::nullopt, nu_options_);
      if (v.single_vertex) ++counters_["single_vertex_cases"];
      nlohmann::json detail = {{"grad0", to_string(v.grad0)},
                               {"nu1", to_string(v.nu1)},
                               {"rhs_lower", to_string(v.rhs)},
                               {"strict_holds", v.strict_holds}};
      it = verdict_cache_.emplace(key, std::make_pair(v.holds, detail)).first;
    }
    if (!it->second.first) {
      auto detail = it->second.second;
      detail["graph"] = graph_json(g);
      violation(std::move(detail));
    }
  }

  void shallow_grad_suite(const Graph& g) {
    ++result_.cases;
    const CanonKey key = canon_key(g);
    auto it = verdict_cache_.find(key);
    if (it == verdict_cache_.end()) {
      const ShallowGradVerdict v =
          shallow_grad_check(g, options_.twice_r, nu_options_, suite_guard_);
      std::vector<std::string> nus;
      for (const auto& q : v.nus) nus.push_back(to_string(q));
      nlohmann::json detail = {{"grad", to_string(v.lhs)}, {"nus", nus}, {"rhs_lower", to_string(v.rhs)}};
      it = verdict_cache_.emplace(key, std::make_pair(v.holds, detail)).first;
    }
    if (!it->second.first) {
      auto detail = it->second.second;
      detail["graph"] = graph_json(g);
      violation(std::move(detail));
    }
  }

 public:
  int suite_guard_ = kGradGuard;

 private:
  Suite suite_;
  SuiteOptions options_;
  int r_ = 1;
  SuiteResult result_;
  NuCache nu_cache_;
  NuOptions nu_options_;
  std::map<CanonKey, int> parameter_cache_;
  std::map<CanonKey, std::pair<bool, nlohmann::json>> verdict_cache_;
  std::map<std::string, long long> counters_;
  std::optional<Rational> max_ratio_;
};

}  // namespace

std::optional<Suite> suite_from_name(std::string_view name) {
  std::string normal(name);
  std::replace(normal.begin(), normal.end(), '_', '-');
  for (const auto& i : kSuites) {
    if (normal == i.name || normal == i.token) return i.suite;
  }
  return std::nullopt;
}

std::string_view suite_name(Suite suite) { return info(suite).name; }
std::string_view suite_token(Suite suite) { return info(suite).token; }

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites = [] {
    std::vector<Suite> out;
    for (const auto& i : kSuites) out.push_back(i.suite);
    return out;
  }();
  return suites;
}

int suite_default_guard(Suite suite) { return info(suite).default_guard; }
int suite_hard_guard(Suite suite) { return info(suite).hard_guard; }

std::string suite_cost_estimate(Suite suite, int n) {
  std::ostringstream out;
  out << "labelled graphs on " << n << " vertices: 2^" << n * (n - 1) / 2 << "; per graph ";
  switch (suite) {
    case Suite::wcol_witness:
      out << "polynomial work per (order, X) pair";
      break;
    case Suite::centred_bound:
      out << "colour search over up to " << n << "^" << n << " colourings of 2^" << n
          << " connected sets";
      break;
    case Suite::wcol_bound:
      out << "branch and bound over up to " << n << "! vertex orders";
      break;
    case Suite::min_degree:
    case Suite::density:
      out << "nu_1 over every subgraph: up to 2^" << n << " vertex sets x 2^m edge sets x 2^" << n
          << " choices of X";
      break;
    case Suite::shallow_grad:
      out << "path packings over 2^" << n << " branch sets plus nu over every subgraph";
      break;
    default:
      out << "simple-path enumeration over " << n << "! paths per signature and 2^" << n
          << " choices of X";
      break;
  }
  return out.str();
}

void check_suite_request(Suite suite, const CorpusSpec& corpus, const SuiteOptions& options) {
  const SuiteInfo& i = info(suite);
  if (options.twice_r < 0) throw ContractViolation("r must be non-negative");
  const bool half_ok = suite == Suite::shallow_grad || suite == Suite::density ||
                       suite == Suite::min_degree;
  if (!half_ok && options.twice_r % 2 != 0) {
    throw ContractViolation(std::string(i.name) + " needs an integer r");
  }
  if ((uses_signatures(suite) || suite == Suite::wcol_witness) && options.twice_r < 2) {
    throw ContractViolation(std::string(i.name) + " needs r >= 1");
  }
  int guard = options.guard_n.value_or(i.default_guard);
  if (guard > i.hard_guard) {
    throw GuardExceeded(std::string(i.name) + ": --guard-n above the hard limit " +
                        std::to_string(i.hard_guard));
  }
  int largest = corpus.max_n;
  for (const Graph& g : corpus.extra) largest = std::max(largest, g.order());
  if (largest > guard) {
    throw GuardExceeded(std::string(i.name) + ": corpus reaches n = " + std::to_string(largest) +
                        " but the guard is n <= " + std::to_string(guard));
  }
  if (!corpus.unique && corpus.max_n > kMaxEnumerationOrder) {
    throw GuardExceeded("labelled enumeration is limited to n <= " +
                        std::to_string(kMaxEnumerationOrder) + "; use unique graphs");
  }
  if (uses_nu(suite)) {
    const NuGuard nu_guard;
    const int densest = corpus.max_n * (corpus.max_n - 1) / 2;
    const int edge_cap = corpus.max_m < 0 ? densest : std::min(densest, corpus.max_m);
    if (edge_cap > nu_guard.max_m) {
      throw GuardExceeded(std::string(i.name) + ": graphs with more than " +
                          std::to_string(nu_guard.max_m) +
                          " edges exceed the nu guard; pass --max-m");
    }
    for (const Graph& g : corpus.extra) {
      if (static_cast<int>(g.size()) > nu_guard.max_m) {
        throw GuardExceeded(std::string(i.name) + ": an extra graph has more than " +
                            std::to_string(nu_guard.max_m) + " edges");
      }
    }
  }
}

void for_each_corpus_graph(const CorpusSpec& corpus,
                           const std::function<void(std::size_t, const Graph&)>& visit) {
  std::size_t index = 0;
  EnumerationOptions opts;
  opts.connected_only = corpus.connected_only;
  opts.unique_up_to_isomorphism = corpus.unique;
  for (int n = std::max(corpus.min_n, 1); n <= corpus.max_n; ++n) {
    for_each_small_graph(n, opts, [&](const Graph& g) {
      if (corpus.max_m >= 0 && static_cast<int>(g.size()) > corpus.max_m) return;
      visit(index++, g);
    });
  }
  for (const Graph& g : corpus.extra) {
    if (corpus.max_m >= 0 && static_cast<int>(g.size()) > corpus.max_m) continue;
    visit(index++, g);
  }
}

nlohmann::json SuiteResult::to_json() const {
  nlohmann::json out = {{"suite", suite},
                        {"r", half_to_string(twice_r)},
                        {"graphs", graphs},
                        {"cases", cases},
                        {"skipped", skipped},
                        {"violations", violations},
                        {"passed", passed()},
                        {"stats", stats}};
  if (counterexample) out["counterexample"] = *counterexample;
  return out;
}

SuiteResult run_suite(Suite suite, const CorpusSpec& corpus, const SuiteOptions& options) {
  check_suite_request(suite, corpus, options);
  Runner runner(suite, options);
  runner.suite_guard_ = options.guard_n.value_or(suite_default_guard(suite));
  for_each_corpus_graph(corpus, [&](std::size_t index, const Graph& g) { runner.visit(index, g); });
  return runner.finish();
}

}  // namespace nbc
