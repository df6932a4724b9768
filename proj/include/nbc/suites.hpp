#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nbc/graph.hpp"
#include "json.hpp"

namespace nbc {

// Property suites run over a corpus of small graphs. Each suite checks one
// inequality or structural statement on every graph (and every choice of
// auxiliary data such as X, an ordering or a colouring) and counts failures.
enum class Suite {
  dichotomy,         // sigma-neighbourhoods are equal or disjoint
  laminarity,        // trace classes of two signatures are laminar
  refinement_chain,  // hatted traces refine sigma traces refine twin classes
  family_count,      // |W / ~| <= |family| * |X|
  hatted_count,      // hatted classes <= r * 2^(xi^(r+1)) * |X|
  wcol_witness,      // witness sets built from a linear order
  centred_bound,     // twin classes <= (r+1) 2^(chi^(r+2)) |X|
  wcol_bound,        // twin classes <= (1/2 (2r+2)^w w + 1) |X|
  min_degree,        // min degree of bipartite graphs against nu_1
  density,           // densest subgraph against nu_1
  shallow_grad,      // shallow topological grad against nu_1 .. nu_k
};

// Accepts the descriptive names above (with '-' for '_') and the short
// command-line tokens listed by suite_token.
std::optional<Suite> suite_from_name(std::string_view name);
std::string_view suite_name(Suite suite);
// Command-line token, e.g. "lemma4" for dichotomy.
std::string_view suite_token(Suite suite);

const std::vector<Suite>& all_suites();

struct CorpusSpec {
  int min_n = 1;
  int max_n = 5;
  bool connected_only = true;
  bool unique = false;  // one graph per isomorphism class
  int max_m = -1;       // skip graphs with more edges; -1 for no limit
  std::vector<Graph> extra;  // appended after the enumerated graphs
};

// Visits the corpus in order: enumerated graphs by increasing n, then extras.
void for_each_corpus_graph(const CorpusSpec& corpus,
                           const std::function<void(std::size_t index, const Graph&)>& visit);

struct SuiteOptions {
  int twice_r = 2;            // suites over integer r require an even value
  std::uint64_t seed = 0;
  int orders_per_graph = 20;  // wcol-witness
  int x_per_graph = 20;       // random X when n exceeds all_x_up_to
  int all_x_up_to = 5;        // every non-empty X when n <= this
  int random_colourings = 0;  // extra random colourings kept when centred
  std::optional<int> guard_n;  // overrides the suite's default order guard
};

// Largest graph order a suite accepts by default, and the hard limit that
// --guard-n may raise it to.
int suite_default_guard(Suite suite);
int suite_hard_guard(Suite suite);
// Human-readable cost estimate for running `suite` at order n.
std::string suite_cost_estimate(Suite suite, int n);

// Throws GuardExceeded when the corpus is out of reach and ContractViolation
// when r is not admissible for the suite.
void check_suite_request(Suite suite, const CorpusSpec& corpus, const SuiteOptions& options);

struct SuiteResult {
  std::string suite;
  int twice_r = 0;
  long long graphs = 0;
  long long cases = 0;
  long long skipped = 0;
  long long violations = 0;
  std::optional<nlohmann::json> counterexample;  // first violation, smallest graph first
  std::map<std::string, std::string> stats;

  bool passed() const { return violations == 0; }
  nlohmann::json to_json() const;
};

SuiteResult run_suite(Suite suite, const CorpusSpec& corpus, const SuiteOptions& options);

}  // namespace nbc
