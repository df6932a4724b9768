#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "nbc/bounds.hpp"
#include "nbc/graph.hpp"
#include "nbc/signatures.hpp"

namespace nbc {

struct TraceTable {
  int radius = 0;
  VertexSet x;
  std::vector<VertexSet> traces;  // traces[v] = N^r[v] ∩ X
  Partition partition;

  int class_count() const { return partition.class_count(); }
};

TraceTable trace_table(const Graph& g, const VertexSet& x, int r);

// Distinct traces divided by |X|.
Rational nu_fixed(const Graph& g, const VertexSet& x, int r);

enum class NuMode { exact, lower_bound, fixed_instance };
std::string_view mode_name(NuMode mode);

struct NuGuard {
  int max_n = 9;
  int max_m = 14;
};

// Exact ν values of graphs already seen, keyed by canonical adjacency code
// (or the labelled code when canonicalisation is too symmetric to be cheap).
// Shareable across calls; not thread-safe.
class NuCache {
 public:
  std::optional<Rational> find(int n, std::uint64_t code, int r, bool induced) const;
  void store(int n, std::uint64_t code, int r, bool induced, Rational value);
  std::size_t size() const { return values_.size(); }

 private:
  std::map<std::tuple<int, std::uint64_t, int, bool>, Rational> values_;
};

enum class NuEngine {
  memo,       // maximum over the graph itself and every one-step deletion, memoised
  enumerate,  // every (vertex subset, edge subset, X) triple in order
};

struct NuOptions {
  NuGuard guard;
  bool induced_only = false;  // vertex deletions only; a lower bound on ν
  NuEngine engine = NuEngine::memo;
  NuCache* cache = nullptr;
};

struct NuReport {
  int radius = 0;
  Rational value{0};
  NuMode mode = NuMode::exact;
  SubgraphSpec witness;  // host ids
  VertexSet witness_x;
  bool induced_only = false;
  std::uint64_t seed = 0;
  long long budget = 0;
};

// Re-evaluates the witness on the host graph.
Rational evaluate_witness(const Graph& g, const NuReport& report);

NuReport nu_exact(const Graph& g, int r, const NuOptions& options = {});

// Hill climbing with restarts over (induced subgraph minus some edges, X).
NuReport nu_lower_bound(const Graph& g, int r, std::uint64_t seed, long long budget);

struct BoundComparison {
  int parameter = 0;        // χ_{2r+2} or wcol_{2r}
  bool parameter_exact = true;
  BigBound rhs;
  bool holds = true;        // ν <= rhs
  bool informational = false;  // parameter or ν not exact
};

struct BoundReport {
  int radius = 0;
  Rational nu{0};
  NuMode nu_mode = NuMode::exact;
  std::optional<BoundComparison> centred;
  std::optional<BoundComparison> wcol;
};

struct ParameterInput {
  int value = 0;
  bool exact = true;
};

BoundReport complexity_bounds(const NuReport& nu, std::optional<ParameterInput> chi,
                                 std::optional<ParameterInput> wcol);

}  // namespace nbc
