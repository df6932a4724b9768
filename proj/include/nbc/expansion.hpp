#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nbc/bounds.hpp"
#include "nbc/complexity.hpp"
#include "nbc/graph.hpp"

namespace nbc {

// Half-integers are carried as twice their value.
std::string half_to_string(int twice);
// Accepts "k" or "k/2"; nullopt when malformed or negative.
std::optional<int> parse_half(std::string_view text);

// Pattern H mapped into G: vertices by phi_v, the i-th edge of
// pattern.edges() by the vertex sequence phi_e[i].
struct EmbeddingCertificate {
  Graph pattern;
  std::vector<Vertex> phi_v;
  std::vector<std::vector<Vertex>> phi_e;

  // Twice the depth: longest path edge count minus one (0 for no edges).
  int twice_depth() const;
};

struct EmbeddingVerdict {
  bool valid = true;
  std::string reason;
};

// Paths must be simple, follow edges of G, join the images of their pattern
// endpoints, and be pairwise internally vertex-disjoint.
EmbeddingVerdict validate_embedding(const Graph& g, const EmbeddingCertificate& cert);

std::string write_certificate(const EmbeddingCertificate& cert);

enum class GradMode { exact, lower_bound };
std::string_view grad_mode_name(GradMode mode);

struct GradReport {
  Rational value{0};
  int twice_r = 0;
  GradMode mode = GradMode::exact;
  EmbeddingCertificate witness;
};

// Densest subgraph by repeated max-closure (Dinkelbach iteration): at
// density p/q, pick edges worth q each that pay p per endpoint vertex.
GradReport grad0_exact(const Graph& g);

inline constexpr int kGradGuard = 8;

// Maximum pattern density over branch sets B and packings of internally
// disjoint paths of at most 2r+1 edges between B-vertices.
GradReport gradr_bruteforce(const Graph& g, int twice_r, int guard_n = kGradGuard);

// ---------------------------------------------------------------------------
// Degree and density bounds from neighbourhood complexity

// Bipartite G with sides A and V - A; every B-vertex has degree >= r. Finds
// A' of size s and B' with |B'| >= |B|/2 whose members have at least
// r*s/|A| neighbours in A'.
std::optional<std::pair<VertexSet, VertexSet>> dense_half_oracle(const Graph& g, const VertexSet& a,
                                                              int r, int s);

struct MinDegreeVerdict {
  int min_degree = 0;
  Rational nu1{0};
  int ceil_log = 0;
  BigRational rhs;
  bool holds = true;  // min degree < rhs
};

// Bipartite G only. `nu1` is computed exactly when absent.
MinDegreeVerdict min_degree_check(const Graph& g, std::optional<Rational> nu1 = std::nullopt,
                               const NuOptions& options = {});

// Lower bound on 5445 * nu^4 * log2(nu)^2, exact when nu is a power of two
// and otherwise below the true value by less than 1e-9 relative.
BigRational density_term_lower(const Rational& nu);

struct DensityVerdict {
  Rational grad0{0};
  Rational nu1{0};
  BigRational rhs;            // lower bound on 5445 nu^4 log^2 nu
  bool strict_holds = true;   // grad0 < rhs
  bool single_vertex = false;  // both sides are 0
  bool holds = true;          // strict_holds, or grad0 <= rhs on a single vertex
};

DensityVerdict density_check(const Graph& g, std::optional<Rational> nu1 = std::nullopt,
                                 const NuOptions& options = {});

struct ShallowGradVerdict {
  int twice_r = 0;
  Rational lhs{0};
  std::vector<Rational> nus;  // nu_1 .. nu_k with k = ceil(r + 1/2)
  BigRational rhs;            // lower bound on the right-hand side
  bool holds = true;          // lhs <= rhs
};

ShallowGradVerdict shallow_grad_check(const Graph& g, int twice_r, const NuOptions& options = {},
                                   int guard_n = kGradGuard);

}  // namespace nbc
