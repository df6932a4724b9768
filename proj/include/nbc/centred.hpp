#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nbc/graph.hpp"
#include "nbc/signatures.hpp"

namespace nbc {

struct CentredVerdict {
  bool is_centred = true;
  // Connected vertex set with no uniquely coloured vertex and fewer than r
  // colours.
  std::optional<VertexSet> witness;
};

inline constexpr int kCentredGuard = 16;
inline constexpr int kChiGuard = 10;
inline constexpr int kTreedepthGuard = 20;

// Checks every connected vertex subset. Induced subsets suffice: colour
// counts depend only on the vertex set. `guard_n` may be raised up to 64.
CentredVerdict is_r_centred(const Graph& g, const Colouring& c, int r,
                            int guard_n = kCentredGuard);

struct ChiResult {
  int value = 0;
  Colouring witness;
};

// Least k admitting an r-centred k-colouring.
ChiResult chi_r_exact(const Graph& g, int r, int guard_n = kChiGuard);

// Rooted forest on V(G); depth of a root is 1.
struct EliminationForest {
  std::vector<Vertex> parent;  // -1 for roots
  std::vector<int> depth;

  int order() const { return static_cast<int>(parent.size()); }
  int height() const;
  VertexSet roots() const;
  bool is_ancestor(Vertex a, Vertex v) const;  // reflexive
};

// Throws ContractViolation unless `f` is a forest on V(g) with consistent
// depths whose ancestor relation covers every edge of g.
void validate(const Graph& g, const EliminationForest& f);

std::string write_forest(const EliminationForest& f);

struct TreedepthResult {
  int value = 0;
  EliminationForest forest;
  bool exact = true;
};

// Memoised search over vertex subsets: td(S) = 1 + min_v td(S - v) on
// connected S, the maximum over components otherwise.
TreedepthResult treedepth_exact(const Graph& g, int guard_n = kTreedepthGuard);

// Upper bound: repeatedly root each component at its highest-degree vertex.
TreedepthResult treedepth_heuristic(const Graph& g);

// Colour = depth - 1. The result is r-centred for every r.
Colouring centred_colouring_from_forest(const Graph& g, const EliminationForest& f);

}  // namespace nbc
