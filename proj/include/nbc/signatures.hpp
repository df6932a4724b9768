#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nbc/bounds.hpp"
#include "nbc/graph.hpp"

namespace nbc {

// Total vertex colouring with colours in [0, palette).
struct Colouring {
  int palette = 0;
  std::vector<int> colour;

  Colouring() = default;
  Colouring(int palette, std::vector<int> colour);

  int operator[](Vertex v) const { return colour[v]; }
  int order() const { return static_cast<int>(colour.size()); }
};

// Throws ContractViolation unless `c` colours exactly the vertices of `g`.
void validate(const Graph& g, const Colouring& c);

std::string write_colouring(const Colouring& c);

// Non-empty sequence of colour ids.
class Signature {
 public:
  explicit Signature(std::vector<int> entries);
  Signature(std::initializer_list<int> entries) : Signature(std::vector<int>(entries)) {}

  std::size_t length() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }
  bool proper() const;
  Signature reversed() const;

  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;

 private:
  std::vector<int> entries_;
};

std::string to_string(const Signature& sigma);

// Signature over (colour, position) pairs; always proper.
struct HattedSignature {
  std::vector<std::pair<int, int>> entries;  // (colour, 1-based position)

  static HattedSignature from(const Signature& sigma);
  // Flat colour ids as used by hatted_colouring: colour * copies + (i - 1).
  Signature flatten(int copies) const;
};

// Partition of a ground set; class labels are canonical (classes numbered
// in order of their smallest member).
class Partition {
 public:
  Partition() = default;

  template <typename Key>
  static Partition from_keys(const VertexSet& ground, const std::vector<Key>& keys) {
    Partition p;
    p.ground_ = ground;
    p.labels_.reserve(ground.size());
    std::map<Key, int> seen;
    for (std::size_t i = 0; i < ground.size(); ++i) {
      auto [it, inserted] = seen.emplace(keys[i], static_cast<int>(seen.size()));
      p.labels_.push_back(it->second);
    }
    p.classes_ = static_cast<int>(seen.size());
    return p;
  }

  const VertexSet& ground() const { return ground_; }
  const std::vector<int>& labels() const { return labels_; }
  int class_count() const { return classes_; }
  int label_of(Vertex v) const;
  std::vector<VertexSet> classes() const;

  // First pair (u, v) sharing a class here but separated by `coarser`;
  // nullopt when this partition refines `coarser`. Grounds must agree.
  std::optional<Edge> refinement_violation(const Partition& coarser) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  VertexSet ground_;
  std::vector<int> labels_;
  int classes_ = 0;
};

// ---------------------------------------------------------------------------
// Sigma-neighbourhoods

enum class SigmaMode {
  paths,    // simple-path enumeration with prefix pruning; any signature
  walk_dp,  // layered frontier; proper signatures only
};

// Endpoints of the simple paths from v whose colour trace is `sigma`.
VertexSet sigma_neighbourhood(const Graph& g, const Colouring& c, Vertex v,
                              const Signature& sigma, SigmaMode mode = SigmaMode::paths);

// Start points of the simple paths ending at v whose colour trace is `sigma`.
VertexSet sigma_in_neighbourhood(const Graph& g, const Colouring& c, Vertex v,
                                 const Signature& sigma);

// Every simple path from v with colour trace `sigma`.
std::vector<std::vector<Vertex>> sigma_paths(const Graph& g, const Colouring& c, Vertex v,
                                             const Signature& sigma);

// Distinct colour traces of simple paths with at most `max_length` vertices
// whose colours are pairwise distinct, sorted.
std::vector<Signature> realised_proper_signatures(const Graph& g, const Colouring& c,
                                                  int max_length);

// All signatures over [0, palette) of length 1..max_length starting with
// `first`, in lexicographic order.
std::vector<Signature> signatures_starting_with(int palette, int first, int max_length);

// Sigma-neighbourhood bitmasks for a fixed list of signatures. Requires
// order() <= 64.
class SigmaTable {
 public:
  SigmaTable(const Graph& g, const Colouring& c, std::vector<Signature> signatures,
             SigmaMode mode = SigmaMode::paths);

  int order() const { return n_; }
  const std::vector<Signature>& signatures() const { return signatures_; }
  std::uint64_t out(std::size_t sig, Vertex v) const { return out_[sig * n_ + v]; }

 private:
  int n_;
  std::vector<Signature> signatures_;
  std::vector<std::uint64_t> out_;
};

// ---------------------------------------------------------------------------
// Structural checks on centred colourings

struct DichotomyVerdict {
  bool holds = true;
  std::optional<Edge> counterexample;  // vertex pair with overlapping, unequal neighbourhoods
};

DichotomyVerdict check_dichotomy(const Graph& g, const Colouring& c, const Signature& sigma);
DichotomyVerdict check_dichotomy(const SigmaTable& table, std::size_t sig);

struct LaminarityVerdict {
  bool holds = true;
  VertexSet reachers;  // vertices with non-empty traces on X for both signatures
  std::optional<std::pair<VertexSet, VertexSet>> crossing;
};

LaminarityVerdict check_laminarity(const Graph& g, const Colouring& c, const Signature& first,
                                   const Signature& second, const VertexSet& x);
LaminarityVerdict check_laminarity(const SigmaTable& table, std::size_t first,
                                   std::size_t second, std::uint64_t x);

// Partition of `ground` by the traces N^sigma(v) ∩ X over a signature family.
Partition trace_partition_sigma_family(const Graph& g, const Colouring& c, const VertexSet& x,
                                       std::span<const Signature> family,
                                       const VertexSet& ground);

struct FamilyCountVerdict {
  VertexSet common_reachers;  // W: non-empty trace on X for every signature
  std::size_t classes = 0;
  std::size_t bound = 0;      // |family| * |X|
  bool holds = true;
};

FamilyCountVerdict family_class_count_check(const Graph& g, const Colouring& c, const VertexSet& x,
                                 std::span<const Signature> family);
FamilyCountVerdict family_class_count_check(const SigmaTable& table, std::span<const std::size_t> family,
                                 std::uint64_t x);

// ---------------------------------------------------------------------------
// Blow-up colouring and the refinement chain

// Colouring of blowup(g, copies): copy i of v gets c(v) * copies + (i - 1).
Colouring hatted_colouring(const Graph& g, const Colouring& c, int copies);

struct ChainViolation {
  std::string stage;  // "sigma->twin" or "hatted->sigma"
  Vertex u;
  Vertex v;
};

struct ChainReport {
  int radius = 0;
  Partition twin;    // (X, r-1)-twin classes
  Partition sigma;   // traces over all signatures of length <= r
  Partition hatted;  // hatted traces in the blow-up
  bool holds = true;
  std::optional<ChainViolation> violation;
  BigBound hatted_bound;  // r * 2^(palette^(r+1)) * |X|
  bool bound_holds = true;
};

ChainReport refinement_chain_check(const Graph& g, const Colouring& c, const VertexSet& x, int r);

}  // namespace nbc
