#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "strucctrl/rational.hpp"

namespace strucctrl {

// Malformed or semantically invalid input (maps to CLI exit code 3).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured enumeration/size limit was exceeded (maps to "undecided").
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One rank-one term g * p_k * h of the parameterization. g has length n,
// h has length n+m; the first n entries of h act on A, the last m on B.
// Binary terms (all entries 0/1) are the class the graph characterization
// covers; general integer terms are allowed only for the algebraic routes.
struct ParamTerm {
  int color = 0;  // 1..q, canonical after build_pair
  std::vector<int> g;
  std::vector<int> h;

  bool binary() const;
  bool has_input_part(int n) const;  // h nonzero somewhere in the last m entries
};

// Raw input term before color canonicalization and dependence reduction.
struct RawTerm {
  std::vector<int> g;
  std::vector<int> h;
};

// A dependent input term eliminated during reduction: its outer product equals
// the recorded combination of kept input terms (indices into the raw list).
struct DroppedTerm {
  int input_index = 0;
  std::vector<std::pair<int, Rational>> combination;
};

struct ParamPair {
  int n = 0;
  int m = 0;
  std::vector<ParamTerm> terms;       // colors 1..q in order
  std::vector<DroppedTerm> reduction;  // empty when the input set was independent

  int q() const { return static_cast<int>(terms.size()); }
  bool binary() const;
};

// Arc of color `color` from vertex `from` to vertex `to`; vertices are 1-based,
// state vertices are 1..n and input vertices n+1..n+m.
struct Arc {
  int from = 0;
  int to = 0;
  int color = 0;
  auto operator<=>(const Arc&) const = default;
};

struct SCGraph {
  int n = 0;
  int m = 0;
  std::vector<Arc> arcs;  // sorted, duplicate-free

  int vertex_count() const { return n + m; }
  bool is_input_vertex(int v) const { return v > n; }
};

struct ScgValidation {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Validates raw terms (binary, nonzero, consistent dimensions), greedily drops
// terms whose outer product depends on earlier kept ones, and canonicalizes
// colors to 1..q. Throws InputError on empty input / dimension mismatch /
// zero or non-binary vectors.
ParamPair build_pair(int n, int m, const std::vector<RawTerm>& raw_terms);

// Escape hatch for the algebraic-only routes: accepts general integer terms,
// checks dimensions and nonzeroness but neither binarity nor independence.
ParamPair make_pair_unchecked(int n, int m, const std::vector<RawTerm>& raw_terms);

// Arc (j,i,k) present iff entry (i,j) of g_k h_k is nonzero. Requires a binary pair.
SCGraph graph_of_pair(const ParamPair& pair);

// Inverse of graph_of_pair: g_k(i)=1 iff an arc of color k enters i, h_k(j)=1
// iff one leaves j. Throws InputError when the graph violates its invariants.
ParamPair pair_of_graph(const SCGraph& scg);

// Report-style check of the three structural-controllability-graph properties:
// (i) nothing enters an input vertex, (ii) parallel arcs have distinct colors,
// (iii) per-color closure (leave-set x enter-set complete).
ScgValidation validate_scg(const SCGraph& scg);

// Entry form of [A B]: cell (i,j) lists the parameter labels appearing in that
// entry. Only 0/1 coefficients are expressible, matching the instance format.
using EntryMatrix = std::vector<std::vector<std::vector<int>>>;

EntryMatrix entry_matrix_of_pair(const ParamPair& pair);

// Factors each parameter's support into a rank-one binary term. Throws
// InputError naming the first parameter whose support is not a full rectangle
// (such entries cannot come from a rank-one binary parameterization).
ParamPair pair_of_entry_matrix(int n, int m, const EntryMatrix& entries);

// True iff every minor of the n x (n+m) entry matrix, up to max_minor_size,
// expands to a polynomial with degree <= 1 in each parameter. Acts as the
// rejector for inputs that are not linear parameterizations.
bool verify_multilinear_minors(const EntryMatrix& entries, int max_minor_size);
bool verify_multilinear_minors(const ParamPair& pair, int max_minor_size);

}  // namespace strucctrl
