#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "strucctrl/model.hpp"

namespace strucctrl {

// Maximum cardinality of an index set I with both {g_i : i in I} and
// {h_i : i in I} linearly independent, via matroid intersection with
// exchange-graph augmentation. Vectors are paired by index.
int max_jointly_independent(const std::vector<std::vector<int>>& g_vectors,
                            const std::vector<std::vector<int>>& h_vectors);

// Generic rank of sum_k g_k p_k h_k over the combined [A B] row space.
int generic_rank_matroid(const ParamPair& pair);

// Same quantity as min over S of rank(G_S) + rank(H_{q-S}); exponential in q
// (hard cap q <= 20, throws LimitError past it). Parallel reduction over the
// subset range when OpenMP is enabled; serial variant kept as reference.
int generic_rank_minform(const ParamPair& pair);
int generic_rank_minform_serial(const ParamPair& pair);

// Raw-vector form; an empty term set has generic rank 0.
int generic_rank_minform(const std::vector<std::vector<int>>& g_vectors,
                         const std::vector<std::vector<int>>& h_vectors);

// Matroid-intersection bound on rank(G*H): columns of G paired with rows of H.
// Always >= rank(G*H) and <= min(rank G, rank H).
int joint_independence_bound(const RationalMatrix& G, const RationalMatrix& H);

// g-rank of [A B]; n means full row rank is generically achievable.
int generic_rank_full(const ParamPair& pair);

// det of the n x n submatrix of [A B] that remains after deleting m columns,
// as a multilinear polynomial: colormask (bit k-1 = color k) -> coefficient.
// Monomials with repeated colors cancel structurally and never appear.
struct MultilinearPoly {
  int degree = 0;
  std::map<std::uint32_t, long long> coeff;

  long long coefficient(const std::vector<int>& colors) const;
  bool zero() const { return coeff.empty(); }
};

// Memoized minor expansion with eager multilinear pruning. Binary pair,
// n <= 8; deleted_columns are m distinct 1-based indices into [A B].
MultilinearPoly symbolic_det(const ParamPair& pair, const std::vector<int>& deleted_columns);

// One signed monomial of the determinant expansion before aggregation:
// row i takes submatrix column col_of_row[i] with color colors[i].
struct DetTerm {
  std::vector<int> col_of_row;  // a permutation of 1..n
  std::vector<int> colors;      // n distinct colors
  int sign = 1;                 // permutation signature
};

// Exhaustive valid-term enumeration (the independent route; also the basis of
// the cycle-count sign-rule check). Terms sorted by (col_of_row, colors).
std::vector<DetTerm> symbolic_det_terms(const ParamPair& pair,
                                        const std::vector<int>& deleted_columns);

}  // namespace strucctrl
