#pragma once

#include <optional>
#include <vector>

#include "strucctrl/model.hpp"

namespace strucctrl {

// Hard limits for the exhaustive routines. Enumerating all multi-colored
// subgraphs is conjectured intractable in general; past these bounds the
// enumerator throws LimitError instead of hanging.
struct EnumLimits {
  int max_n = 8;
  int max_q = 14;
  long long max_subgraphs = 1000000;
};

// n arcs with pairwise-distinct colors, start vertices and end vertices whose
// end set is exactly the state vertices. Equivalently: a spanning disjoint
// union of m path graphs (sources = input vertices) and some cycle graphs.
struct MultiColoredSubgraph {
  int n = 0;
  int m = 0;
  std::vector<Arc> arcs;  // sorted

  std::vector<int> sink_set() const;    // m vertices with out-degree 0, sorted
  std::vector<int> source_set() const;  // always the input vertices
  std::vector<int> color_set() const;   // sorted
};

enum class Parity { Odd, Even };

// Cells of size 1 or 2 covering all n+m vertices; each source-not-sink vertex
// of the class shares a cell with a distinct sink-not-source vertex.
struct MatrimonialPartition {
  std::vector<std::vector<int>> cells;  // each sorted; cells sorted by front
};

struct SimilarityClass {
  std::vector<int> sink_set;
  std::vector<int> color_set;
  std::vector<MultiColoredSubgraph> members;
  // Member parities under the canonical matrimonial partition.
  int odd_count = 0;
  int even_count = 0;

  bool unbalanced() const { return odd_count != even_count; }
};

// Complete, lexicographically sorted set R(G). Parallel over the arc choices
// for the first state vertex when OpenMP is enabled; the serial variant is the
// reference implementation the tests compare against.
std::vector<MultiColoredSubgraph> enumerate_mcs(const SCGraph& scg, const EnumLimits& limits = {});
std::vector<MultiColoredSubgraph> enumerate_mcs_serial(const SCGraph& scg,
                                                       const EnumLimits& limits = {});

// Partition of the subgraphs by (sink set, color set), sorted by that key,
// with parity counts under the canonical partition filled in.
std::vector<SimilarityClass> similarity_classes(const SCGraph& scg,
                                                const std::vector<MultiColoredSubgraph>& subgraphs);

// Pairs sources-not-sinks with sinks-not-sources positionally after sorting
// both ascending; every other vertex is a singleton cell.
MatrimonialPartition canonical_matrimonial_partition(const SCGraph& scg,
                                                     const std::vector<int>& sink_set);

// All pairings (k! of them for k unmatched sources); used by the invariance checks.
std::vector<MatrimonialPartition> all_matrimonial_partitions(const SCGraph& scg,
                                                             const std::vector<int>& sink_set);

// Parity of the number of cycle graphs in the quotient of the subgraph by the
// partition (isolated cells excluded). Throws std::invalid_argument when the
// partition is not matrimonial for the subgraph.
Parity parity(const MultiColoredSubgraph& subgraph, const MatrimonialPartition& partition);

// Same value computed on the algebraic route: signature of the column
// permutation induced by the arc set, composed with the canonical pairing
// bijection, mapped to a cycle count parity. Agrees with parity() under the
// canonical partition.
Parity parity_via_permutation_sign(const MultiColoredSubgraph& subgraph);

// Some class with unequal odd/even member counts, or nullopt. The witness is
// the class of the lexicographically first member lying in an unbalanced class.
std::optional<SimilarityClass> has_unbalanced_class(const SCGraph& scg,
                                                    const EnumLimits& limits = {});

}  // namespace strucctrl
