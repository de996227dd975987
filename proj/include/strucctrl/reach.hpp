#pragma once

#include <optional>
#include <vector>

#include "strucctrl/mcs.hpp"
#include "strucctrl/model.hpp"

namespace strucctrl {

// True iff every vertex outside `roots` is reachable from some root.
bool spanning_forest_rooted(const SCGraph& scg, const std::vector<int>& roots);

// True iff no nonempty subset S of state vertices has all incoming arcs
// (from other states or from inputs) originating inside S; equivalently no
// permutation exposes an autonomous block. Subset enumeration, n <= 10.
bool irreducible_bruteforce(const ParamPair& pair);

// A cycle attached to the rest of the structure by its stem arc.
struct Bud {
  Arc stem;                // points into one vertex of `cycle`
  std::vector<Arc> cycle;  // arcs of the cycle graph, sorted
};

// One trunk (a path, possibly a single vertex) plus any number of buds.
struct Cactus {
  int root = 0;
  std::vector<Arc> trunk;  // in path order, may be empty for a one-vertex trunk
  std::vector<Bud> buds;
};

// m vertex-disjoint cacti rooted at the input vertices, jointly spanning.
struct CactusDecomposition {
  int n = 0;
  int m = 0;
  std::vector<Cactus> cacti;  // ordered by root
};

// Constructive route: take the first multi-colored subgraph in enumeration
// order, then repeatedly attach each of its cycles to the connected part with
// the lexicographically smallest arc of the graph that reaches it. Returns
// nullopt when the graph has no multi-colored subgraph or no spanning forest
// rooted at the inputs.
std::optional<CactusDecomposition> build_cactus_union(const SCGraph& scg,
                                                      const EnumLimits& limits = {});

// Full invariant check: disjointness, spanning, per-cactus shape (trunk path,
// stems out of own trunk/cycles, cycle condensation a rooted tree), and
// membership of every arc in scg.
bool validate_cactus_union(const CactusDecomposition& decomposition, const SCGraph& scg);

// Maximum arc set with pairwise-distinct starts and pairwise-distinct ends
// (colors ignored; an arc's start may be another's end). Hopcroft-Karp on the
// doubled-vertex bipartite graph.
int nonstandard_max_matching(const SCGraph& scg);

}  // namespace strucctrl
