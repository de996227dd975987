#pragma once

#include <utility>
#include <vector>

#include "strucctrl/model.hpp"

namespace strucctrl {

// Digraph on q+1 vertices 0..q: arc (0,i) iff p_i appears in B (h_{i2} != 0),
// arc (i,j) iff h_{j1} g_i != 0.
struct TransferGraph {
  int q = 0;
  std::vector<std::pair<int, int>> arcs;  // sorted, duplicate-free
};

TransferGraph build_transfer_graph(const ParamPair& pair);

// Every vertex 1..q reachable from vertex 0.
bool transfer_tree_rooted_at_zero(const TransferGraph& tg);

// BFS-tree parent map; parent[0] = -1, parent[i] = -2 when unreachable.
std::vector<int> transfer_tree_parents(const TransferGraph& tg);

// Independent full decision procedure: generic rank n by the subset-minimum
// formula, plus a transfer-graph spanning tree rooted at 0. Works for general
// (not necessarily binary) integer terms.
bool corfmat_test(const ParamPair& pair);

// One vertex per arc of the source graph; an arc per length-two walk.
struct LineGraph {
  std::vector<Arc> vertices;               // the source arcs, sorted
  std::vector<std::pair<int, int>> arcs;   // index pairs into `vertices`
};

LineGraph line_graph(const SCGraph& scg);

// Quotients the line graph by color and verifies that mapping cell k to
// transfer-graph vertex k is an isomorphism onto the subgraph of the transfer
// graph induced by vertices 1..q. Holds for every binary pair.
bool check_line_quotient_isomorphism(const ParamPair& pair);

}  // namespace strucctrl
