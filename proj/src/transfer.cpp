#include "strucctrl/transfer.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "strucctrl/rank.hpp"

namespace strucctrl {

TransferGraph build_transfer_graph(const ParamPair& pair) {
  TransferGraph tg;
  tg.q = pair.q();
  const int n = pair.n;

  for (const ParamTerm& term : pair.terms)
    if (term.has_input_part(n)) tg.arcs.push_back({0, term.color});

  // arc i -> j whenever the block h_{j1} g_i is nonzero (exact integer product)
  for (const ParamTerm& from_term : pair.terms) {
    for (const ParamTerm& to_term : pair.terms) {
      long long dot = 0;
      for (int v = 0; v < n; ++v)
        dot += static_cast<long long>(to_term.h[v]) * from_term.g[v];
      if (dot != 0) tg.arcs.push_back({from_term.color, to_term.color});
    }
  }
  std::sort(tg.arcs.begin(), tg.arcs.end());
  tg.arcs.erase(std::unique(tg.arcs.begin(), tg.arcs.end()), tg.arcs.end());
  return tg;
}

std::vector<int> transfer_tree_parents(const TransferGraph& tg) {
  std::vector<std::vector<int>> out(tg.q + 1);
  for (const auto& [from, to] : tg.arcs)
    if (from >= 0 && from <= tg.q && to >= 0 && to <= tg.q) out[from].push_back(to);

  std::vector<int> parent(tg.q + 1, -2);
  parent[0] = -1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : out[u]) {
      if (parent[v] == -2) {
        parent[v] = u;
        queue.push_back(v);
      }
    }
  }
  return parent;
}

bool transfer_tree_rooted_at_zero(const TransferGraph& tg) {
  const std::vector<int> parent = transfer_tree_parents(tg);
  for (int v = 1; v <= tg.q; ++v)
    if (parent[v] == -2) return false;
  return true;
}

bool corfmat_test(const ParamPair& pair) {
  if (generic_rank_minform(pair) != pair.n) return false;
  return transfer_tree_rooted_at_zero(build_transfer_graph(pair));
}

LineGraph line_graph(const SCGraph& scg) {
  LineGraph lg;
  lg.vertices = scg.arcs;
  std::sort(lg.vertices.begin(), lg.vertices.end());

  // arcs index by middle vertex to avoid the quadratic scan
  std::vector<std::vector<int>> leaving(scg.vertex_count() + 1);
  for (size_t idx = 0; idx < lg.vertices.size(); ++idx)
    leaving[lg.vertices[idx].from].push_back(static_cast<int>(idx));

  for (size_t idx = 0; idx < lg.vertices.size(); ++idx) {
    const int middle = lg.vertices[idx].to;
    if (middle < 1 || middle > scg.vertex_count()) continue;
    for (int succ : leaving[middle]) lg.arcs.push_back({static_cast<int>(idx), succ});
  }
  std::sort(lg.arcs.begin(), lg.arcs.end());
  return lg;
}

bool check_line_quotient_isomorphism(const ParamPair& pair) {
  const SCGraph scg = graph_of_pair(pair);
  const LineGraph lg = line_graph(scg);

  // quotient by color: one cell per color, arcs deduplicated
  std::set<std::pair<int, int>> quotient_arcs;
  for (const auto& [from_idx, to_idx] : lg.arcs)
    quotient_arcs.insert({lg.vertices[from_idx].color, lg.vertices[to_idx].color});

  // subgraph of the transfer graph induced by vertices 1..q
  std::set<std::pair<int, int>> induced_arcs;
  for (const auto& arc : build_transfer_graph(pair).arcs)
    if (arc.first >= 1) induced_arcs.insert(arc);

  return quotient_arcs == induced_arcs;
}

}  // namespace strucctrl
