#include "strucctrl/reach.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>

namespace strucctrl {

bool spanning_forest_rooted(const SCGraph& scg, const std::vector<int>& roots) {
  const int vertex_count = scg.vertex_count();
  std::vector<std::vector<int>> out(vertex_count + 1);
  for (const Arc& arc : scg.arcs) out[arc.from].push_back(arc.to);

  std::vector<bool> reached(vertex_count + 1, false);
  std::deque<int> queue;
  for (int root : roots) {
    if (root < 1 || root > vertex_count) continue;
    if (!reached[root]) {
      reached[root] = true;
      queue.push_back(root);
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int next : out[v]) {
      if (!reached[next]) {
        reached[next] = true;
        queue.push_back(next);
      }
    }
  }
  for (int v = 1; v <= vertex_count; ++v)
    if (!reached[v]) return false;
  return true;
}

bool irreducible_bruteforce(const ParamPair& pair) {
  if (pair.n > 10) throw LimitError("irreducibility brute force limited to n <= 10");
  const int n = pair.n;

  // predecessors of each state vertex across all terms (structural support)
  std::vector<std::uint32_t> state_preds(n + 1, 0);
  std::vector<bool> input_pred(n + 1, false);
  for (const ParamTerm& term : pair.terms) {
    for (int i = 0; i < n; ++i) {
      if (term.g[i] == 0) continue;
      for (int j = 0; j < n + pair.m; ++j) {
        if (term.h[j] == 0) continue;
        if (j < n)
          state_preds[i + 1] |= 1u << j;
        else
          input_pred[i + 1] = true;
      }
    }
  }

  // reducible iff some nonempty S (possibly all states) receives arcs only
  // from inside S; S containing the full state set captures B == 0
  for (std::uint32_t subset = 1; subset < (1u << n); ++subset) {
    bool closed = true;
    for (int i = 1; i <= n && closed; ++i) {
      if (!(subset & (1u << (i - 1)))) continue;
      if (input_pred[i] || (state_preds[i] & ~subset) != 0) closed = false;
    }
    if (closed) return false;
  }
  return true;
}

namespace {

struct UnitDecomposition {
  std::vector<std::vector<int>> path_vertices;    // per input root, in order
  std::vector<std::vector<Arc>> path_arcs;        // per input root, in order
  std::vector<std::vector<int>> cycle_vertices;   // per cycle
  std::vector<std::vector<Arc>> cycle_arcs;       // per cycle
};

// Splits a multi-colored subgraph into its m paths (rooted at the inputs) and
// its cycles.
UnitDecomposition decompose(const MultiColoredSubgraph& subgraph) {
  const int vertex_count = subgraph.n + subgraph.m;
  std::vector<const Arc*> out_arc(vertex_count + 1, nullptr);
  for (const Arc& arc : subgraph.arcs) out_arc[arc.from] = &arc;

  UnitDecomposition unit;
  std::vector<bool> visited(vertex_count + 1, false);
  for (int root = subgraph.n + 1; root <= vertex_count; ++root) {
    std::vector<int> vertices{root};
    std::vector<Arc> arcs;
    visited[root] = true;
    for (int v = root; out_arc[v] != nullptr; v = out_arc[v]->to) {
      arcs.push_back(*out_arc[v]);
      vertices.push_back(out_arc[v]->to);
      visited[out_arc[v]->to] = true;
    }
    unit.path_vertices.push_back(std::move(vertices));
    unit.path_arcs.push_back(std::move(arcs));
  }
  for (int v = 1; v <= vertex_count; ++v) {
    if (visited[v]) continue;
    std::vector<int> vertices;
    std::vector<Arc> arcs;
    int w = v;
    do {
      visited[w] = true;
      vertices.push_back(w);
      arcs.push_back(*out_arc[w]);
      w = out_arc[w]->to;
    } while (w != v);
    unit.cycle_vertices.push_back(std::move(vertices));
    unit.cycle_arcs.push_back(std::move(arcs));
  }
  return unit;
}

}  // namespace

std::optional<CactusDecomposition> build_cactus_union(const SCGraph& scg,
                                                      const EnumLimits& limits) {
  std::vector<int> roots;
  for (int v = scg.n + 1; v <= scg.vertex_count(); ++v) roots.push_back(v);
  if (!spanning_forest_rooted(scg, roots)) return std::nullopt;

  const std::vector<MultiColoredSubgraph> subgraphs = enumerate_mcs(scg, limits);
  if (subgraphs.empty()) return std::nullopt;
  const UnitDecomposition unit = decompose(subgraphs.front());

  CactusDecomposition decomposition;
  decomposition.n = scg.n;
  decomposition.m = scg.m;

  const int vertex_count = scg.vertex_count();
  std::vector<int> cactus_of(vertex_count + 1, -1);
  std::vector<bool> connected(vertex_count + 1, false);
  for (size_t p = 0; p < unit.path_vertices.size(); ++p) {
    Cactus cactus;
    cactus.root = unit.path_vertices[p].front();
    cactus.trunk = unit.path_arcs[p];
    for (int v : unit.path_vertices[p]) {
      cactus_of[v] = static_cast<int>(p);
      connected[v] = true;
    }
    decomposition.cacti.push_back(std::move(cactus));
  }

  std::vector<int> cycle_of(vertex_count + 1, -1);
  for (size_t c = 0; c < unit.cycle_vertices.size(); ++c)
    for (int v : unit.cycle_vertices[c]) cycle_of[v] = static_cast<int>(c);

  std::vector<bool> absorbed(unit.cycle_vertices.size(), false);
  size_t remaining = unit.cycle_vertices.size();
  while (remaining > 0) {
    // scg.arcs is sorted, so the first hit is the lexicographically smallest stem
    const Arc* stem = nullptr;
    for (const Arc& arc : scg.arcs) {
      if (!connected[arc.from]) continue;
      const int cycle = cycle_of[arc.to];
      if (cycle < 0 || absorbed[cycle]) continue;
      stem = &arc;
      break;
    }
    if (stem == nullptr) return std::nullopt;  // unreachable when the forest condition holds

    const int cycle = cycle_of[stem->to];
    const int target = cactus_of[stem->from];
    Bud bud;
    bud.stem = *stem;
    bud.cycle = unit.cycle_arcs[cycle];
    std::sort(bud.cycle.begin(), bud.cycle.end());
    decomposition.cacti[target].buds.push_back(std::move(bud));
    for (int v : unit.cycle_vertices[cycle]) {
      connected[v] = true;
      cactus_of[v] = target;
    }
    absorbed[cycle] = true;
    --remaining;
  }
  return decomposition;
}

bool validate_cactus_union(const CactusDecomposition& decomposition, const SCGraph& scg) {
  const int vertex_count = scg.n + scg.m;
  if (decomposition.n != scg.n || decomposition.m != scg.m) return false;
  if (static_cast<int>(decomposition.cacti.size()) != scg.m) return false;

  const std::set<Arc> graph_arcs(scg.arcs.begin(), scg.arcs.end());
  std::set<int> all_vertices;

  for (const Cactus& cactus : decomposition.cacti) {
    // trunk: a path starting at the root
    std::vector<int> trunk_vertices{cactus.root};
    for (size_t i = 0; i < cactus.trunk.size(); ++i) {
      const Arc& arc = cactus.trunk[i];
      if (!graph_arcs.count(arc)) return false;
      if (arc.from != trunk_vertices.back()) return false;
      trunk_vertices.push_back(arc.to);
    }
    std::set<int> cactus_vertices(trunk_vertices.begin(), trunk_vertices.end());
    if (cactus_vertices.size() != trunk_vertices.size()) return false;  // trunk revisits a vertex

    // every bud: a single cycle, stem pointing into it from elsewhere in this cactus
    std::vector<std::set<int>> bud_vertices;
    for (const Bud& bud : cactus.buds) {
      if (bud.cycle.empty()) return false;
      std::map<int, int> next;
      std::set<int> vertices;
      for (const Arc& arc : bud.cycle) {
        if (!graph_arcs.count(arc)) return false;
        if (next.count(arc.from)) return false;
        next[arc.from] = arc.to;
        vertices.insert(arc.from);
        vertices.insert(arc.to);
      }
      if (vertices.size() != bud.cycle.size()) return false;  // in/out degree one each
      // the arcs must form one closed walk visiting every vertex
      const int start = *vertices.begin();
      std::set<int> walked;
      int v = start;
      do {
        if (!next.count(v) || !walked.insert(v).second) return false;
        v = next[v];
      } while (v != start);
      if (walked.size() != vertices.size()) return false;

      if (!graph_arcs.count(bud.stem)) return false;
      if (!vertices.count(bud.stem.to)) return false;
      if (vertices.count(bud.stem.from)) return false;  // stem must come from outside its cycle
      for (int u : vertices) {
        if (cactus_vertices.count(u)) return false;  // cycles are disjoint from the trunk
        cactus_vertices.insert(u);
      }
      bud_vertices.push_back(std::move(vertices));
    }

    // stems leave the trunk or another bud's cycle, and condensing every cycle
    // must leave a tree rooted at the trunk's first vertex
    const std::set<int> trunk_set(trunk_vertices.begin(), trunk_vertices.end());
    for (const Bud& bud : cactus.buds) {
      if (!cactus_vertices.count(bud.stem.from)) return false;
      bool from_ok = trunk_set.count(bud.stem.from) > 0;
      for (const auto& vertices : bud_vertices)
        if (vertices.count(bud.stem.from) && !vertices.count(bud.stem.to)) from_ok = true;
      if (!from_ok) return false;
    }

    // condensation: supernodes = trunk vertices + one per bud; arcs = trunk + stems
    std::map<int, int> supernode;  // vertex -> condensation node
    int node_count = 0;
    for (int v : trunk_vertices) supernode[v] = node_count++;
    for (const auto& vertices : bud_vertices) {
      for (int v : vertices) supernode[v] = node_count;
      ++node_count;
    }
    std::vector<std::vector<int>> children(node_count);
    std::vector<int> indegree(node_count, 0);
    for (size_t i = 0; i + 1 < trunk_vertices.size(); ++i) {
      children[supernode.at(trunk_vertices[i])].push_back(supernode.at(trunk_vertices[i + 1]));
      ++indegree[supernode.at(trunk_vertices[i + 1])];
    }
    for (const Bud& bud : cactus.buds) {
      children[supernode.at(bud.stem.from)].push_back(supernode.at(bud.stem.to));
      ++indegree[supernode.at(bud.stem.to)];
    }
    const int root_node = supernode.at(cactus.root);
    if (indegree[root_node] != 0) return false;
    for (int node = 0; node < node_count; ++node)
      if (node != root_node && indegree[node] != 1) return false;
    std::vector<bool> reached(node_count, false);
    std::deque<int> queue{root_node};
    reached[root_node] = true;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int w : children[u])
        if (!reached[w]) {
          reached[w] = true;
          queue.push_back(w);
        }
    }
    if (std::find(reached.begin(), reached.end(), false) != reached.end()) return false;

    // disjoint across cacti
    for (int v : cactus_vertices) {
      if (v < 1 || v > vertex_count) return false;
      if (!all_vertices.insert(v).second) return false;
    }
  }
  return static_cast<int>(all_vertices.size()) == vertex_count;  // jointly spanning
}

namespace {

// Hopcroft-Karp on the doubled-vertex bipartite graph: left copies are start
// vertices, right copies are end vertices.
class HopcroftKarp {
 public:
  HopcroftKarp(int left_count, int right_count)
      : adjacency_(left_count), match_left_(left_count, -1), match_right_(right_count, -1) {}

  void add_edge(int left, int right) { adjacency_[left].push_back(right); }

  int solve() {
    int matching = 0;
    while (bfs()) {
      for (size_t u = 0; u < adjacency_.size(); ++u)
        if (match_left_[u] < 0 && dfs(static_cast<int>(u))) ++matching;
    }
    return matching;
  }

 private:
  static constexpr int kInf = INT32_MAX;

  bool bfs() {
    std::deque<int> queue;
    distance_.assign(adjacency_.size(), kInf);
    for (size_t u = 0; u < adjacency_.size(); ++u) {
      if (match_left_[u] < 0) {
        distance_[u] = 0;
        queue.push_back(static_cast<int>(u));
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adjacency_[u]) {
        const int w = match_right_[v];
        if (w < 0) {
          found = true;
        } else if (distance_[w] == kInf) {
          distance_[w] = distance_[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (int v : adjacency_[u]) {
      const int w = match_right_[v];
      if (w < 0 || (distance_[w] == distance_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    distance_[u] = kInf;
    return false;
  }

  std::vector<std::vector<int>> adjacency_;
  std::vector<int> match_left_, match_right_;
  std::vector<int> distance_;
};

}  // namespace

int nonstandard_max_matching(const SCGraph& scg) {
  const int vertex_count = scg.vertex_count();
  std::set<std::pair<int, int>> edges;
  for (const Arc& arc : scg.arcs) edges.insert({arc.from, arc.to});

  HopcroftKarp matcher(vertex_count, vertex_count);
  for (const auto& [from, to] : edges) matcher.add_edge(from - 1, to - 1);
  return matcher.solve();
}

}  // namespace strucctrl
