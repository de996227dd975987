#include "strucctrl/mcs.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace strucctrl {
namespace {

std::vector<int> distinct_colors(const SCGraph& scg) {
  std::set<int> colors;
  for (const Arc& arc : scg.arcs) colors.insert(arc.color);
  return {colors.begin(), colors.end()};
}

struct ArcChoice {
  Arc arc;
  std::uint32_t color_bit = 0;
  std::uint32_t start_bit = 0;
};

struct EnumContext {
  int n = 0;
  int m = 0;
  std::vector<std::vector<ArcChoice>> in_arcs;  // per state vertex, sorted
  std::map<int, int> color_bit;
  long long max_subgraphs = 0;
};

EnumContext make_context(const SCGraph& scg, const EnumLimits& limits) {
  if (scg.n < 1) throw InputError("enumeration requires at least one state vertex");
  if (scg.n > limits.max_n)
    throw LimitError("enumeration limit exceeded: n = " + std::to_string(scg.n) + " > " +
                     std::to_string(limits.max_n));
  const std::vector<int> colors = distinct_colors(scg);
  if (static_cast<int>(colors.size()) > limits.max_q)
    throw LimitError("enumeration limit exceeded: " + std::to_string(colors.size()) +
                     " colors > " + std::to_string(limits.max_q));
  if (scg.n + scg.m > 30 || static_cast<int>(colors.size()) > 30)
    throw LimitError("enumeration supports at most 30 vertices and 30 colors");

  EnumContext ctx;
  ctx.n = scg.n;
  ctx.m = scg.m;
  ctx.max_subgraphs = limits.max_subgraphs;
  for (size_t i = 0; i < colors.size(); ++i) ctx.color_bit[colors[i]] = static_cast<int>(i);
  ctx.in_arcs.assign(scg.n, {});
  for (const Arc& arc : scg.arcs) {
    ArcChoice choice;
    choice.arc = arc;
    choice.color_bit = 1u << ctx.color_bit.at(arc.color);
    choice.start_bit = 1u << (arc.from - 1);
    ctx.in_arcs[arc.to - 1].push_back(choice);
  }
  for (auto& arcs : ctx.in_arcs)
    std::sort(arcs.begin(), arcs.end(),
              [](const ArcChoice& a, const ArcChoice& b) { return a.arc < b.arc; });
  return ctx;
}

// Appends complete subgraphs as objects; the serial reference path.
struct ObjectSink {
  int n = 0;
  int m = 0;
  std::vector<MultiColoredSubgraph>* out = nullptr;

  void emit(const std::vector<Arc>& chosen) {
    MultiColoredSubgraph subgraph;
    subgraph.n = n;
    subgraph.m = m;
    subgraph.arcs = chosen;
    std::sort(subgraph.arcs.begin(), subgraph.arcs.end());
    out->push_back(std::move(subgraph));
  }
};

// Appends complete subgraphs as sorted n-arc groups into one flat buffer, so
// the parallel walk performs no per-subgraph heap allocation (threaded small
// allocations dominate the cost otherwise).
struct FlatSink {
  std::vector<Arc> arcs;
  long long count = 0;

  void emit(const std::vector<Arc>& chosen) {
    const size_t base = arcs.size();
    for (const Arc& arc : chosen) {
      size_t pos = arcs.size();
      arcs.push_back(arc);
      while (pos > base && arc < arcs[pos - 1]) {
        arcs[pos] = arcs[pos - 1];
        --pos;
      }
      arcs[pos] = arc;
    }
    ++count;
  }
};

// Picks one incoming arc per state vertex, in vertex order, pruning on color
// and start collisions. Ends are forced, so the tree is complete and every
// leaf at depth n is a multi-colored subgraph.
template <class Sink>
void extend(const EnumContext& ctx, int depth, std::uint32_t used_colors,
            std::uint32_t used_starts, std::vector<Arc>& chosen, Sink& sink,
            std::atomic<long long>& found, std::atomic<bool>& overflow) {
  if (overflow.load(std::memory_order_relaxed)) return;
  if (depth == ctx.n) {
    if (found.fetch_add(1, std::memory_order_relaxed) + 1 > ctx.max_subgraphs) {
      overflow.store(true, std::memory_order_relaxed);
      return;
    }
    sink.emit(chosen);
    return;
  }
  for (const ArcChoice& choice : ctx.in_arcs[depth]) {
    if ((used_colors & choice.color_bit) || (used_starts & choice.start_bit)) continue;
    chosen.push_back(choice.arc);
    extend(ctx, depth + 1, used_colors | choice.color_bit, used_starts | choice.start_bit, chosen,
           sink, found, overflow);
    chosen.pop_back();
  }
}

void check_overflow(const std::atomic<bool>& overflow, const EnumContext& ctx) {
  if (overflow.load())
    throw LimitError("enumeration limit exceeded: more than " +
                     std::to_string(ctx.max_subgraphs) + " multi-colored subgraphs");
}

// 16 bits per arc (5+5+5 used), most significant arc first, so key order is
// exactly lexicographic arc-list order. Color values are replaced by their
// rank, which is order-preserving.
struct SortKey {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  std::uint32_t index = 0;

  bool operator<(const SortKey& other) const {
    return std::tie(hi, lo, index) < std::tie(other.hi, other.lo, other.index);
  }
};

SortKey pack_key(const Arc* arcs, int n, const std::map<int, int>& color_rank) {
  SortKey key;
  for (int a = 0; a < n; ++a) {
    const std::uint64_t packed = (static_cast<std::uint64_t>(arcs[a].from) << 10) |
                                 (static_cast<std::uint64_t>(arcs[a].to) << 5) |
                                 static_cast<std::uint64_t>(color_rank.at(arcs[a].color));
    if (a < 4)
      key.hi |= packed << (48 - 16 * a);
    else
      key.lo |= packed << (48 - 16 * (a - 4));
  }
  return key;
}

void task_sort(std::vector<SortKey>::iterator begin, std::vector<SortKey>::iterator end,
               int depth) {
  if (depth <= 0 || end - begin < 65536) {
    std::sort(begin, end);
    return;
  }
  const auto mid = begin + (end - begin) / 2;
#pragma omp task
  task_sort(begin, mid, depth - 1);
  task_sort(mid, end, depth - 1);
#pragma omp taskwait
  std::inplace_merge(begin, mid, end);
}

}  // namespace

std::vector<int> MultiColoredSubgraph::sink_set() const {
  std::vector<bool> has_out(n + m + 1, false);
  for (const Arc& arc : arcs) has_out[arc.from] = true;
  std::vector<int> sinks;
  for (int v = 1; v <= n + m; ++v)
    if (!has_out[v]) sinks.push_back(v);
  return sinks;
}

std::vector<int> MultiColoredSubgraph::source_set() const {
  std::vector<bool> has_in(n + m + 1, false);
  for (const Arc& arc : arcs) has_in[arc.to] = true;
  std::vector<int> sources;
  for (int v = 1; v <= n + m; ++v)
    if (!has_in[v]) sources.push_back(v);
  return sources;
}

std::vector<int> MultiColoredSubgraph::color_set() const {
  std::vector<int> colors;
  for (const Arc& arc : arcs) colors.push_back(arc.color);
  std::sort(colors.begin(), colors.end());
  return colors;
}

std::vector<MultiColoredSubgraph> enumerate_mcs_serial(const SCGraph& scg,
                                                       const EnumLimits& limits) {
  EnumContext ctx = make_context(scg, limits);
  std::vector<MultiColoredSubgraph> out;
  std::vector<Arc> chosen;
  std::atomic<long long> found{0};
  std::atomic<bool> overflow{false};
  extend(ctx, 0, 0u, 0u, chosen, out, found, overflow);
  return finish(std::move(out), overflow, ctx, /*parallel=*/false);
}

std::vector<MultiColoredSubgraph> enumerate_mcs(const SCGraph& scg, const EnumLimits& limits) {
  EnumContext ctx = make_context(scg, limits);

  // Branch on the arc choices of the first two state vertices; one level gives
  // too few subtrees to balance across threads.
  struct Branch {
    std::vector<Arc> prefix;
    std::uint32_t colors = 0;
    std::uint32_t starts = 0;
  };
  std::vector<Branch> branches;
  for (const ArcChoice& first : ctx.in_arcs[0]) {
    Branch branch;
    branch.prefix = {first.arc};
    branch.colors = first.color_bit;
    branch.starts = first.start_bit;
    if (ctx.n == 1) {
      branches.push_back(std::move(branch));
      continue;
    }
    for (const ArcChoice& second : ctx.in_arcs[1]) {
      if ((branch.colors & second.color_bit) || (branch.starts & second.start_bit)) continue;
      Branch extended = branch;
      extended.prefix.push_back(second.arc);
      extended.colors |= second.color_bit;
      extended.starts |= second.start_bit;
      branches.push_back(std::move(extended));
    }
  }

  const int branch_count = static_cast<int>(branches.size());
  std::vector<std::vector<MultiColoredSubgraph>> per_branch(branch_count);
  std::atomic<long long> found{0};
  std::atomic<bool> overflow{false};

#pragma omp parallel for schedule(dynamic)
  for (int b = 0; b < branch_count; ++b) {
    Branch& branch = branches[b];
    extend(ctx, static_cast<int>(branch.prefix.size()), branch.colors, branch.starts,
           branch.prefix, per_branch[b], found, overflow);
  }

  std::vector<MultiColoredSubgraph> out;
  size_t total = 0;
  for (const auto& chunk : per_branch) total += chunk.size();
  out.reserve(total);
  for (auto& chunk : per_branch)
    out.insert(out.end(), std::make_move_iterator(chunk.begin()),
               std::make_move_iterator(chunk.end()));
  return finish(std::move(out), overflow, ctx, /*parallel=*/true);
}

MatrimonialPartition canonical_matrimonial_partition(const SCGraph& scg,
                                                     const std::vector<int>& sink_set) {
  if (static_cast<int>(sink_set.size()) != scg.m)
    throw std::invalid_argument("sink set must have exactly m vertices");
  std::set<int> sinks(sink_set.begin(), sink_set.end());
  if (static_cast<int>(sinks.size()) != scg.m)
    throw std::invalid_argument("sink set has duplicate vertices");

  std::vector<int> unpaired_sources, unpaired_sinks;
  for (int v = scg.n + 1; v <= scg.n + scg.m; ++v)
    if (!sinks.count(v)) unpaired_sources.push_back(v);
  for (int v : sinks)
    if (v <= scg.n) unpaired_sinks.push_back(v);
  if (unpaired_sources.size() != unpaired_sinks.size())
    throw std::invalid_argument("source/sink cardinality mismatch: corrupted sink set");

  MatrimonialPartition partition;
  std::set<int> in_pair;
  for (size_t i = 0; i < unpaired_sources.size(); ++i) {
    std::vector<int> cell{unpaired_sinks[i], unpaired_sources[i]};
    std::sort(cell.begin(), cell.end());
    in_pair.insert(cell[0]);
    in_pair.insert(cell[1]);
    partition.cells.push_back(std::move(cell));
  }
  for (int v = 1; v <= scg.n + scg.m; ++v)
    if (!in_pair.count(v)) partition.cells.push_back({v});
  std::sort(partition.cells.begin(), partition.cells.end());
  return partition;
}

std::vector<MatrimonialPartition> all_matrimonial_partitions(const SCGraph& scg,
                                                             const std::vector<int>& sink_set) {
  std::set<int> sinks(sink_set.begin(), sink_set.end());
  std::vector<int> unpaired_sources, unpaired_sinks;
  for (int v = scg.n + 1; v <= scg.n + scg.m; ++v)
    if (!sinks.count(v)) unpaired_sources.push_back(v);
  for (int v : sinks)
    if (v <= scg.n) unpaired_sinks.push_back(v);

  std::vector<MatrimonialPartition> partitions;
  std::vector<int> perm(unpaired_sinks.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    MatrimonialPartition partition;
    std::set<int> in_pair;
    for (size_t i = 0; i < unpaired_sources.size(); ++i) {
      std::vector<int> cell{unpaired_sinks[perm[i]], unpaired_sources[i]};
      std::sort(cell.begin(), cell.end());
      in_pair.insert(cell[0]);
      in_pair.insert(cell[1]);
      partition.cells.push_back(std::move(cell));
    }
    for (int v = 1; v <= scg.n + scg.m; ++v)
      if (!in_pair.count(v)) partition.cells.push_back({v});
    std::sort(partition.cells.begin(), partition.cells.end());
    partitions.push_back(std::move(partition));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return partitions;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int size) : parent(size) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Parity parity(const MultiColoredSubgraph& subgraph, const MatrimonialPartition& partition) {
  const int vertex_count = subgraph.n + subgraph.m;

  std::vector<int> cell_of(vertex_count + 1, -1);
  for (size_t c = 0; c < partition.cells.size(); ++c) {
    const std::vector<int>& cell = partition.cells[c];
    if (cell.empty() || cell.size() > 2)
      throw std::invalid_argument("partition cells must have one or two vertices");
    for (int v : cell) {
      if (v < 1 || v > vertex_count || cell_of[v] != -1)
        throw std::invalid_argument("partition does not partition the vertex set");
      cell_of[v] = static_cast<int>(c);
    }
  }
  for (int v = 1; v <= vertex_count; ++v)
    if (cell_of[v] == -1) throw std::invalid_argument("partition does not cover every vertex");

  std::vector<bool> is_source(vertex_count + 1, true), is_sink(vertex_count + 1, true);
  for (const Arc& arc : subgraph.arcs) {
    is_sink[arc.from] = false;
    is_source[arc.to] = false;
  }
  std::set<int> paired;
  for (const std::vector<int>& cell : partition.cells) {
    if (cell.size() != 2) continue;
    // each pair cell must weld one strict source to one strict sink
    const int a = cell[0], b = cell[1];
    const bool ok = (is_source[a] && !is_sink[a] && is_sink[b] && !is_source[b]) ||
                    (is_source[b] && !is_sink[b] && is_sink[a] && !is_source[a]);
    if (!ok) throw std::invalid_argument("partition is not matrimonial for the subgraph");
    paired.insert(a);
    paired.insert(b);
  }
  for (int v = 1; v <= vertex_count; ++v) {
    if (is_source[v] && !is_sink[v] && !paired.count(v))
      throw std::invalid_argument("partition leaves a source vertex unpaired");
  }

  std::set<std::pair<int, int>> quotient_arcs;
  for (const Arc& arc : subgraph.arcs)
    quotient_arcs.insert({cell_of[arc.from], cell_of[arc.to]});

  UnionFind components(static_cast<int>(partition.cells.size()));
  std::vector<int> in_degree(partition.cells.size(), 0), out_degree(partition.cells.size(), 0);
  for (const auto& [from, to] : quotient_arcs) {
    components.unite(from, to);
    ++out_degree[from];
    ++in_degree[to];
  }

  std::set<int> cycle_roots;
  for (size_t c = 0; c < partition.cells.size(); ++c) {
    if (in_degree[c] == 0 && out_degree[c] == 0) continue;  // isolated cell
    if (in_degree[c] != 1 || out_degree[c] != 1)
      throw std::invalid_argument("partition is not matrimonial for the subgraph");
    cycle_roots.insert(components.find(static_cast<int>(c)));
  }
  return (cycle_roots.size() % 2 == 1) ? Parity::Odd : Parity::Even;
}

Parity parity_via_permutation_sign(const MultiColoredSubgraph& subgraph) {
  const int n = subgraph.n;
  const std::vector<int> sinks = subgraph.sink_set();
  std::set<int> sink_lookup(sinks.begin(), sinks.end());

  // canonical pairing: unmatched input sources -> state sinks, both ascending
  std::vector<int> unpaired_sources, unpaired_sinks;
  for (int v = n + 1; v <= subgraph.n + subgraph.m; ++v)
    if (!sink_lookup.count(v)) unpaired_sources.push_back(v);
  for (int v : sinks)
    if (v <= n) unpaired_sinks.push_back(v);
  std::vector<int> pair_target(subgraph.n + subgraph.m + 1, 0);
  for (size_t i = 0; i < unpaired_sources.size(); ++i)
    pair_target[unpaired_sources[i]] = unpaired_sinks[i];

  // row i takes the column of its incoming arc's start vertex
  std::vector<int> start_of(n + 1, 0);
  for (const Arc& arc : subgraph.arcs) start_of[arc.to] = arc.from;

  // composed permutation on 0..n-1: sigma then the column rearrangement
  std::vector<int> composed(n);
  for (int i = 1; i <= n; ++i) {
    const int column_vertex = start_of[i];
    const int mapped = column_vertex <= n ? column_vertex : pair_target[column_vertex];
    composed[i - 1] = mapped - 1;
  }

  // cycle-count parity of the composed permutation equals the quotient's
  // cycle-graph count parity
  std::vector<bool> visited(n, false);
  int cycles = 0;
  for (int i = 0; i < n; ++i) {
    if (visited[i]) continue;
    ++cycles;
    for (int j = i; !visited[j]; j = composed[j]) visited[j] = true;
  }
  return (cycles % 2 == 1) ? Parity::Odd : Parity::Even;
}

std::vector<SimilarityClass> similarity_classes(
    const SCGraph& scg, const std::vector<MultiColoredSubgraph>& subgraphs) {
  std::map<std::pair<std::vector<int>, std::vector<int>>, SimilarityClass> grouped;
  for (const MultiColoredSubgraph& subgraph : subgraphs) {
    const auto key = std::make_pair(subgraph.sink_set(), subgraph.color_set());
    SimilarityClass& sc = grouped[key];
    if (sc.members.empty()) {
      sc.sink_set = key.first;
      sc.color_set = key.second;
    }
    sc.members.push_back(subgraph);
  }
  std::vector<SimilarityClass> classes;
  classes.reserve(grouped.size());
  for (auto& [key, sc] : grouped) {
    const MatrimonialPartition partition = canonical_matrimonial_partition(scg, sc.sink_set);
    for (const MultiColoredSubgraph& member : sc.members) {
      if (parity(member, partition) == Parity::Odd)
        ++sc.odd_count;
      else
        ++sc.even_count;
    }
    classes.push_back(std::move(sc));
  }
  return classes;
}

std::optional<SimilarityClass> has_unbalanced_class(const SCGraph& scg, const EnumLimits& limits) {
  const std::vector<MultiColoredSubgraph> subgraphs = enumerate_mcs(scg, limits);
  const std::vector<SimilarityClass> classes = similarity_classes(scg, subgraphs);

  std::map<std::pair<std::vector<int>, std::vector<int>>, const SimilarityClass*> by_key;
  for (const SimilarityClass& sc : classes) by_key[{sc.sink_set, sc.color_set}] = &sc;

  for (const MultiColoredSubgraph& subgraph : subgraphs) {
    const SimilarityClass* sc = by_key.at({subgraph.sink_set(), subgraph.color_set()});
    if (sc->unbalanced()) return *sc;
  }
  return std::nullopt;
}

}  // namespace strucctrl
