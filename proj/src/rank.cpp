#include "strucctrl/rank.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <tuple>
#include <unordered_map>

namespace strucctrl {
namespace {

RationalMatrix columns_matrix(const std::vector<std::vector<Rational>>& vectors,
                              const std::vector<int>& selected) {
  const int dim = vectors.empty() ? 0 : static_cast<int>(vectors[0].size());
  RationalMatrix m(dim, static_cast<int>(selected.size()));
  for (size_t j = 0; j < selected.size(); ++j)
    for (int i = 0; i < dim; ++i) m.at(i, static_cast<int>(j)) = vectors[selected[j]][i];
  return m;
}

bool independent(const std::vector<std::vector<Rational>>& vectors,
                 const std::vector<int>& selected) {
  return rational_rank(columns_matrix(vectors, selected)) == static_cast<int>(selected.size());
}

std::vector<std::vector<Rational>> to_rational(const std::vector<std::vector<int>>& vectors) {
  std::vector<std::vector<Rational>> out(vectors.size());
  for (size_t i = 0; i < vectors.size(); ++i)
    out[i].assign(vectors[i].begin(), vectors[i].end());
  return out;
}

// Matroid intersection by shortest augmenting paths in the exchange graph.
// Ground set 0..k-1; matroid 1 = linear independence of the g vectors,
// matroid 2 = linear independence of the h vectors.
int max_common_independent(const std::vector<std::vector<Rational>>& g,
                           const std::vector<std::vector<Rational>>& h) {
  const int k = static_cast<int>(g.size());
  std::vector<bool> in_set(k, false);

  auto members = [&](int skip, int extra) {
    std::vector<int> out;
    for (int i = 0; i < k; ++i)
      if ((in_set[i] && i != skip) || i == extra) out.push_back(i);
    return out;
  };

  while (true) {
    std::vector<bool> grows_g(k, false), grows_h(k, false);
    for (int x = 0; x < k; ++x) {
      if (in_set[x]) continue;
      grows_g[x] = independent(g, members(-1, x));
      grows_h[x] = independent(h, members(-1, x));
    }

    // BFS from every x with I+x independent in matroid 1 toward any x with
    // I+x independent in matroid 2
    std::vector<int> parent(k, -1);
    std::vector<bool> seen(k, false);
    std::deque<int> queue;
    int goal = -1;
    for (int x = 0; x < k && goal < 0; ++x) {
      if (in_set[x] || !grows_g[x]) continue;
      seen[x] = true;
      queue.push_back(x);
      if (grows_h[x]) goal = x;
    }
    while (goal < 0 && !queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v = 0; v < k && goal < 0; ++v) {
        if (seen[v] || in_set[u] == in_set[v]) continue;
        bool arc;
        if (in_set[u]) {
          // u in I, v outside: exchange must stay independent in matroid 1
          arc = independent(g, members(u, v));
        } else {
          // u outside, v in I: exchange must stay independent in matroid 2
          arc = independent(h, members(v, u));
        }
        if (!arc) continue;
        seen[v] = true;
        parent[v] = u;
        queue.push_back(v);
        if (!in_set[v] && grows_h[v]) goal = v;
      }
    }
    if (goal < 0) break;
    for (int v = goal; v >= 0; v = parent[v]) in_set[v] = !in_set[v];
  }

  int size = 0;
  for (int i = 0; i < k; ++i)
    if (in_set[i]) ++size;
  return size;
}

int rank_of_selection(const std::vector<std::vector<Rational>>& vectors, std::uint32_t mask) {
  std::vector<int> selected;
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i)) selected.push_back(i);
  return rational_rank(columns_matrix(vectors, selected));
}

std::pair<std::vector<std::vector<Rational>>, std::vector<std::vector<Rational>>> split_terms(
    const ParamPair& pair) {
  std::vector<std::vector<Rational>> g(pair.q()), h(pair.q());
  for (int i = 0; i < pair.q(); ++i) {
    g[i].assign(pair.terms[i].g.begin(), pair.terms[i].g.end());
    h[i].assign(pair.terms[i].h.begin(), pair.terms[i].h.end());
  }
  return {std::move(g), std::move(h)};
}

int minform_core(const std::vector<std::vector<Rational>>& g,
                 const std::vector<std::vector<Rational>>& h, bool parallel) {
  const int q = static_cast<int>(g.size());
  if (q == 0) return 0;
  if (q > 20) throw LimitError("subset-minimum rank formula limited to q <= 20 terms");
  const std::uint32_t subsets = 1u << q;
  const std::uint32_t full = subsets - 1;

  int best = INT32_MAX;
  if (parallel) {
#pragma omp parallel for reduction(min : best) schedule(dynamic, 64)
    for (long long s = 0; s < static_cast<long long>(subsets); ++s) {
      const std::uint32_t mask = static_cast<std::uint32_t>(s);
      const int value = rank_of_selection(g, mask) + rank_of_selection(h, full & ~mask);
      if (value < best) best = value;
    }
  } else {
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      const int value = rank_of_selection(g, mask) + rank_of_selection(h, full & ~mask);
      if (value < best) best = value;
    }
  }
  return best;
}

}  // namespace

int max_jointly_independent(const std::vector<std::vector<int>>& g_vectors,
                            const std::vector<std::vector<int>>& h_vectors) {
  if (g_vectors.size() != h_vectors.size())
    throw InputError("jointly independent sets need equally many g and h vectors");
  return max_common_independent(to_rational(g_vectors), to_rational(h_vectors));
}

int generic_rank_matroid(const ParamPair& pair) {
  auto [g, h] = split_terms(pair);
  return max_common_independent(g, h);
}

int generic_rank_minform(const ParamPair& pair) {
  auto [g, h] = split_terms(pair);
  return minform_core(g, h, /*parallel=*/true);
}

int generic_rank_minform_serial(const ParamPair& pair) {
  auto [g, h] = split_terms(pair);
  return minform_core(g, h, /*parallel=*/false);
}

int generic_rank_minform(const std::vector<std::vector<int>>& g_vectors,
                         const std::vector<std::vector<int>>& h_vectors) {
  if (g_vectors.size() != h_vectors.size())
    throw InputError("the subset-minimum formula needs equally many g and h vectors");
  return minform_core(to_rational(g_vectors), to_rational(h_vectors), /*parallel=*/true);
}

int joint_independence_bound(const RationalMatrix& G, const RationalMatrix& H) {
  if (G.cols() != H.rows())
    throw InputError("dimension mismatch: G has " + std::to_string(G.cols()) +
                     " columns but H has " + std::to_string(H.rows()) + " rows");
  const int k = G.cols();
  std::vector<std::vector<Rational>> g(k), h(k);
  for (int i = 0; i < k; ++i) {
    g[i].resize(G.rows());
    for (int r = 0; r < G.rows(); ++r) g[i][r] = G.at(r, i);
    h[i].resize(H.cols());
    for (int c = 0; c < H.cols(); ++c) h[i][c] = H.at(i, c);
  }
  return max_common_independent(g, h);
}

int generic_rank_full(const ParamPair& pair) { return generic_rank_matroid(pair); }

long long MultilinearPoly::coefficient(const std::vector<int>& colors) const {
  std::uint32_t mask = 0;
  for (int color : colors) mask |= 1u << (color - 1);
  const auto it = coeff.find(mask);
  return it == coeff.end() ? 0 : it->second;
}

namespace {

struct DetContext {
  int n = 0;
  std::vector<std::vector<std::vector<int>>> cell_colors;  // row x col -> colors
};

DetContext make_det_context(const ParamPair& pair, const std::vector<int>& deleted_columns) {
  if (!pair.binary()) throw InputError("symbolic determinant requires a binary pair");
  if (pair.n > 8) throw LimitError("symbolic determinant limited to n <= 8");
  if (pair.q() > 30) throw LimitError("symbolic determinant limited to 30 colors");
  if (static_cast<int>(deleted_columns.size()) != pair.m)
    throw InputError("exactly m columns must be deleted");

  std::vector<bool> deleted(pair.n + pair.m + 1, false);
  for (int column : deleted_columns) {
    if (column < 1 || column > pair.n + pair.m)
      throw InputError("deleted column index out of range");
    if (deleted[column]) throw InputError("deleted column listed twice");
    deleted[column] = true;
  }
  std::vector<int> retained;
  for (int column = 1; column <= pair.n + pair.m; ++column)
    if (!deleted[column]) retained.push_back(column);

  DetContext ctx;
  ctx.n = pair.n;
  ctx.cell_colors.assign(pair.n, std::vector<std::vector<int>>(pair.n));
  for (const ParamTerm& term : pair.terms)
    for (int i = 0; i < pair.n; ++i) {
      if (term.g[i] == 0) continue;
      for (int j = 0; j < pair.n; ++j)
        if (term.h[retained[j] - 1] != 0) ctx.cell_colors[i][j].push_back(term.color);
    }
  return ctx;
}

using PolyMap = std::unordered_map<std::uint32_t, long long>;

// Minor over rows r..n-1 and the columns in colmask, expanded along row r with
// monomials carrying a colormask; repeated colors are pruned eagerly.
const PolyMap& expand(const DetContext& ctx, std::uint32_t colmask,
                      std::unordered_map<std::uint32_t, PolyMap>& memo) {
  auto it = memo.find(colmask);
  if (it != memo.end()) return it->second;

  PolyMap result;
  if (colmask == 0) {
    result[0u] = 1;
  } else {
    const int r = ctx.n - __builtin_popcount(colmask);
    int before = 0;
    for (int j = 0; j < ctx.n; ++j) {
      if (!(colmask & (1u << j))) continue;
      const int sign = (before % 2 == 0) ? 1 : -1;
      ++before;
      if (ctx.cell_colors[r][j].empty()) continue;
      const PolyMap& sub = expand(ctx, colmask & ~(1u << j), memo);
      for (int color : ctx.cell_colors[r][j]) {
        const std::uint32_t bit = 1u << (color - 1);
        for (const auto& [mask, coeff] : sub) {
          if (mask & bit) continue;
          result[mask | bit] += sign * coeff;
        }
      }
    }
  }
  return memo.emplace(colmask, std::move(result)).first->second;
}

}  // namespace

MultilinearPoly symbolic_det(const ParamPair& pair, const std::vector<int>& deleted_columns) {
  const DetContext ctx = make_det_context(pair, deleted_columns);
  std::unordered_map<std::uint32_t, PolyMap> memo;
  const PolyMap& top = expand(ctx, (1u << ctx.n) - 1, memo);

  MultilinearPoly poly;
  poly.degree = ctx.n;
  for (const auto& [mask, coeff] : top)
    if (coeff != 0) poly.coeff.emplace(mask, coeff);
  return poly;
}

std::vector<DetTerm> symbolic_det_terms(const ParamPair& pair,
                                        const std::vector<int>& deleted_columns) {
  const DetContext ctx = make_det_context(pair, deleted_columns);
  std::vector<DetTerm> terms;
  std::vector<int> col_of_row(ctx.n, 0), colors(ctx.n, 0);

  // inversion count, deliberately not the cycle-count formula the sign-rule
  // property test asserts against
  auto signature = [&]() {
    int inversions = 0;
    for (int i = 0; i < ctx.n; ++i)
      for (int j = i + 1; j < ctx.n; ++j)
        if (col_of_row[i] > col_of_row[j]) ++inversions;
    return (inversions % 2 == 0) ? 1 : -1;
  };

  std::function<void(int, std::uint32_t, std::uint32_t)> walk = [&](int row, std::uint32_t cols,
                                                                    std::uint32_t used) {
    if (row == ctx.n) {
      DetTerm term;
      term.col_of_row = col_of_row;
      term.colors = colors;
      term.sign = signature();
      terms.push_back(std::move(term));
      return;
    }
    for (int j = 0; j < ctx.n; ++j) {
      if (cols & (1u << j)) continue;
      for (int color : ctx.cell_colors[row][j]) {
        const std::uint32_t bit = 1u << (color - 1);
        if (used & bit) continue;
        col_of_row[row] = j + 1;
        colors[row] = color;
        walk(row + 1, cols | (1u << j), used | bit);
      }
    }
  };
  walk(0, 0u, 0u);

  std::sort(terms.begin(), terms.end(), [](const DetTerm& a, const DetTerm& b) {
    return std::tie(a.col_of_row, a.colors) < std::tie(b.col_of_row, b.colors);
  });
  return terms;
}

}  // namespace strucctrl
