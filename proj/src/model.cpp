#include "strucctrl/model.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace strucctrl {
namespace {

bool is_zero(const std::vector<int>& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

bool is_binary(const std::vector<int>& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0 || x == 1; });
}

std::vector<Rational> vectorized_outer(const std::vector<int>& g, const std::vector<int>& h) {
  std::vector<Rational> out;
  out.reserve(g.size() * h.size());
  for (int gi : g)
    for (int hj : h) out.emplace_back(static_cast<long>(gi) * hj);
  return out;
}

void check_dimensions(int n, int m, const std::vector<RawTerm>& raw_terms) {
  if (n < 1) throw InputError("state dimension n must be at least 1");
  if (m < 0) throw InputError("input dimension m must be nonnegative");
  if (raw_terms.empty()) throw InputError("empty term list");
  for (size_t k = 0; k < raw_terms.size(); ++k) {
    const RawTerm& t = raw_terms[k];
    if (static_cast<int>(t.g.size()) != n)
      throw InputError("term " + std::to_string(k + 1) + ": g must have length n");
    if (static_cast<int>(t.h.size()) != n + m)
      throw InputError("term " + std::to_string(k + 1) + ": h must have length n+m");
    if (is_zero(t.g)) throw InputError("term " + std::to_string(k + 1) + ": g is zero");
    if (is_zero(t.h)) throw InputError("term " + std::to_string(k + 1) + ": h is zero");
  }
}

}  // namespace

bool ParamTerm::binary() const { return is_binary(g) && is_binary(h); }

bool ParamTerm::has_input_part(int n) const {
  for (size_t j = n; j < h.size(); ++j)
    if (h[j] != 0) return true;
  return false;
}

bool ParamPair::binary() const {
  return std::all_of(terms.begin(), terms.end(), [](const ParamTerm& t) { return t.binary(); });
}

ParamPair build_pair(int n, int m, const std::vector<RawTerm>& raw_terms) {
  check_dimensions(n, m, raw_terms);
  for (size_t k = 0; k < raw_terms.size(); ++k) {
    if (!is_binary(raw_terms[k].g) || !is_binary(raw_terms[k].h))
      throw InputError("term " + std::to_string(k + 1) + ": non-binary term");
  }

  ParamPair pair;
  pair.n = n;
  pair.m = m;

  RowBasis basis(n * (n + m));
  std::vector<int> kept_raw_index;  // kept-order -> raw index
  for (size_t k = 0; k < raw_terms.size(); ++k) {
    std::vector<std::pair<int, Rational>> combination;
    if (basis.insert(vectorized_outer(raw_terms[k].g, raw_terms[k].h), &combination)) {
      kept_raw_index.push_back(static_cast<int>(k));
      ParamTerm term;
      term.color = static_cast<int>(kept_raw_index.size());
      term.g = raw_terms[k].g;
      term.h = raw_terms[k].h;
      pair.terms.push_back(std::move(term));
    } else {
      DroppedTerm dropped;
      dropped.input_index = static_cast<int>(k);
      for (auto& [kept_pos, coeff] : combination)
        dropped.combination.emplace_back(kept_raw_index[kept_pos], coeff);
      pair.reduction.push_back(std::move(dropped));
    }
  }
  return pair;
}

ParamPair make_pair_unchecked(int n, int m, const std::vector<RawTerm>& raw_terms) {
  check_dimensions(n, m, raw_terms);
  ParamPair pair;
  pair.n = n;
  pair.m = m;
  for (size_t k = 0; k < raw_terms.size(); ++k) {
    ParamTerm term;
    term.color = static_cast<int>(k) + 1;
    term.g = raw_terms[k].g;
    term.h = raw_terms[k].h;
    pair.terms.push_back(std::move(term));
  }
  return pair;
}

SCGraph graph_of_pair(const ParamPair& pair) {
  if (!pair.binary())
    throw InputError("graph_of_pair requires a binary pair");
  SCGraph scg;
  scg.n = pair.n;
  scg.m = pair.m;
  for (const ParamTerm& term : pair.terms) {
    for (int i = 0; i < pair.n; ++i) {
      if (term.g[i] == 0) continue;
      for (int j = 0; j < pair.n + pair.m; ++j) {
        if (term.h[j] == 0) continue;
        scg.arcs.push_back(Arc{j + 1, i + 1, term.color});
      }
    }
  }
  std::sort(scg.arcs.begin(), scg.arcs.end());
  return scg;
}

ParamPair pair_of_graph(const SCGraph& scg) {
  ScgValidation validation = validate_scg(scg);
  if (!validation.ok()) {
    std::ostringstream msg;
    msg << "invalid structural controllability graph:";
    for (const std::string& v : validation.violations) msg << " [" << v << "]";
    throw InputError(msg.str());
  }

  std::set<int> colors;
  for (const Arc& arc : scg.arcs) colors.insert(arc.color);

  std::vector<RawTerm> raws;
  for (int color : colors) {
    RawTerm raw;
    raw.g.assign(scg.n, 0);
    raw.h.assign(scg.n + scg.m, 0);
    for (const Arc& arc : scg.arcs) {
      if (arc.color != color) continue;
      raw.g[arc.to - 1] = 1;
      raw.h[arc.from - 1] = 1;
    }
    raws.push_back(std::move(raw));
  }

  ParamPair pair = build_pair(scg.n, scg.m, raws);
  if (!pair.reduction.empty())
    throw InputError(
        "graph is not the graph of any independently parameterized pair: "
        "distinct colors induce linearly dependent terms");
  return pair;
}

ScgValidation validate_scg(const SCGraph& scg) {
  ScgValidation report;
  auto complain = [&report](const std::string& what) { report.violations.push_back(what); };

  if (scg.n < 1) complain("state dimension n must be at least 1");
  if (scg.m < 0) complain("input dimension m must be nonnegative");

  std::set<Arc> seen;
  for (const Arc& arc : scg.arcs) {
    std::ostringstream tag;
    tag << "arc (" << arc.from << "," << arc.to << ")_" << arc.color;
    if (arc.from < 1 || arc.from > scg.n + scg.m || arc.to < 1 || arc.to > scg.n + scg.m)
      complain(tag.str() + ": vertex out of range");
    if (arc.color < 1) complain(tag.str() + ": color must be a positive integer");
    if (!seen.insert(arc).second)
      complain(tag.str() + ": duplicate arc (parallel arcs must have distinct colors)");
    if (arc.to > scg.n && arc.to <= scg.n + scg.m)
      complain(tag.str() + ": property (i) violated, arc points toward an input vertex");
  }

  // property (iii): per-color closure of leave-set x enter-set
  std::map<int, std::pair<std::set<int>, std::set<int>>> by_color;  // color -> (leaves, enters)
  for (const Arc& arc : scg.arcs) {
    by_color[arc.color].first.insert(arc.from);
    by_color[arc.color].second.insert(arc.to);
  }
  for (const auto& [color, sets] : by_color) {
    for (int from : sets.first) {
      for (int to : sets.second) {
        if (!seen.count(Arc{from, to, color})) {
          std::ostringstream msg;
          msg << "property (iii) violated: color " << color << " leaves vertex " << from
              << " and enters vertex " << to << " but arc (" << from << "," << to << ")_" << color
              << " is missing";
          complain(msg.str());
        }
      }
    }
  }
  return report;
}

EntryMatrix entry_matrix_of_pair(const ParamPair& pair) {
  EntryMatrix entries(pair.n, std::vector<std::vector<int>>(pair.n + pair.m));
  for (const ParamTerm& term : pair.terms) {
    for (int i = 0; i < pair.n; ++i) {
      if (term.g[i] == 0) continue;
      for (int j = 0; j < pair.n + pair.m; ++j) {
        if (term.h[j] == 0) continue;
        entries[i][j].push_back(term.color);
      }
    }
  }
  for (auto& row : entries)
    for (auto& cell : row) std::sort(cell.begin(), cell.end());
  return entries;
}

ParamPair pair_of_entry_matrix(int n, int m, const EntryMatrix& entries) {
  if (static_cast<int>(entries.size()) != n) throw InputError("entry matrix must have n rows");
  std::map<int, std::set<std::pair<int, int>>> support;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(entries[i].size()) != n + m)
      throw InputError("entry matrix row " + std::to_string(i + 1) + " must have n+m columns");
    for (int j = 0; j < n + m; ++j) {
      std::set<int> in_cell;
      for (int label : entries[i][j]) {
        if (label < 1) throw InputError("parameter labels must be positive integers");
        if (!in_cell.insert(label).second) {
          std::ostringstream msg;
          msg << "entry (" << i + 1 << "," << j + 1 << ") lists parameter " << label
              << " twice; coefficients other than 0/1 are outside the binary class";
          throw InputError(msg.str());
        }
        support[label].insert({i, j});
      }
    }
  }
  if (support.empty()) throw InputError("empty term list");

  std::vector<RawTerm> raws;
  for (const auto& [label, cells] : support) {
    std::set<int> rows, cols;
    for (auto& [i, j] : cells) {
      rows.insert(i);
      cols.insert(j);
    }
    if (cells.size() != rows.size() * cols.size()) {
      std::ostringstream msg;
      msg << "parameter " << label << " appears at";
      for (auto& [i, j] : cells) msg << " (" << i + 1 << "," << j + 1 << ")";
      msg << ", which is not a full row-set x column-set rectangle; the entries of parameter "
          << label << " cannot come from one rank-one binary term, so the matrix pair is not "
          << "linearly parameterized in the supported class";
      throw InputError(msg.str());
    }
    RawTerm raw;
    raw.g.assign(n, 0);
    raw.h.assign(n + m, 0);
    for (int i : rows) raw.g[i] = 1;
    for (int j : cols) raw.h[j] = 1;
    raws.push_back(std::move(raw));
  }
  return build_pair(n, m, raws);
}

namespace {

// Determinant of the square submatrix (rows, cols) of the entry matrix as a
// polynomial with multiset monomials; multilinearity is decided afterwards so
// cancellation (e.g. p^2 terms cancelling) is honored.
using Monomial = std::vector<int>;  // sorted labels, repeats allowed

void expand_minor(const EntryMatrix& entries, const std::vector<int>& rows,
                  const std::vector<int>& cols, size_t level, unsigned used_cols, int sign,
                  Monomial& monomial, std::map<Monomial, long long>& poly) {
  if (level == rows.size()) {
    poly[monomial] += sign;
    return;
  }
  for (size_t cj = 0; cj < cols.size(); ++cj) {
    if (used_cols & (1u << cj)) continue;
    const std::vector<int>& cell = entries[rows[level]][cols[cj]];
    if (cell.empty()) continue;
    // cofactor sign: parity of still-unused columns before cj
    int swaps = 0;
    for (size_t prev = 0; prev < cj; ++prev)
      if (!(used_cols & (1u << prev))) ++swaps;
    const int next_sign = (swaps % 2 == 0) ? sign : -sign;
    for (int label : cell) {
      monomial.insert(std::upper_bound(monomial.begin(), monomial.end(), label), label);
      expand_minor(entries, rows, cols, level + 1, used_cols | (1u << cj), next_sign, monomial,
                   poly);
      monomial.erase(std::find(monomial.begin(), monomial.end(), label));
    }
  }
}

void for_each_subset(int universe, int size, const std::function<void(const std::vector<int>&)>& fn,
                     std::vector<int>& acc, int start) {
  if (static_cast<int>(acc.size()) == size) {
    fn(acc);
    return;
  }
  for (int v = start; v <= universe - (size - static_cast<int>(acc.size())) + 1; ++v) {
    acc.push_back(v);
    for_each_subset(universe, size, fn, acc, v + 1);
    acc.pop_back();
  }
}

}  // namespace

bool verify_multilinear_minors(const EntryMatrix& entries, int max_minor_size) {
  const int rows = static_cast<int>(entries.size());
  const int cols = rows > 0 ? static_cast<int>(entries[0].size()) : 0;
  if (rows > 6 || max_minor_size > 6)
    throw LimitError("multilinear minor check limited to matrices with at most 6 rows");

  const int max_size = std::min({max_minor_size, rows, cols});
  for (int s = 1; s <= max_size; ++s) {
    bool multilinear = true;
    std::vector<int> row_acc, col_acc;
    for_each_subset(
        rows, s,
        [&](const std::vector<int>& row_set) {
          std::vector<int> zero_rows(row_set.size());
          for (size_t i = 0; i < row_set.size(); ++i) zero_rows[i] = row_set[i] - 1;
          std::vector<int> acc2;
          for_each_subset(
              cols, s,
              [&](const std::vector<int>& col_set) {
                if (!multilinear) return;
                std::vector<int> zero_cols(col_set.size());
                for (size_t j = 0; j < col_set.size(); ++j) zero_cols[j] = col_set[j] - 1;
                std::map<Monomial, long long> poly;
                Monomial monomial;
                expand_minor(entries, zero_rows, zero_cols, 0, 0u, 1, monomial, poly);
                for (const auto& [mono, coeff] : poly) {
                  if (coeff == 0) continue;
                  for (size_t i = 1; i < mono.size(); ++i) {
                    if (mono[i] == mono[i - 1]) {
                      multilinear = false;
                      return;
                    }
                  }
                }
              },
              acc2, 1);
        },
        row_acc, 1);
    if (!multilinear) return false;
  }
  return true;
}

bool verify_multilinear_minors(const ParamPair& pair, int max_minor_size) {
  return verify_multilinear_minors(entry_matrix_of_pair(pair), max_minor_size);
}

}  // namespace strucctrl
