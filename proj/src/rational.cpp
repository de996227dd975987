#include "strucctrl/rational.hpp"

namespace strucctrl {

int rational_rank(RationalMatrix m) {
  const int rows = m.rows();
  const int cols = m.cols();
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i) {
      if (m.at(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int j = col; j < cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    }
    const Rational inv = 1 / m.at(rank, col);
    for (int j = col; j < cols; ++j) m.at(rank, j) *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == rank || m.at(i, col) == 0) continue;
      const Rational factor = m.at(i, col);
      for (int j = col; j < cols; ++j) m.at(i, j) -= factor * m.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

std::pair<std::vector<Rational>, std::vector<Rational>> RowBasis::reduce(
    std::vector<Rational> v) const {
  std::vector<Rational> comb(rows_.size(), Rational(0));
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Row& row = rows_[r];
    const Rational factor = v[row.pivot];  // basis rows are normalized to pivot 1
    if (factor == 0) continue;
    for (int j = 0; j < dim_; ++j) v[j] -= factor * row.v[j];
    for (size_t k = 0; k < rows_.size(); ++k) comb[k] += factor * row.comb[k];
  }
  return {std::move(v), std::move(comb)};
}

bool RowBasis::independent(const std::vector<Rational>& v) const {
  auto [residual, comb] = reduce(v);
  for (const Rational& x : residual)
    if (x != 0) return true;
  return false;
}

bool RowBasis::insert(const std::vector<Rational>& v,
                      std::vector<std::pair<int, Rational>>* combination) {
  auto [residual, comb] = reduce(v);
  int pivot = -1;
  for (int j = 0; j < dim_; ++j) {
    if (residual[j] != 0) {
      pivot = j;
      break;
    }
  }
  if (pivot < 0) {
    if (combination) {
      combination->clear();
      for (size_t k = 0; k < comb.size(); ++k)
        if (comb[k] != 0) combination->emplace_back(static_cast<int>(k), comb[k]);
    }
    return false;
  }
  const Rational inv = 1 / residual[pivot];
  for (Rational& x : residual) x *= inv;
  Row row;
  row.v = std::move(residual);
  row.pivot = pivot;
  // row.v = inv * (v_original - sum_k comb[k] * kept[k])
  row.comb.assign(rows_.size() + 1, Rational(0));
  for (size_t k = 0; k < comb.size(); ++k) row.comb[k] = -comb[k] * inv;
  row.comb[rows_.size()] = inv;
  for (Row& existing : rows_) existing.comb.push_back(Rational(0));
  rows_.push_back(std::move(row));
  return true;
}

}  // namespace strucctrl
