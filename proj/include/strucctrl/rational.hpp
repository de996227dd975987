#pragma once

#include <gmpxx.h>

#include <cassert>
#include <utility>
#include <vector>

namespace strucctrl {

// Exact arithmetic everywhere rank or cancellation decisions are made.
using Rational = mpq_class;

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static RationalMatrix identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static RationalMatrix from_int_rows(const std::vector<std::vector<int>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r > 0 ? static_cast<int>(rows[0].size()) : 0;
    RationalMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
      assert(static_cast<int>(rows[i].size()) == c);
      for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  // Column vectors side by side.
  static RationalMatrix from_int_columns(const std::vector<std::vector<int>>& cols) {
    const int c = static_cast<int>(cols.size());
    const int r = c > 0 ? static_cast<int>(cols[0].size()) : 0;
    RationalMatrix m(r, c);
    for (int j = 0; j < c; ++j)
      for (int i = 0; i < r; ++i) m.at(i, j) = cols[j][i];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  RationalMatrix operator*(const RationalMatrix& rhs) const {
    assert(cols_ == rhs.rows_);
    RationalMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rational& v = at(i, k);
        if (v == 0) continue;
        for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += v * rhs.at(k, j);
      }
    return out;
  }

  // [*this rhs]
  RationalMatrix horzcat(const RationalMatrix& rhs) const {
    assert(rows_ == rhs.rows_);
    RationalMatrix out(rows_, cols_ + rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
      for (int j = 0; j < rhs.cols_; ++j) out.at(i, cols_ + j) = rhs.at(i, j);
    }
    return out;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> a_;
};

// Rank over the rationals by Gaussian elimination; exact by construction.
int rational_rank(RationalMatrix m);

// Incremental row-space basis used as the independence oracle in the matroid
// routines and as the dependence detector in term reduction. Tracks, for each
// inserted row, its expression in terms of previously kept rows.
class RowBasis {
 public:
  explicit RowBasis(int dim) : dim_(dim) {}

  int size() const { return static_cast<int>(rows_.size()); }

  bool independent(const std::vector<Rational>& v) const;

  // Inserts v if independent of the current basis and returns true.
  // Otherwise leaves the basis unchanged, writes v's expansion over the kept
  // rows (by kept-row insertion index) into *combination when non-null, and
  // returns false.
  bool insert(const std::vector<Rational>& v,
              std::vector<std::pair<int, Rational>>* combination = nullptr);

 private:
  struct Row {
    std::vector<Rational> v;                       // reduced row
    std::vector<Rational> comb;                    // over kept rows, by index
    int pivot = -1;
  };
  // Reduces v against the basis; returns (residual, combination over kept rows).
  std::pair<std::vector<Rational>, std::vector<Rational>> reduce(std::vector<Rational> v) const;

  int dim_;
  std::vector<Row> rows_;
};

}  // namespace strucctrl
