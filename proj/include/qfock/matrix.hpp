#pragma once

#include <optional>
#include <vector>

#include "qfock/scalar.hpp"

namespace qfock {

/// Dense matrix over Q(q,u) with exact Gaussian elimination.
class Matrix {
 public:
  Matrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Scalar &at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Scalar &at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  friend bool operator==(const Matrix &x, const Matrix &y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  friend Matrix operator*(const Matrix &x, const Matrix &y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("Matrix: shape");
    Matrix r(x.rows_, y.cols_);
    for (size_t i = 0; i < x.rows_; ++i)
      for (size_t k = 0; k < x.cols_; ++k) {
        if (x.at(i, k).is_zero()) continue;
        for (size_t j = 0; j < y.cols_; ++j)
          r.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    return r;
  }

  /// In-place reduced row echelon form; returns the pivot columns.
  std::vector<size_t> rref() {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < cols_ && row < rows_; ++col) {
      size_t sel = row;
      while (sel < rows_ && at(sel, col).is_zero()) ++sel;
      if (sel == rows_) continue;
      if (sel != row)
        for (size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(row, j));
      Scalar inv = at(row, col).inverse();
      for (size_t j = col; j < cols_; ++j) at(row, j) *= inv;
      for (size_t i = 0; i < rows_; ++i) {
        if (i == row || at(i, col).is_zero()) continue;
        Scalar f = at(i, col);
        for (size_t j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  size_t rank() const {
    Matrix m = *this;
    return m.rref().size();
  }

  /// Basis of the right kernel.
  std::vector<std::vector<Scalar>> kernel() const {
    Matrix m = *this;
    std::vector<size_t> pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Scalar> v(cols_);
      v[free] = Scalar(1);
      for (size_t r = 0; r < pivots.size(); ++r)
        v[pivots[r]] = -m.at(r, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  /// One exact solution of A x = b, or nullopt if inconsistent.
  std::optional<std::vector<Scalar>> solve(
      const std::vector<Scalar> &b) const {
    if (b.size() != rows_) throw std::invalid_argument("Matrix: rhs size");
    Matrix aug(rows_, cols_ + 1);
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_) = b[i];
    }
    std::vector<size_t> pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<Scalar> x(cols_);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
    return x;
  }

 private:
  size_t rows_, cols_;
  std::vector<Scalar> a_;
};

}  // namespace qfock
