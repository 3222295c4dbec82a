#pragma once

#include "fixtrace/numeric.hpp"

#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace fixtrace {

// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative dimension");
  }
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = static_cast<int>(init.size());
    cols_ = rows_ ? static_cast<int>(init.begin()->size()) : 0;
    data_.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (const auto& row : init) {
      if (static_cast<int>(row.size()) != cols_)
        throw std::invalid_argument("ragged initializer");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Int& at(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  bool is_zero() const {
    for (const Int& v : data_)
      if (v != 0) return false;
    return true;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const Int& aik = a.at(i, k);
        if (aik == 0) continue;
        for (int j = 0; j < b.cols_; ++j) c.at(i, j) += aik * b.at(k, j);
      }
    return c;
  }

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("dimension mismatch");
    IntMatrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      c.data_[i] = a.data_[i] + b.data_[i];
    return c;
  }

  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("dimension mismatch");
    IntMatrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      c.data_[i] = a.data_[i] - b.data_[i];
    return c;
  }

  Int trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
    Int t = 0;
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  // Fraction-free Bareiss determinant.
  Int det() const {
    if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
    int n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
      if (a.at(k, k) == 0) {
        int p = -1;
        for (int i = k + 1; i < n; ++i)
          if (a.at(i, k) != 0) {
            p = i;
            break;
          }
        if (p < 0) return 0;
        for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
        sign = -sign;
      }
      for (int i = k + 1; i < n; ++i)
        for (int j = k + 1; j < n; ++j) {
          Int v = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
          a.at(i, j) = v / prev;  // exact division by Bareiss
        }
      prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> data_;
};

}  // namespace fixtrace
