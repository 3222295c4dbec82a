#pragma once

#include "fixtrace/int_matrix.hpp"
#include "fixtrace/numeric.hpp"

#include <stdexcept>
#include <vector>

namespace fixtrace {

// Small exact rational matrix toolkit: just enough Gaussian elimination for
// the homology-level trace computation.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  static RatMatrix from_int(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) r.at(i, j) = Rat(m.at(i, j));
    return r;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Rat& at(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch");
    RatMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a.at(i, k) == 0) continue;
        for (int j = 0; j < b.cols_; ++j)
          c.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return c;
  }

  // In-place reduced row echelon form; returns pivot column indices.
  std::vector<int> rref() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
      int p = -1;
      for (int i = r; i < rows_; ++i)
        if (at(i, c) != 0) {
          p = i;
          break;
        }
      if (p < 0) continue;
      if (p != r)
        for (int j = 0; j < cols_; ++j) std::swap(at(p, j), at(r, j));
      Rat inv = at(r, c);
      for (int j = 0; j < cols_; ++j) at(r, j) /= inv;
      for (int i = 0; i < rows_; ++i) {
        if (i == r || at(i, c) == 0) continue;
        Rat f = at(i, c);
        for (int j = 0; j < cols_; ++j) at(i, j) -= f * at(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rat> data_;
};

// Column basis of the null space of m.
inline RatMatrix rational_kernel_basis(const RatMatrix& m) {
  RatMatrix r = m;
  std::vector<int> pivots = r.rref();
  std::vector<char> is_pivot(m.cols(), 0);
  for (int c : pivots) is_pivot[c] = 1;
  int free_count = m.cols() - static_cast<int>(pivots.size());
  RatMatrix basis(m.cols(), free_count);
  int col = 0;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    basis.at(c, col) = 1;
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
      basis.at(pivots[pr], col) = -r.at(static_cast<int>(pr), c);
    ++col;
  }
  return basis;
}

// Columns of m indexed by the pivot set: an independent spanning subset of
// the column space.
inline RatMatrix column_space_basis(const RatMatrix& m) {
  RatMatrix r = m;
  std::vector<int> pivots = r.rref();
  RatMatrix basis(m.rows(), static_cast<int>(pivots.size()));
  for (std::size_t j = 0; j < pivots.size(); ++j)
    for (int i = 0; i < m.rows(); ++i) basis.at(i, static_cast<int>(j)) = m.at(i, pivots[j]);
  return basis;
}

// Trace of f restricted to the invariant subspace spanned by the columns of
// s (full column rank required). Solves s * t = f * s and returns tr(t).
// Throws if the subspace is not f-invariant.
inline Rat restricted_trace(const RatMatrix& f, const RatMatrix& s) {
  int k = s.cols();
  if (k == 0) return Rat(0);
  RatMatrix fs = f * s;
  RatMatrix aug(s.rows(), k + k);
  for (int i = 0; i < s.rows(); ++i) {
    for (int j = 0; j < k; ++j) aug.at(i, j) = s.at(i, j);
    for (int j = 0; j < k; ++j) aug.at(i, k + j) = fs.at(i, j);
  }
  std::vector<int> pivots = aug.rref();
  // s must have full column rank: its k columns are all pivots.
  for (int j = 0; j < k; ++j)
    if (static_cast<int>(pivots.size()) <= j || pivots[j] != j)
      throw std::logic_error("subspace basis not independent");
  // consistency: no pivot may fall in the right block
  if (static_cast<int>(pivots.size()) > k)
    throw std::logic_error("subspace not invariant under the map");
  Rat tr = 0;
  for (int j = 0; j < k; ++j) tr += aug.at(j, k + j);
  return tr;
}

}  // namespace fixtrace
