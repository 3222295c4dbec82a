#pragma once

#include "fixtrace/int_matrix.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace fixtrace {

// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ... .
// u_inverse is maintained alongside U so cokernel representatives can be
// lifted back without a separate inversion.
struct SmithDecomposition {
  IntMatrix u, d, v;
  IntMatrix u_inverse;
  std::vector<Int> invariant_factors;  // positive diagonal entries of D
  int rank = 0;
};

namespace detail {

inline void swap_rows(IntMatrix& m, int a, int b) {
  for (int j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}
inline void swap_cols(IntMatrix& m, int a, int b) {
  for (int i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}
// row a += q * row b
inline void add_row(IntMatrix& m, int a, int b, const Int& q) {
  for (int j = 0; j < m.cols(); ++j) m.at(a, j) += q * m.at(b, j);
}
// col a += q * col b
inline void add_col(IntMatrix& m, int a, int b, const Int& q) {
  for (int i = 0; i < m.rows(); ++i) m.at(i, a) += q * m.at(i, b);
}
inline void negate_row(IntMatrix& m, int a) {
  for (int j = 0; j < m.cols(); ++j) m.at(a, j) = -m.at(a, j);
}

}  // namespace detail

// Pivot selection is smallest nonzero absolute value, which keeps entry
// growth tame on the small matrices this engine sees.
inline SmithDecomposition smith_normal_form(const IntMatrix& input) {
  using namespace detail;
  const int rows = input.rows();
  const int cols = input.cols();
  SmithDecomposition out;
  IntMatrix a = input;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix uinv = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);

  const int steps = std::min(rows, cols);
  for (int t = 0; t < steps; ++t) {
    // Find the smallest-magnitude nonzero entry in the trailing block.
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        if (a.at(i, j) == 0) continue;
        Int mag = abs_int(a.at(i, j));
        if (pi < 0 || mag < best) {
          best = mag;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // trailing block is zero

    if (pi != t) {
      swap_rows(a, t, pi);
      swap_rows(u, t, pi);
      swap_cols(uinv, t, pi);
    }
    if (pj != t) {
      swap_cols(a, t, pj);
      swap_cols(v, t, pj);
    }

    bool dirty = true;
    while (dirty) {
      dirty = false;
      // Clear column t by Euclidean steps.
      for (int i = t + 1; i < rows; ++i) {
        while (a.at(i, t) != 0) {
          Int q = a.at(i, t) / a.at(t, t);
          if (q != 0) {
            add_row(a, i, t, -q);
            add_row(u, i, t, -q);
            add_col(uinv, t, i, q);
          }
          if (a.at(i, t) != 0) {
            swap_rows(a, t, i);
            swap_rows(u, t, i);
            swap_cols(uinv, t, i);
          }
        }
      }
      // Clear row t.
      for (int j = t + 1; j < cols; ++j) {
        while (a.at(t, j) != 0) {
          Int q = a.at(t, j) / a.at(t, t);
          if (q != 0) {
            add_col(a, j, t, -q);
            add_col(v, j, t, -q);
          }
          if (a.at(t, j) != 0) {
            swap_cols(a, t, j);
            swap_cols(v, t, j);
            dirty = true;  // column t may be dirty again
          }
        }
      }
      if (dirty) continue;
      // Enforce divisibility: pivot must divide the trailing block.
      for (int i = t + 1; i < rows && !dirty; ++i)
        for (int j = t + 1; j < cols && !dirty; ++j)
          if (a.at(i, j) % a.at(t, t) != 0) {
            add_row(a, t, i, 1);
            add_row(u, t, i, 1);
            add_col(uinv, i, t, -1);
            dirty = true;
          }
    }
    if (a.at(t, t) < 0) {
      negate_row(a, t);
      negate_row(u, t);
      for (int i = 0; i < rows; ++i) uinv.at(i, t) = -uinv.at(i, t);
    }
  }

  out.u = std::move(u);
  out.u_inverse = std::move(uinv);
  out.v = std::move(v);
  out.d = std::move(a);
  for (int t = 0; t < steps; ++t) {
    if (out.d.at(t, t) == 0) break;
    out.invariant_factors.push_back(out.d.at(t, t));
  }
  out.rank = static_cast<int>(out.invariant_factors.size());
  return out;
}

struct CokernelInvariants {
  long long free_rank = 0;
  std::vector<Int> torsion;  // invariant factors > 1
};

// Structure of Z^rows / im(M).
inline CokernelInvariants cokernel_invariants(const IntMatrix& m) {
  SmithDecomposition s = smith_normal_form(m);
  CokernelInvariants out;
  out.free_rank = m.rows() - s.rank;
  for (const Int& f : s.invariant_factors)
    if (f > 1) out.torsion.push_back(f);
  return out;
}

// Columns of V beyond the rank span ker(M) over Q (and saturate it over Z).
inline std::vector<std::vector<Int>> kernel_basis(const IntMatrix& m) {
  SmithDecomposition s = smith_normal_form(m);
  std::vector<std::vector<Int>> basis;
  for (int j = s.rank; j < m.cols(); ++j) {
    std::vector<Int> col(m.cols());
    for (int i = 0; i < m.cols(); ++i) col[i] = s.v.at(i, j);
    basis.push_back(std::move(col));
  }
  return basis;
}

// Canonical-form calculator for Z^n / im(M): every vector gets a unique
// reduced label, and each label lifts back to a representative vector.
class CokernelForm {
 public:
  explicit CokernelForm(const IntMatrix& m)
      : n_(m.rows()), snf_(smith_normal_form(m)) {}

  long long free_rank() const { return n_ - snf_.rank; }

  bool is_finite() const { return free_rank() == 0; }

  Int order() const {
    if (!is_finite()) throw std::logic_error("infinite cokernel");
    Int o = 1;
    for (const Int& f : snf_.invariant_factors) o *= f;
    return o;
  }

  // Reduced label of a vector: coordinates in the U-basis, with the first
  // `rank` entries taken modulo the invariant factors.
  std::vector<Int> label(const std::vector<Int>& x) const {
    if (static_cast<int>(x.size()) != n_)
      throw std::invalid_argument("vector size mismatch");
    std::vector<Int> y(n_, 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) y[i] += snf_.u.at(i, j) * x[j];
    for (int i = 0; i < snf_.rank; ++i) {
      const Int& d = snf_.invariant_factors[i];
      Int r = y[i] % d;
      if (r < 0) r += d;
      y[i] = r;
    }
    return y;
  }

  // A representative of the class with the given reduced label.
  std::vector<Int> representative(const std::vector<Int>& lbl) const {
    if (static_cast<int>(lbl.size()) != n_)
      throw std::invalid_argument("label size mismatch");
    std::vector<Int> x(n_, 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) x[i] += snf_.u_inverse.at(i, j) * lbl[j];
    return x;
  }

  // Enumerates all labels when the cokernel is finite.
  std::vector<std::vector<Int>> all_labels() const {
    if (!is_finite()) throw std::logic_error("infinite cokernel");
    std::vector<std::vector<Int>> out;
    std::vector<Int> cur(n_, 0);
    enumerate(0, cur, out);
    return out;
  }

  const SmithDecomposition& snf() const { return snf_; }
  int dimension() const { return n_; }

 private:
  void enumerate(int i, std::vector<Int>& cur,
                 std::vector<std::vector<Int>>& out) const {
    if (i == snf_.rank) {
      out.push_back(cur);
      return;
    }
    for (Int v = 0; v < snf_.invariant_factors[i]; ++v) {
      cur[i] = v;
      enumerate(i + 1, cur, out);
    }
    cur[i] = 0;
  }

  int n_;
  SmithDecomposition snf_;
};

}  // namespace fixtrace
