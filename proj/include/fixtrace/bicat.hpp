#pragma once

#include "fixtrace/group_ring.hpp"
#include "fixtrace/group_table.hpp"

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixtrace {

// A 0-cell of the bimodule bicategory: the group ring Z[G] of a finite
// group, with its conjugacy classes cached.
struct RingSpec {
  FiniteGroupTable group;
  std::vector<std::vector<int>> classes;

  explicit RingSpec(FiniteGroupTable g)
      : group(std::move(g)), classes(conjugacy_classes(group)) {}

  TableContext ctx() const { return TableContext{&group}; }
};

using RMat = RingMatrix<TableContext>;
using RElem = GroupRingElement<TableContext>;

// 1-cell: a right-B-module free of rank n with left A-action given by a
// homomorphism A -> Mat_n(Z[B]), stored on group elements.
struct BimoduleCell {
  const RingSpec* left = nullptr;
  const RingSpec* right = nullptr;
  int rank = 0;
  std::vector<RMat> action;  // indexed by elements of left->group

  // Free cell: every left group element acts as the identity matrix. With
  // the trivial group on the left this is the plain rank-n module.
  static BimoduleCell free_cell(const RingSpec& a, const RingSpec& b, int n) {
    BimoduleCell c;
    c.left = &a;
    c.right = &b;
    c.rank = n;
    TableContext ctx = b.ctx();
    for (int g = 0; g < a.group.order(); ++g)
      c.action.push_back(RMat::identity(ctx, n));
    return c;
  }

  // Rank-1 regular cell of a ring over itself: g acts as the 1x1 matrix (g).
  static BimoduleCell regular_cell(const RingSpec& a) {
    BimoduleCell c;
    c.left = &a;
    c.right = &a;
    c.rank = 1;
    for (int g = 0; g < a.group.order(); ++g) {
      RMat m(1, 1);
      m.at(0, 0) = RElem::of(g);
      c.action.push_back(m);
    }
    return c;
  }
};

// Checks that the action is a unital homomorphism (exhaustive at this
// scale).
inline std::optional<std::string> validate_cell(const BimoduleCell& c) {
  const int order = c.left->group.order();
  if (static_cast<int>(c.action.size()) != order)
    return "action table size mismatch";
  TableContext ctx = c.right->ctx();
  for (const RMat& m : c.action)
    if (m.rows() != c.rank || m.cols() != c.rank)
      return "action matrix dimension mismatch";
  if (!(c.action[c.left->group.identity] == RMat::identity(ctx, c.rank)))
    return "identity does not act as the identity matrix";
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h)
      if (!(rm_mul(ctx, c.action[g], c.action[h]) ==
            c.action[c.left->group.mul(g, h)]))
        return "action is not multiplicative at (" + c.left->group.labels[g] +
               "," + c.left->group.labels[h] + ")";
  return std::nullopt;
}

// 2-cell: an A-linear endomorphism of the cell, as a matrix over Z[B].
struct EndoMatrix {
  const BimoduleCell* cell = nullptr;
  RMat mat;
};

inline std::optional<std::string> validate_endo(const EndoMatrix& f) {
  const BimoduleCell& c = *f.cell;
  if (f.mat.rows() != c.rank || f.mat.cols() != c.rank)
    return "matrix dimension mismatch";
  TableContext ctx = c.right->ctx();
  for (int g = 0; g < c.left->group.order(); ++g)
    if (!(rm_mul(ctx, f.mat, c.action[g]) == rm_mul(ctx, c.action[g], f.mat)))
      return "matrix does not commute with the action of " +
             c.left->group.labels[g];
  return std::nullopt;
}

// Shadow value: an element of HH_0(Z[G]) (or its twisted analogue), i.e. a
// Z-linear combination of (twisted) conjugacy class representatives.
struct ShadowValue {
  const RingSpec* ring = nullptr;
  std::map<int, Int> coefficients;  // keyed by class representative index

  bool is_zero() const { return coefficients.empty(); }

  friend bool operator==(const ShadowValue& a, const ShadowValue& b) {
    return a.coefficients == b.coefficients;
  }

  friend ShadowValue operator+(const ShadowValue& a, const ShadowValue& b) {
    ShadowValue out = a;
    for (const auto& [r, c] : b.coefficients) {
      out.coefficients[r] += c;
      if (out.coefficients[r] == 0) out.coefficients.erase(r);
    }
    return out;
  }

  std::string str() const {
    if (coefficients.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [r, c] : coefficients) {
      Int mag = abs_int(c);
      if (first) {
        if (c < 0) os << "-";
        first = false;
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      os << mag.str() << "*[" << ring->group.labels[r] << "]";
    }
    return os.str();
  }
};

// HH_0 presented by its class basis plus the projector onto it. The twist,
// when present, must be a verified endomorphism; classes are then twisted
// conjugacy classes.
class ShadowProjector {
 public:
  ShadowProjector(const RingSpec& ring, std::optional<std::vector<int>> twist)
      : ring_(&ring), twist_(std::move(twist)) {
    if (twist_) {
      if (!is_endomorphism(ring.group, *twist_))
        throw std::invalid_argument("twist is not a group endomorphism");
      classes_ = twisted_conjugacy_classes(ring.group, *twist_);
    } else {
      classes_ = ring.classes;
    }
    rep_of_.assign(ring.group.order(), -1);
    for (const auto& cls : classes_)
      for (int x : cls) rep_of_[x] = cls[0];
  }

  const RingSpec& ring() const { return *ring_; }
  int rank() const { return static_cast<int>(classes_.size()); }
  const std::vector<std::vector<int>>& classes() const { return classes_; }

  std::vector<std::string> class_labels() const {
    std::vector<std::string> out;
    for (const auto& cls : classes_) out.push_back(ring_->group.labels[cls[0]]);
    return out;
  }

  ShadowValue project(const RElem& x) const {
    ShadowValue v;
    v.ring = ring_;
    for (const auto& [g, c] : x.terms) {
      int rep = rep_of_[g];
      v.coefficients[rep] += c;
      if (v.coefficients[rep] == 0) v.coefficients.erase(rep);
    }
    return v;
  }

 private:
  const RingSpec* ring_;
  std::optional<std::vector<int>> twist_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> rep_of_;
};

inline ShadowProjector hh0(const RingSpec& ring,
                           std::optional<std::vector<int>> twist = std::nullopt) {
  return ShadowProjector(ring, std::move(twist));
}

// Free-module trace: the projected sum of diagonal entries.
inline ShadowValue shadow_trace(const ShadowProjector& p, const RMat& m) {
  return p.project(m.trace_sum());
}

inline ShadowValue shadow_trace(const ShadowProjector& p, const EndoMatrix& f) {
  if (auto err = validate_endo(f))
    throw std::invalid_argument("invalid 2-cell: " + *err);
  return shadow_trace(p, f.mat);
}

// Extends the action homomorphism B -> Mat_m(Z[C]) linearly to group-ring
// elements.
inline RMat extend_action(const BimoduleCell& n, const RElem& b) {
  TableContext ctx = n.right->ctx();
  RMat out(n.rank, n.rank);
  for (const auto& [g, c] : b.terms) {
    const RMat& act = n.action[g];
    for (int i = 0; i < n.rank; ++i)
      for (int j = 0; j < n.rank; ++j)
        out.at(i, j) = gr_add(out.at(i, j), gr_scale(act.at(i, j), c));
  }
  return out;
}

// Composition product of cells over the shared middle ring: rank
// multiplies, and the left action becomes block substitution of N's action
// into M's action matrices.
inline BimoduleCell tensor_cells(const BimoduleCell& m, const BimoduleCell& n) {
  if (m.right != n.left)
    throw std::invalid_argument("middle rings do not match");
  BimoduleCell out;
  out.left = m.left;
  out.right = n.right;
  out.rank = m.rank * n.rank;
  for (int g = 0; g < m.left->group.order(); ++g) {
    RMat big(out.rank, out.rank);
    const RMat& mg = m.action[g];
    for (int i = 0; i < m.rank; ++i)
      for (int j = 0; j < m.rank; ++j) {
        if (mg.at(i, j).is_zero()) continue;
        RMat block = extend_action(n, mg.at(i, j));
        for (int a = 0; a < n.rank; ++a)
          for (int b = 0; b < n.rank; ++b)
            big.at(i * n.rank + a, j * n.rank + b) = block.at(a, b);
      }
    out.action.push_back(std::move(big));
  }
  return out;
}

// Composition product of 2-cells: (F . G) acting on M tensor N.
inline RMat tensor_endos(const BimoduleCell& m, const BimoduleCell& n,
                         const RMat& f, const RMat& g) {
  if (m.right != n.left)
    throw std::invalid_argument("middle rings do not match");
  TableContext ctx = n.right->ctx();
  int rank = m.rank * n.rank;
  RMat out(rank, rank);
  for (int i = 0; i < m.rank; ++i)
    for (int j = 0; j < m.rank; ++j) {
      if (f.at(i, j).is_zero()) continue;
      RMat block = rm_mul(ctx, extend_action(n, f.at(i, j)), g);
      for (int a = 0; a < n.rank; ++a)
        for (int b = 0; b < n.rank; ++b)
          out.at(i * n.rank + a, j * n.rank + b) = block.at(a, b);
    }
  return out;
}

// Result of checking the two triangle identities of a candidate dual pair.
struct DualPairResult {
  bool first_ok = false;   // identity on the cell itself
  bool second_ok = false;  // identity on the dual
  bool pass() const { return first_ok && second_ok; }

  std::vector<std::string> failing() const {
    std::vector<std::string> out;
    if (!first_ok) out.push_back("first");
    if (!second_ok) out.push_back("second");
    return out;
  }
};

// For a free rank-n cell the candidate coevaluation and evaluation are n x n
// matrices over Z[B]; the two triangle composites reduce to coev*ev and
// ev*coev, both of which must be the identity.
inline DualPairResult dual_pair_check(const BimoduleCell& cell,
                                      const RMat& coev, const RMat& ev) {
  if (coev.rows() != cell.rank || coev.cols() != cell.rank ||
      ev.rows() != cell.rank || ev.cols() != cell.rank)
    throw std::invalid_argument("coev/ev dimension mismatch");
  TableContext ctx = cell.right->ctx();
  RMat id = RMat::identity(ctx, cell.rank);
  DualPairResult r;
  r.first_ok = rm_mul(ctx, coev, ev) == id;
  r.second_ok = rm_mul(ctx, ev, coev) == id;
  return r;
}

// The canonical dual pair of a free cell.
inline std::pair<RMat, RMat> canonical_dual_pair(const BimoduleCell& cell) {
  TableContext ctx = cell.right->ctx();
  return {RMat::identity(ctx, cell.rank), RMat::identity(ctx, cell.rank)};
}

// Hattori-Stallings trace of a projective module presented by an
// idempotent matrix: the projected diagonal sum of the idempotent.
inline ShadowValue hattori_stallings(const ShadowProjector& p, const RMat& e) {
  if (e.rows() != e.cols()) throw std::invalid_argument("matrix not square");
  TableContext ctx = p.ring().ctx();
  if (!(rm_mul(ctx, e, e) == e))
    throw std::invalid_argument("matrix is not idempotent");
  return shadow_trace(p, e);
}

// Block embedding F -> F (+) 0 used by the Morita-style trace check.
inline RMat block_embed(const RMat& f, int extra) {
  RMat out(f.rows() + extra, f.cols() + extra);
  for (int i = 0; i < f.rows(); ++i)
    for (int j = 0; j < f.cols(); ++j) out.at(i, j) = f.at(i, j);
  return out;
}

inline RMat direct_sum(const RMat& a, const RMat& b) {
  RMat out(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      out.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return out;
}

}  // namespace fixtrace
