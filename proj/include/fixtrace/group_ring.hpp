#pragma once

#include "fixtrace/group_table.hpp"
#include "fixtrace/int_matrix.hpp"
#include "fixtrace/numeric.hpp"
#include "fixtrace/smith.hpp"
#include "fixtrace/word.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fixtrace {

// Group contexts. A context owns the element type and its arithmetic; the
// group-ring layer is generic over it.

struct FreeGroupContext {
  using Elem = Word;
  Elem identity() const { return Word::identity(); }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const { return a.inverse(); }
  std::string elem_str(const Elem& a) const { return a.str(); }
};

struct TableContext {
  const FiniteGroupTable* group = nullptr;
  using Elem = int;
  Elem identity() const { return group->identity; }
  Elem mul(Elem a, Elem b) const { return group->mul(a, b); }
  Elem inv(Elem a) const { return group->inv(a); }
  std::string elem_str(Elem a) const { return group->labels[a]; }
};

// Finitely generated abelian group Z^g / im(R), elements stored as reduced
// cokernel labels. Gives exact Z[pi] arithmetic for abelianized pi.
struct AbelianContext {
  int gens = 0;
  CokernelForm form;  // of the relator exponent matrix (gens x #relators)

  explicit AbelianContext(const IntMatrix& relator_matrix)
      : gens(relator_matrix.rows()), form(relator_matrix) {}

  using Elem = std::vector<Int>;
  Elem identity() const { return Elem(gens, 0); }
  Elem mul(const Elem& a, const Elem& b) const {
    std::vector<Int> ra = form.representative(a);
    std::vector<Int> rb = form.representative(b);
    for (int i = 0; i < gens; ++i) ra[i] += rb[i];
    return form.label(ra);
  }
  Elem inv(const Elem& a) const {
    std::vector<Int> r = form.representative(a);
    for (Int& v : r) v = -v;
    return form.label(r);
  }
  Elem from_word(const Word& w) const {
    return form.label(w.exponent_vector(gens));
  }
  std::string elem_str(const Elem& a) const {
    std::vector<Int> r = form.representative(a);
    std::string s;
    for (int i = 0; i < gens; ++i) {
      if (r[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += "g" + std::to_string(i);
      if (r[i] != 1) s += "^" + r[i].str();
    }
    return s.empty() ? "1" : s;
  }
};

// Finite formal Z-linear combination of group elements. No stored
// coefficient is zero; keys are canonical context elements.
template <class Ctx>
struct GroupRingElement {
  using Elem = typename Ctx::Elem;
  std::map<Elem, Int> terms;

  static GroupRingElement zero() { return {}; }
  static GroupRingElement of(const Elem& g, Int c = 1) {
    GroupRingElement x;
    if (c != 0) x.terms[g] = std::move(c);
    return x;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(const Elem& g, const Int& c) {
    if (c == 0) return;
    auto it = terms.find(g);
    if (it == terms.end()) {
      terms.emplace(g, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return a.terms == b.terms;
  }
};

template <class Ctx>
GroupRingElement<Ctx> gr_identity(const Ctx& ctx) {
  return GroupRingElement<Ctx>::of(ctx.identity());
}

template <class Ctx>
GroupRingElement<Ctx> gr_add(const GroupRingElement<Ctx>& a,
                             const GroupRingElement<Ctx>& b) {
  GroupRingElement<Ctx> out = a;
  for (const auto& [g, c] : b.terms) out.add_term(g, c);
  return out;
}

template <class Ctx>
GroupRingElement<Ctx> gr_neg(const GroupRingElement<Ctx>& a) {
  GroupRingElement<Ctx> out;
  for (const auto& [g, c] : a.terms) out.terms[g] = -c;
  return out;
}

template <class Ctx>
GroupRingElement<Ctx> gr_sub(const GroupRingElement<Ctx>& a,
                             const GroupRingElement<Ctx>& b) {
  return gr_add(a, gr_neg(b));
}

// Distributive product with canonical recombination.
template <class Ctx>
GroupRingElement<Ctx> gr_mul(const Ctx& ctx, const GroupRingElement<Ctx>& a,
                             const GroupRingElement<Ctx>& b) {
  GroupRingElement<Ctx> out;
  for (const auto& [g, c] : a.terms)
    for (const auto& [h, d] : b.terms) out.add_term(ctx.mul(g, h), c * d);
  return out;
}

template <class Ctx>
GroupRingElement<Ctx> gr_scale(const GroupRingElement<Ctx>& a, const Int& k) {
  GroupRingElement<Ctx> out;
  if (k == 0) return out;
  for (const auto& [g, c] : a.terms) out.terms[g] = c * k;
  return out;
}

// The ring map Z[pi] -> Z summing coefficients.
template <class Ctx>
Int augmentation(const GroupRingElement<Ctx>& a) {
  Int s = 0;
  for (const auto& [g, c] : a.terms) s += c;
  return s;
}

template <class Ctx>
std::string gr_str(const Ctx& ctx, const GroupRingElement<Ctx>& a) {
  if (a.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : a.terms) {
    Int mag = abs_int(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    os << mag.str() << "*" << ctx.elem_str(g);
  }
  return os.str();
}

// Dense matrix over a group ring.
template <class Ctx>
class RingMatrix {
 public:
  using Entry = GroupRingElement<Ctx>;

  RingMatrix() = default;
  RingMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  static RingMatrix identity(const Ctx& ctx, int n) {
    RingMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = gr_identity(ctx);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Entry& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Entry& at(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  friend bool operator==(const RingMatrix& a, const RingMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    for (const Entry& e : data_)
      if (!e.is_zero()) return false;
    return true;
  }

  Entry trace_sum() const {
    Entry t;
    for (int i = 0; i < std::min(rows_, cols_); ++i)
      t = gr_add(t, at(i, i));
    return t;
  }

  IntMatrix augmented() const {
    IntMatrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m.at(i, j) = augmentation(at(i, j));
    return m;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Entry> data_;
};

template <class Ctx>
RingMatrix<Ctx> rm_mul(const Ctx& ctx, const RingMatrix<Ctx>& a,
                       const RingMatrix<Ctx>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch");
  RingMatrix<Ctx> c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j) {
        if (b.at(k, j).is_zero()) continue;
        c.at(i, j) = gr_add(c.at(i, j), gr_mul(ctx, a.at(i, k), b.at(k, j)));
      }
    }
  return c;
}

// Composition of maps between free LEFT modules in the based-column
// convention: coefficients pass the second map on the left, so
// (second after first)(i,j) = sum_k first(k,j) * second(i,k). The plain
// rm_mul order is the right-module (row) convention.
template <class Ctx>
RingMatrix<Ctx> rm_compose_left(const Ctx& ctx, const RingMatrix<Ctx>& second,
                                const RingMatrix<Ctx>& first) {
  if (second.cols() != first.rows())
    throw std::invalid_argument("dimension mismatch");
  RingMatrix<Ctx> c(second.rows(), first.cols());
  for (int i = 0; i < second.rows(); ++i)
    for (int k = 0; k < second.cols(); ++k) {
      if (second.at(i, k).is_zero()) continue;
      for (int j = 0; j < first.cols(); ++j) {
        if (first.at(k, j).is_zero()) continue;
        c.at(i, j) =
            gr_add(c.at(i, j), gr_mul(ctx, first.at(k, j), second.at(i, k)));
      }
    }
  return c;
}

template <class Ctx>
RingMatrix<Ctx> rm_add(const RingMatrix<Ctx>& a, const RingMatrix<Ctx>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("dimension mismatch");
  RingMatrix<Ctx> c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = gr_add(a.at(i, j), b.at(i, j));
  return c;
}

template <class Ctx>
RingMatrix<Ctx> rm_sub(const RingMatrix<Ctx>& a, const RingMatrix<Ctx>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("dimension mismatch");
  RingMatrix<Ctx> c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c.at(i, j) = gr_sub(a.at(i, j), b.at(i, j));
  return c;
}

// Maps every group element through `fn` (an endomorphism on keys),
// recombining coefficients.
template <class Ctx, class Fn>
GroupRingElement<Ctx> gr_map(const GroupRingElement<Ctx>& a, Fn&& fn) {
  GroupRingElement<Ctx> out;
  for (const auto& [g, c] : a.terms) out.add_term(fn(g), c);
  return out;
}

template <class Ctx, class Fn>
RingMatrix<Ctx> rm_map(const RingMatrix<Ctx>& a, Fn&& fn) {
  RingMatrix<Ctx> out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.at(i, j) = gr_map(a.at(i, j), fn);
  return out;
}

// Word-keyed element pushed through a context that can interpret words
// (used to test equality of free-word matrices in a quotient group).
template <class Ctx>
GroupRingElement<Ctx> project_words(
    const Ctx& ctx, const GroupRingElement<FreeGroupContext>& a) {
  GroupRingElement<Ctx> out;
  for (const auto& [w, c] : a.terms) out.add_term(ctx.from_word(w), c);
  return out;
}

}  // namespace fixtrace
