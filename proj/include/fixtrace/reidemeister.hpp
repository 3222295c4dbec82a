#pragma once

#include "fixtrace/cover.hpp"
#include "fixtrace/group_ring.hpp"
#include "fixtrace/group_table.hpp"
#include "fixtrace/smith.hpp"
#include "fixtrace/word.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixtrace {

enum class SolverTier { FiniteExact, AbelianExact, Bounded };

inline std::string tier_name(SolverTier t) {
  switch (t) {
    case SolverTier::FiniteExact: return "finite-exact";
    case SolverTier::AbelianExact: return "abelian-exact";
    case SolverTier::Bounded: return "bounded";
  }
  return "?";
}

// A recorded merge of the bounded solver, with its witness: members satisfies
// to == fstar(witness) * from * witness^-1.
struct MergeWitness {
  Word from, to, witness;
};

// Twisted conjugacy classes of pi under y ~ fstar(a) * x * a^-1.
//
// finite-exact : exhaustive orbits over a group table
// abelian-exact: cokernel of [1 - F | R] via Smith normal form
// bounded      : union-find saturation with witnessed merges; may over-split
class ReidemeisterClassSet {
 public:
  SolverTier tier() const { return tier_; }
  bool exact() const { return exact_; }

  static ReidemeisterClassSet finite(const FiniteGroupTable& g,
                                     const std::vector<int>& twist) {
    if (!is_endomorphism(g, twist))
      throw std::invalid_argument("twist is not an endomorphism");
    ReidemeisterClassSet s;
    s.tier_ = SolverTier::FiniteExact;
    s.exact_ = true;
    s.table_ = std::make_shared<FiniteGroupTable>(g);
    s.classes_ = twisted_conjugacy_classes(*s.table_, twist);
    s.class_of_element_.assign(g.order(), -1);
    for (std::size_t c = 0; c < s.classes_.size(); ++c)
      for (int x : s.classes_[c]) s.class_of_element_[x] = static_cast<int>(c);
    return s;
  }

  // From a presentation and generator images. The abelian tier applies when
  // the presentation provably presents an abelian group; otherwise bounded
  // saturation over the seed words.
  static ReidemeisterClassSet from_presentation(const Pi1Presentation& p,
                                                const std::vector<Word>& fstar,
                                                int bound,
                                                const std::vector<Word>& seeds = {}) {
    if (static_cast<int>(fstar.size()) != p.num_generators())
      throw std::invalid_argument("generator image count mismatch");
    PiStructure st = classify_presentation(p);
    ReidemeisterClassSet s;
    s.gens_ = p.num_generators();
    s.fstar_ = fstar;
    if (st == PiStructure::Abelian ||
        (st == PiStructure::Free && p.num_generators() <= 1)) {
      s.tier_ = SolverTier::AbelianExact;
      s.exact_ = true;
      const int g = p.num_generators();
      const int r = p.abelianization.cols();
      // relator check for fstar: the image of every relator must die in the
      // abelianized group
      AbelianContext rel_ctx(p.abelianization);
      for (const Word& rel : p.relators)
        if (!(rel_ctx.from_word(rel.substitute(fstar)) == rel_ctx.identity()))
          throw std::invalid_argument("fstar does not respect the relators");
      IntMatrix combined(g, g + r);
      for (int i = 0; i < g; ++i) {
        std::vector<Int> col_img = fstar[i].exponent_vector(g);
        for (int j = 0; j < g; ++j)
          combined.at(j, i) = (i == j ? Int(1) : Int(0)) - col_img[j];
        for (int j2 = 0; j2 < r; ++j2)
          combined.at(i, g + j2) = p.abelianization.at(i, j2);
      }
      s.coker_ = std::make_shared<CokernelForm>(combined);
      return s;
    }
    s.tier_ = SolverTier::Bounded;
    s.exact_ = false;
    s.bound_ = bound;
    std::size_t cap_len = 2;
    for (const Word& w : seeds) cap_len = std::max(cap_len, w.length());
    for (const Word& w : fstar) cap_len = std::max(cap_len, w.length());
    s.length_cap_ = cap_len * (bound + 1) + 2 * bound + 2;
    s.add_element(Word::identity());
    for (const Word& w : seeds) s.add_element(w.reduced());
    s.saturate();
    return s;
  }

  // Canonical class representative of an element given as a word (abelian
  // and bounded tiers).
  Word class_representative(const Word& w) const {
    if (tier_ == SolverTier::AbelianExact) {
      std::vector<Int> lbl = coker_->label(w.exponent_vector(gens_));
      std::vector<Int> rep = coker_->representative(lbl);
      Word out;
      for (int i = 0; i < gens_; ++i) {
        long long e = static_cast<long long>(rep[i]);
        if (e != 0) out = out * Word::generator(i, static_cast<int>(e));
      }
      return out;
    }
    if (tier_ == SolverTier::Bounded) {
      Word r = w.reduced();
      auto it = ids_.find(r);
      if (it == ids_.end())
        throw std::invalid_argument("word outside the explored set");
      return min_member_[find(it->second)];
    }
    throw std::logic_error("word projection on a finite-table class set");
  }

  // Canonical representative for a table element (finite tier).
  int class_representative(int element) const {
    if (tier_ != SolverTier::FiniteExact)
      throw std::logic_error("element projection on a word class set");
    return classes_[class_of_element_[element]][0];
  }

  std::string representative_string(const Word& w) const {
    return class_representative(w).str();
  }

  bool same_class(const Word& a, const Word& b) const {
    return class_representative(a) == class_representative(b);
  }

  // Number of classes when finite: the finite tier counts orbits, the
  // abelian tier counts the cokernel order. nullopt when infinite or when
  // the bounded tier cannot certify a count.
  std::optional<Int> class_count() const {
    if (tier_ == SolverTier::FiniteExact) return Int(classes_.size());
    if (tier_ == SolverTier::AbelianExact && coker_->is_finite())
      return coker_->order();
    return std::nullopt;
  }

  const std::vector<std::vector<int>>& finite_classes() const { return classes_; }
  const std::vector<MergeWitness>& merges() const { return merges_; }
  const std::vector<Word>& fstar() const { return fstar_; }

 private:
  ReidemeisterClassSet() = default;

  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    parent_[b] = a;
    if (min_member_[b] < min_member_[a]) min_member_[a] = min_member_[b];
  }

  int add_element(const Word& w) {
    auto it = ids_.find(w);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(elements_.size());
    ids_.emplace(w, id);
    elements_.push_back(w);
    parent_.push_back(id);
    min_member_.push_back(w);
    return id;
  }

  // Repeatedly applies single-letter twisted conjugations. Chains of
  // single letters realize every conjugator up to the word-length bound.
  void saturate() {
    constexpr std::size_t kMaxElements = 60000;
    for (int round = 0; round < bound_; ++round) {
      const std::size_t count = elements_.size();
      for (std::size_t i = 0; i < count; ++i) {
        Word x = elements_[i];
        for (int gidx = 0; gidx < gens_; ++gidx)
          for (int sign : {+1, -1}) {
            Word a = Word::generator(gidx, sign);
            Word fa = sign > 0 ? fstar_[gidx] : fstar_[gidx].inverse();
            Word y = fa * x * a.inverse();
            if (y.length() > length_cap_) continue;
            auto it = ids_.find(y);
            if (it == ids_.end()) {
              if (elements_.size() >= kMaxElements) continue;
              int id = add_element(y);
              unite(static_cast<int>(i), id);
              merges_.push_back({x, y, a});
            } else if (find(it->second) != find(static_cast<int>(i))) {
              unite(static_cast<int>(i), it->second);
              merges_.push_back({x, y, a});
            }
          }
      }
    }
  }

  SolverTier tier_ = SolverTier::Bounded;
  bool exact_ = false;
  int gens_ = 0;
  std::vector<Word> fstar_;

  // finite tier
  std::shared_ptr<FiniteGroupTable> table_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_element_;

  // abelian tier
  std::shared_ptr<CokernelForm> coker_;

  // bounded tier
  int bound_ = 0;
  std::size_t length_cap_ = 0;
  std::vector<Word> elements_;
  std::map<Word, int> ids_;
  mutable std::vector<int> parent_;
  std::vector<Word> min_member_;
  std::vector<MergeWitness> merges_;
};

// Spec-facing constructor names.
inline ReidemeisterClassSet reidemeister_classes(const Pi1Presentation& p,
                                                 const std::vector<Word>& fstar,
                                                 int bound,
                                                 const std::vector<Word>& seeds = {}) {
  return ReidemeisterClassSet::from_presentation(p, fstar, bound, seeds);
}

inline ReidemeisterClassSet reidemeister_classes(const FiniteGroupTable& g,
                                                 const std::vector<int>& twist) {
  return ReidemeisterClassSet::finite(g, twist);
}

// Element of the free Z-module on Reidemeister classes.
struct TraceClass {
  std::string representative;
  Int coefficient;

  friend bool operator==(const TraceClass&, const TraceClass&) = default;
};

struct TraceValue {
  SolverTier tier = SolverTier::Bounded;
  bool exact = false;
  std::vector<TraceClass> classes;  // nonzero coefficients, sorted

  Int augmentation() const {
    Int s = 0;
    for (const TraceClass& c : classes) s += c.coefficient;
    return s;
  }

  friend bool operator==(const TraceValue& a, const TraceValue& b) {
    return a.classes == b.classes;
  }
};

// Collapses (word, coefficient) contributions onto Reidemeister classes.
inline TraceValue project_to_classes(
    const ReidemeisterClassSet& cls,
    const std::vector<std::pair<Word, Int>>& contributions) {
  std::map<Word, Int> acc;
  for (const auto& [w, c] : contributions) {
    if (c == 0) continue;
    acc[cls.class_representative(w)] += c;
  }
  TraceValue out;
  out.tier = cls.tier();
  out.exact = cls.exact();
  for (const auto& [rep, c] : acc)
    if (c != 0) out.classes.push_back({rep.str(), c});
  return out;
}

struct ReidemeisterResult {
  ReidemeisterClassSet classes;
  TraceValue trace;
  TwistedChainMap lift;
  EquivariantChainData chain_data;
};

// The (-1)^n-weighted diagonal of the twisted lift, pushed onto classes.
inline ReidemeisterResult reidemeister_trace(const SimplicialComplex& k,
                                             const SimplicialMap& f, int v0,
                                             int bound = 6) {
  SpanningTree t = spanning_tree(k, v0);
  EquivariantChainData chain = equivariant_boundary(k, t);
  TwistedChainMap lift = twisted_chain_lift(k, f, t, chain.presentation);

  std::vector<std::pair<Word, Int>> diag;
  for (int n = 0; n <= k.dim(); ++n) {
    const auto& m = lift.levels[n];
    for (int j = 0; j < m.cols(); ++j)
      for (const auto& [w, c] : m.at(j, j).terms)
        diag.push_back({w, (n % 2 == 0) ? c : Int(-c)});
  }
  std::vector<Word> seeds;
  for (const auto& [w, c] : diag) seeds.push_back(w);

  ReidemeisterClassSet cls = ReidemeisterClassSet::from_presentation(
      chain.presentation, lift.pi1_images, bound, seeds);
  TraceValue tv = project_to_classes(cls, diag);
  return ReidemeisterResult{std::move(cls), std::move(tv), std::move(lift),
                            std::move(chain)};
}

struct NielsenBound {
  long long count = 0;
  bool certified = false;
};

// Number of classes with nonzero coefficient. Bounded-tier class sets may
// over-split, so the count is certified only when the solver was exact.
inline NielsenBound nielsen_lower_bound(const TraceValue& r) {
  return {static_cast<long long>(r.classes.size()), r.exact};
}

}  // namespace fixtrace
