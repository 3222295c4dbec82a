#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixtrace {

// Finite group given by its full multiplication table.
struct FiniteGroupTable {
  std::vector<std::string> labels;       // element names, index order
  std::vector<std::vector<int>> table;   // table[a][b] = a*b
  int identity = -1;
  std::vector<int> inverse;

  int order() const { return static_cast<int>(table.size()); }
  int mul(int a, int b) const { return table[a][b]; }
  int inv(int a) const { return inverse[a]; }

  int index_of(const std::string& label) const {
    for (int i = 0; i < order(); ++i)
      if (labels[i] == label) return i;
    return -1;
  }
};

// Validates the group axioms by exhaustive scan. Returns an error message
// or nullopt when the table is a group.
inline std::optional<std::string> validate_group_table(FiniteGroupTable& g) {
  const int n = static_cast<int>(g.table.size());
  if (n == 0) return "empty table";
  if (static_cast<int>(g.labels.size()) != n) return "label count mismatch";
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(g.table[a].size()) != n) return "ragged table row";
    for (int b = 0; b < n; ++b)
      if (g.table[a][b] < 0 || g.table[a][b] >= n)
        return "table entry out of range";
  }
  g.identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      ok = g.table[e][a] == a && g.table[a][e] == a;
    if (ok) {
      g.identity = e;
      break;
    }
  }
  if (g.identity < 0) return "no identity element";
  g.inverse.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (g.table[a][b] == g.identity && g.table[b][a] == g.identity) {
        g.inverse[a] = b;
        break;
      }
    if (g.inverse[a] < 0) return "element without inverse: " + g.labels[a];
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.table[g.table[a][b]][c] != g.table[a][g.table[b][c]])
          return "associativity fails at (" + g.labels[a] + "," + g.labels[b] +
                 "," + g.labels[c] + ")";
  return std::nullopt;
}

inline FiniteGroupTable make_table(std::vector<std::string> labels,
                                   std::vector<std::vector<int>> table) {
  FiniteGroupTable g;
  g.labels = std::move(labels);
  g.table = std::move(table);
  if (auto err = validate_group_table(g))
    throw std::invalid_argument("invalid group table: " + *err);
  return g;
}

// Orbits of x under x -> twist(a) * x * a^-1, exhaustively over all a.
// With twist = identity these are ordinary conjugacy classes. Classes are
// listed by least representative, members ascending.
inline std::vector<std::vector<int>> twisted_conjugacy_classes(
    const FiniteGroupTable& g, const std::vector<int>& twist) {
  const int n = g.order();
  std::vector<int> cls(n, -1);
  std::vector<std::vector<int>> out;
  for (int x = 0; x < n; ++x) {
    if (cls[x] >= 0) continue;
    std::vector<int> members;
    std::vector<int> stack{x};
    cls[x] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int y = stack.back();
      stack.pop_back();
      members.push_back(y);
      for (int a = 0; a < n; ++a) {
        int z = g.mul(g.mul(twist[a], y), g.inv(a));
        if (cls[z] < 0) {
          cls[z] = cls[x];
          stack.push_back(z);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

inline std::vector<int> identity_endomorphism(const FiniteGroupTable& g) {
  std::vector<int> id(g.order());
  for (int i = 0; i < g.order(); ++i) id[i] = i;
  return id;
}

inline std::vector<std::vector<int>> conjugacy_classes(
    const FiniteGroupTable& g) {
  return twisted_conjugacy_classes(g, identity_endomorphism(g));
}

// Checks images[a*b] == images[a]*images[b] for all pairs.
inline bool is_endomorphism(const FiniteGroupTable& g,
                            const std::vector<int>& images) {
  if (static_cast<int>(images.size()) != g.order()) return false;
  for (int v : images)
    if (v < 0 || v >= g.order()) return false;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (images[g.mul(a, b)] != g.mul(images[a], images[b])) return false;
  return true;
}

// --- table builders used by fixtures and tests ---

inline FiniteGroupTable cyclic_group(int n) {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    labels.push_back(i == 0 ? "e" : "t" + std::to_string(i));
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  }
  return make_table(std::move(labels), std::move(t));
}

namespace detail {
// Composition of permutations given as images: (p*q)(x) = p(q(x)).
inline std::vector<int> perm_mul(const std::vector<int>& p,
                                 const std::vector<int>& q) {
  std::vector<int> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
  return r;
}

inline FiniteGroupTable table_from_permutations(
    std::vector<std::string> labels, std::vector<std::vector<int>> perms) {
  const int n = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> prod = perm_mul(perms[a], perms[b]);
      int idx = -1;
      for (int c = 0; c < n; ++c)
        if (perms[c] == prod) {
          idx = c;
          break;
        }
      if (idx < 0) throw std::logic_error("permutation set not closed");
      t[a][b] = idx;
    }
  return make_table(std::move(labels), std::move(t));
}
}  // namespace detail

inline FiniteGroupTable symmetric_group_3() {
  return detail::table_from_permutations(
      {"e", "s12", "s13", "s23", "c123", "c132"},
      {{0, 1, 2},    // e
       {1, 0, 2},    // (12)
       {2, 1, 0},    // (13)
       {0, 2, 1},    // (23)
       {1, 2, 0},    // (123): 0->1,1->2,2->0
       {2, 0, 1}});  // (132)
}

// Dihedral group of order 8 acting on the square 0123.
inline FiniteGroupTable dihedral_group_8() {
  std::vector<std::vector<int>> perms;
  std::vector<std::string> labels;
  std::vector<int> r = {1, 2, 3, 0};
  std::vector<int> cur = {0, 1, 2, 3};
  for (int i = 0; i < 4; ++i) {
    perms.push_back(cur);
    labels.push_back(i == 0 ? "e" : "r" + std::to_string(i));
    cur = detail::perm_mul(r, cur);
  }
  std::vector<int> s = {1, 0, 3, 2};  // reflection
  cur = s;
  for (int i = 0; i < 4; ++i) {
    perms.push_back(cur);
    labels.push_back("s" + std::to_string(i));
    cur = detail::perm_mul(r, cur);
  }
  return detail::table_from_permutations(std::move(labels), std::move(perms));
}

// Quaternion group {±1, ±i, ±j, ±k} with indices 0..7.
inline FiniteGroupTable quaternion_group_8() {
  // index: 0:1, 1:-1, 2:i, 3:-i, 4:j, 5:-j, 6:k, 7:-k
  auto neg = [](int x) { return x ^ 1; };
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  auto unit_mul = [&](int a, int b) -> int {
    // multiplication on {1,i,j,k} = {0,2,4,6} with sign handling
    int sa = a & 1, sb = b & 1;
    int ua = a & ~1, ub = b & ~1;
    int res;
    if (ua == 0)
      res = ub;
    else if (ub == 0)
      res = ua;
    else if (ua == ub)
      res = 1;  // i*i = j*j = k*k = -1
    else {
      // i*j=k, j*k=i, k*i=j and anticommutativity
      if (ua == 2 && ub == 4) res = 6;
      else if (ua == 4 && ub == 6) res = 2;
      else if (ua == 6 && ub == 2) res = 4;
      else if (ua == 4 && ub == 2) res = neg(6);
      else if (ua == 6 && ub == 4) res = neg(2);
      else res = neg(4);  // ua == 2 && ub == 6
    }
    if (sa ^ sb) res = neg(res);
    return res;
  };
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) t[a][b] = unit_mul(a, b);
  return make_table({"1", "-1", "i", "-i", "j", "-j", "k", "-k"}, std::move(t));
}

inline FiniteGroupTable klein_four_group() {
  return make_table({"e", "a", "b", "ab"}, {{0, 1, 2, 3},
                                            {1, 0, 3, 2},
                                            {2, 3, 0, 1},
                                            {3, 2, 1, 0}});
}

struct ProductGroup {
  FiniteGroupTable table;
  std::vector<int> embed_left;   // a -> (a, e)
  std::vector<int> embed_right;  // b -> (e, b)
};

inline ProductGroup direct_product(const FiniteGroupTable& a,
                                   const FiniteGroupTable& b) {
  const int na = a.order(), nb = b.order();
  auto pack = [nb](int x, int y) { return x * nb + y; };
  std::vector<std::string> labels;
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < nb; ++y) {
      labels.push_back("(" + a.labels[x] + "," + b.labels[y] + ")");
      for (int x2 = 0; x2 < na; ++x2)
        for (int y2 = 0; y2 < nb; ++y2)
          t[pack(x, y)][pack(x2, y2)] = pack(a.mul(x, x2), b.mul(y, y2));
    }
  ProductGroup out{make_table(std::move(labels), std::move(t)), {}, {}};
  for (int x = 0; x < na; ++x) out.embed_left.push_back(pack(x, b.identity));
  for (int y = 0; y < nb; ++y) out.embed_right.push_back(pack(a.identity, y));
  return out;
}

}  // namespace fixtrace
