#pragma once

#include "fixtrace/int_matrix.hpp"
#include "fixtrace/smith.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixtrace {

// Finite abstract simplicial complex. Simplices are strictly increasing
// vertex-index tuples, stored per dimension in sorted order, closed under
// faces by construction.
struct SimplicialComplex {
  std::vector<std::string> vertex_labels;
  // simplices[d] = sorted list of d-simplices (each a sorted index tuple).
  std::vector<std::vector<std::vector<int>>> simplices;

  int dim() const { return static_cast<int>(simplices.size()) - 1; }
  int vertex_count() const { return static_cast<int>(vertex_labels.size()); }

  int count(int d) const {
    if (d < 0 || d > dim()) return 0;
    return static_cast<int>(simplices[d].size());
  }

  long long total_simplices() const {
    long long t = 0;
    for (const auto& level : simplices) t += static_cast<long long>(level.size());
    return t;
  }

  // Index of a simplex within its dimension, or -1.
  int index_of(const std::vector<int>& s) const {
    int d = static_cast<int>(s.size()) - 1;
    if (d < 0 || d > dim()) return -1;
    const auto& level = simplices[d];
    auto it = std::lower_bound(level.begin(), level.end(), s);
    if (it != level.end() && *it == s) return static_cast<int>(it - level.begin());
    return -1;
  }

  bool has_simplex(const std::vector<int>& s) const { return index_of(s) >= 0; }

  int vertex_index(const std::string& label) const {
    for (int i = 0; i < vertex_count(); ++i)
      if (vertex_labels[i] == label) return i;
    return -1;
  }

  // Edges at a vertex, as the other endpoint's index.
  std::vector<int> neighbors(int v) const {
    std::vector<int> out;
    if (dim() < 1) return out;
    for (const auto& e : simplices[1]) {
      if (e[0] == v) out.push_back(e[1]);
      else if (e[1] == v) out.push_back(e[0]);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

// Face closure of a list of maximal simplices (given by vertex indices).
// Throws on a repeated vertex within a tuple.
inline SimplicialComplex close_complex(std::vector<std::string> vertex_labels,
                                       const std::vector<std::vector<int>>& maximal) {
  SimplicialComplex k;
  k.vertex_labels = std::move(vertex_labels);
  std::set<std::vector<int>> all;
  for (const auto& raw : maximal) {
    std::vector<int> s = raw;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (s[i] == s[i + 1])
        throw std::invalid_argument("repeated vertex in simplex");
    for (int v : s)
      if (v < 0 || v >= k.vertex_count())
        throw std::invalid_argument("vertex index out of range");
    // every subset of a simplex is a face; enumerate by bitmask
    int n = static_cast<int>(s.size());
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> face;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) face.push_back(s[i]);
      all.insert(std::move(face));
    }
  }
  for (int v = 0; v < k.vertex_count(); ++v) all.insert({v});
  int maxd = 0;
  for (const auto& s : all) maxd = std::max(maxd, static_cast<int>(s.size()) - 1);
  k.simplices.assign(maxd + 1, {});
  for (const auto& s : all)
    k.simplices[s.size() - 1].push_back(s);
  for (auto& level : k.simplices) std::sort(level.begin(), level.end());
  return k;
}

// Convenience overload: vertex labels v0..v{n-1}.
inline SimplicialComplex close_complex(int vertex_count,
                                       const std::vector<std::vector<int>>& maximal) {
  std::vector<std::string> labels;
  for (int i = 0; i < vertex_count; ++i) labels.push_back("v" + std::to_string(i));
  return close_complex(std::move(labels), maximal);
}

// Standard alternating-face boundary in the increasing-vertex orientation.
inline IntMatrix boundary_matrix(const SimplicialComplex& k, int n) {
  if (n < 1 || n > k.dim()) throw std::out_of_range("dimension out of range");
  IntMatrix m(k.count(n - 1), k.count(n));
  for (int j = 0; j < k.count(n); ++j) {
    const std::vector<int>& s = k.simplices[n][j];
    for (int i = 0; i <= n; ++i) {
      std::vector<int> face;
      for (int t = 0; t <= n; ++t)
        if (t != i) face.push_back(s[t]);
      int row = k.index_of(face);
      m.at(row, j) += (i % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

inline long long euler_characteristic(const SimplicialComplex& k) {
  long long chi = 0;
  for (int d = 0; d <= k.dim(); ++d)
    chi += (d % 2 == 0) ? k.count(d) : -k.count(d);
  return chi;
}

struct BettiData {
  std::vector<long long> betti;            // per dimension 0..dim
  std::vector<std::vector<Int>> torsion;   // per dimension, factors > 1
};

inline BettiData betti_numbers(const SimplicialComplex& k) {
  BettiData out;
  int d = k.dim();
  std::vector<int> rank(d + 2, 0);  // rank[n] = rank of boundary_n, n in 1..d
  std::vector<std::vector<Int>> tor(d + 2);
  for (int n = 1; n <= d; ++n) {
    SmithDecomposition s = smith_normal_form(boundary_matrix(k, n));
    rank[n] = s.rank;
    for (const Int& f : s.invariant_factors)
      if (f > 1) tor[n].push_back(f);
  }
  for (int n = 0; n <= d; ++n) {
    long long b = k.count(n) - rank[n] - rank[n + 1];
    out.betti.push_back(b);
    out.torsion.push_back(tor[n + 1]);  // torsion of H_n comes from boundary_{n+1}
  }
  return out;
}

inline bool is_connected(const SimplicialComplex& k) {
  int n = k.vertex_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : k.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == n;
}

// Simplicial map: a total vertex function whose simplex images span simplices.
struct SimplicialMap {
  const SimplicialComplex* source = nullptr;
  const SimplicialComplex* target = nullptr;
  std::vector<int> vertex_map;

  bool is_self_map() const { return source == target; }
  int operator()(int v) const { return vertex_map[v]; }
};

struct MapViolation {
  std::vector<int> simplex;  // the first offending simplex
  std::vector<int> image_set;
};

// Confirms the simplex-image condition; reports the first offender.
inline std::optional<MapViolation> validate_simplicial_map(const SimplicialMap& f) {
  const SimplicialComplex& src = *f.source;
  const SimplicialComplex& tgt = *f.target;
  if (static_cast<int>(f.vertex_map.size()) != src.vertex_count())
    return MapViolation{{}, {}};
  for (int v : f.vertex_map)
    if (v < 0 || v >= tgt.vertex_count()) return MapViolation{{}, {}};
  for (int d = 1; d <= src.dim(); ++d)
    for (const auto& s : src.simplices[d]) {
      std::set<int> img;
      for (int v : s) img.insert(f.vertex_map[v]);
      std::vector<int> image(img.begin(), img.end());
      if (!tgt.has_simplex(image))
        return MapViolation{s, image};
    }
  return std::nullopt;
}

// Image simplex of s (sorted, deduplicated) and the sign of the sorting
// permutation; degenerate images get sign 0.
inline std::pair<std::vector<int>, int> map_simplex(const SimplicialMap& f,
                                                    const std::vector<int>& s) {
  std::vector<int> img;
  for (int v : s) img.push_back(f.vertex_map[v]);
  // parity of the permutation sorting img, 0 if a value repeats
  int sign = 1;
  std::vector<int> sorted = img;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (sorted[i] == sorted[j]) return {{}, 0};
      if (sorted[i] > sorted[j]) {
        std::swap(sorted[i], sorted[j]);
        sign = -sign;
      }
    }
  return {sorted, sign};
}

// Chain map in dimension n induced by f (degenerate images contribute 0).
inline IntMatrix induced_chain_map(const SimplicialMap& f, int n) {
  if (validate_simplicial_map(f))
    throw std::invalid_argument("invalid simplicial map");
  const SimplicialComplex& src = *f.source;
  const SimplicialComplex& tgt = *f.target;
  int srows = tgt.count(n);
  int scols = src.count(n);
  IntMatrix m(srows, scols);
  for (int j = 0; j < scols; ++j) {
    auto [img, sign] = map_simplex(f, src.simplices[n][j]);
    if (sign == 0) continue;
    int row = tgt.index_of(img);
    if (row < 0) throw std::logic_error("image simplex missing from target");
    m.at(row, j) = sign;
  }
  return m;
}

}  // namespace fixtrace
