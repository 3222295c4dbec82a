#pragma once

#include "fixtrace/group_ring.hpp"
#include "fixtrace/simplicial.hpp"
#include "fixtrace/word.hpp"

#include <map>
#include <queue>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fixtrace {

// Breadth-first spanning tree with per-vertex base paths.
struct SpanningTree {
  int base = 0;
  std::vector<int> parent;                 // -1 at the base
  std::vector<std::vector<int>> path;      // vertex list base..v inclusive
  std::set<std::pair<int, int>> tree_edges;  // stored as (min,max)

  bool is_tree_edge(int u, int v) const {
    return tree_edges.count({std::min(u, v), std::max(u, v)}) > 0;
  }
};

// Deterministic BFS rooted at v0, exploring vertices in index order.
inline SpanningTree spanning_tree(const SimplicialComplex& k, int v0) {
  const int n = k.vertex_count();
  if (v0 < 0 || v0 >= n) throw std::invalid_argument("base vertex out of range");
  SpanningTree t;
  t.base = v0;
  t.parent.assign(n, -2);
  t.parent[v0] = -1;
  std::queue<int> q;
  q.push(v0);
  int reached = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : k.neighbors(u)) {
      if (t.parent[w] != -2) continue;
      t.parent[w] = u;
      t.tree_edges.insert({std::min(u, w), std::max(u, w)});
      ++reached;
      q.push(w);
    }
  }
  if (reached != n) throw std::invalid_argument("complex is not connected");
  t.path.assign(n, {});
  for (int v = 0; v < n; ++v) {
    std::vector<int> rev;
    for (int u = v; u != -1; u = t.parent[u]) rev.push_back(u);
    t.path[v].assign(rev.rbegin(), rev.rend());
  }
  return t;
}

// Edge-path presentation of the fundamental group: one generator per
// non-tree edge, one relator per 2-simplex.
struct Pi1Presentation {
  std::vector<std::pair<int, int>> generator_edges;  // (min,max), sorted
  std::map<std::pair<int, int>, int> generator_index;
  std::vector<Word> relators;
  IntMatrix abelianization;  // generators x relators, exponent sums

  int num_generators() const {
    return static_cast<int>(generator_edges.size());
  }
};

// Tree-trivialized word of a single edge traversal u -> v.
inline Word edge_word(const SpanningTree& t, const Pi1Presentation& p, int u,
                      int v) {
  if (u == v) return Word::identity();
  if (t.is_tree_edge(u, v)) return Word::identity();
  auto it = p.generator_index.find({std::min(u, v), std::max(u, v)});
  if (it == p.generator_index.end())
    throw std::logic_error("edge is neither a tree edge nor a generator");
  return Word::generator(it->second, u < v ? 1 : -1);
}

// Tree-trivialized word of an edge path (consecutive equal vertices are
// degenerate segments and contribute the identity).
inline Word path_word(const SpanningTree& t, const Pi1Presentation& p,
                      const std::vector<int>& vertices) {
  Word w;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    w = w * edge_word(t, p, vertices[i], vertices[i + 1]);
  return w;
}

inline Pi1Presentation pi1_presentation(const SimplicialComplex& k,
                                        const SpanningTree& t) {
  Pi1Presentation p;
  if (k.dim() >= 1)
    for (const auto& e : k.simplices[1]) {
      std::pair<int, int> key{e[0], e[1]};
      if (t.tree_edges.count(key)) continue;
      p.generator_index[key] = static_cast<int>(p.generator_edges.size());
      p.generator_edges.push_back(key);
    }
  if (k.dim() >= 2)
    for (const auto& s : k.simplices[2]) {
      // boundary loop a -> b -> c -> a
      Word r = edge_word(t, p, s[0], s[1]) * edge_word(t, p, s[1], s[2]) *
               edge_word(t, p, s[2], s[0]);
      p.relators.push_back(r);
    }
  p.abelianization = IntMatrix(p.num_generators(),
                               static_cast<int>(p.relators.size()));
  for (std::size_t j = 0; j < p.relators.size(); ++j) {
    std::vector<Int> e = p.relators[j].exponent_vector(p.num_generators());
    for (int i = 0; i < p.num_generators(); ++i)
      p.abelianization.at(i, static_cast<int>(j)) = e[i];
  }
  return p;
}

// What the presentation lets us decide exactly.
enum class PiStructure { Free, Abelian, Unknown };

namespace detail {
// True when r equals w up to cyclic rotation and inversion.
inline bool cyclically_equal(const Word& r, const Word& w) {
  for (const Word& base : {r, r.inverse()}) {
    const auto& ls = base.letters();
    const std::size_t n = ls.size();
    if (n != w.length()) continue;
    for (std::size_t s = 0; s < std::max<std::size_t>(n, 1); ++s) {
      std::vector<Letter> rot;
      for (std::size_t i = 0; i < n; ++i) rot.push_back(ls[(s + i) % n]);
      if (Word(rot).reduced() == w) return true;
    }
  }
  return false;
}
}  // namespace detail

// Free when there are no relators; provably abelian when each generator
// pair's commutator appears among the relators (or there is at most one
// generator); Unknown otherwise. The Unknown verdict is honest: the engine
// then certifies equalities only after augmentation.
inline PiStructure classify_presentation(const Pi1Presentation& p) {
  if (p.relators.empty()) return PiStructure::Free;
  if (p.num_generators() <= 1) return PiStructure::Abelian;
  for (int i = 0; i < p.num_generators(); ++i)
    for (int j = i + 1; j < p.num_generators(); ++j) {
      Word c = Word::generator(i) * Word::generator(j) *
               Word::generator(i, -1) * Word::generator(j, -1);
      bool found = false;
      for (const Word& r : p.relators)
        if (detail::cyclically_equal(r, c)) {
          found = true;
          break;
        }
      if (!found) return PiStructure::Unknown;
    }
  return PiStructure::Abelian;
}

// Boundary matrices of the universal-cover chain complex as matrices over
// Z[pi], entries stored as free words in the presentation's generators.
struct EquivariantChainData {
  SpanningTree tree;
  Pi1Presentation presentation;
  PiStructure structure = PiStructure::Unknown;
  // boundaries[n] for n in 1..dim; boundaries[0] is an empty placeholder.
  std::vector<RingMatrix<FreeGroupContext>> boundaries;
};

// The based lift of a cell is reached by lifting the tree path of its lead
// vertex. With that convention the face opposite the lead vertex picks up
// the deck element of the edge (lead, second); every other face lifts on
// the nose.
inline EquivariantChainData equivariant_boundary(const SimplicialComplex& k,
                                                 const SpanningTree& t) {
  EquivariantChainData data;
  data.tree = t;
  data.presentation = pi1_presentation(k, t);
  data.structure = classify_presentation(data.presentation);
  data.boundaries.resize(k.dim() + 1);
  for (int n = 1; n <= k.dim(); ++n) {
    RingMatrix<FreeGroupContext> m(k.count(n - 1), k.count(n));
    for (int j = 0; j < k.count(n); ++j) {
      const std::vector<int>& s = k.simplices[n][j];
      for (int i = 0; i <= n; ++i) {
        std::vector<int> face;
        for (int q = 0; q <= n; ++q)
          if (q != i) face.push_back(s[q]);
        int row = k.index_of(face);
        Word g = (i == 0) ? edge_word(t, data.presentation, s[0], s[1])
                          : Word::identity();
        Int sign = (i % 2 == 0) ? 1 : -1;
        m.at(row, j) = gr_add(m.at(row, j),
                              GroupRingElement<FreeGroupContext>::of(g, sign));
      }
    }
    data.boundaries[n] = std::move(m);
  }
  return data;
}

// Word of the f-image of an edge path.
inline Word image_path_word(const SpanningTree& t, const Pi1Presentation& p,
                            const SimplicialMap& f,
                            const std::vector<int>& vertices) {
  Word w;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    w = w * edge_word(t, p, f.vertex_map[vertices[i]], f.vertex_map[vertices[i + 1]]);
  return w;
}

// Images of the presentation generators under f_*: read the image of each
// generator loop through the tree trivialization.
inline std::vector<Word> induced_pi1_map(const SimplicialComplex& k,
                                         const SimplicialMap& f,
                                         const SpanningTree& t,
                                         const Pi1Presentation& p) {
  if (!f.is_self_map()) throw std::invalid_argument("not a self-map");
  if (f.vertex_map[t.base] != t.base)
    throw std::invalid_argument("basepoint not fixed by the map");
  std::vector<Word> images;
  for (const auto& [u, v] : p.generator_edges) {
    Word w = image_path_word(t, p, f, t.path[u]);
    w = w * edge_word(t, p, f.vertex_map[u], f.vertex_map[v]);
    std::vector<int> back(t.path[v].rbegin(), t.path[v].rend());
    w = w * image_path_word(t, p, f, back);
    images.push_back(w);
  }
  return images;
}

// Square matrices over Z[pi] expressing the twisted lift of f in the based
// bases, one per dimension.
struct TwistedChainMap {
  std::vector<RingMatrix<FreeGroupContext>> levels;  // n = 0..dim
  std::vector<Word> pi1_images;
};

inline TwistedChainMap twisted_chain_lift(const SimplicialComplex& k,
                                          const SimplicialMap& f,
                                          const SpanningTree& t,
                                          const Pi1Presentation& p) {
  if (!f.is_self_map()) throw std::invalid_argument("not a self-map");
  if (validate_simplicial_map(f))
    throw std::invalid_argument("invalid simplicial map");
  if (f.vertex_map[t.base] != t.base)
    throw std::invalid_argument("basepoint not fixed by the map");
  TwistedChainMap out;
  out.pi1_images = induced_pi1_map(k, f, t, p);
  out.levels.resize(k.dim() + 1);
  for (int n = 0; n <= k.dim(); ++n) {
    RingMatrix<FreeGroupContext> m(k.count(n), k.count(n));
    for (int j = 0; j < k.count(n); ++j) {
      const std::vector<int>& s = k.simplices[n][j];
      auto [img, sign] = map_simplex(f, s);
      if (sign == 0) continue;  // collapsed simplex
      int row = k.index_of(img);
      // Deck element correcting the lift: follow the image of the lead
      // vertex's tree path, then walk inside the image simplex from the
      // lead vertex's image to the image's own lead vertex.
      Word g = image_path_word(t, p, f, t.path[s[0]]);
      g = g * edge_word(t, p, f.vertex_map[s[0]], img[0]);
      m.at(row, j) = GroupRingElement<FreeGroupContext>::of(g, sign);
    }
    out.levels[n] = std::move(m);
  }
  return out;
}

// f_* applied entrywise to a matrix of free words.
inline RingMatrix<FreeGroupContext> apply_pi1_map(
    const RingMatrix<FreeGroupContext>& m, const std::vector<Word>& images) {
  return rm_map(m, [&](const Word& w) { return w.substitute(images); });
}

}  // namespace fixtrace
