#pragma once

// Randomized-input generators and test-only utilities shared by the
// property suites and the acceptance runner.

#include "fixtrace/bicat.hpp"
#include "fixtrace/simplicial.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace testgen {

using fixtrace::close_complex;
using fixtrace::Int;
using fixtrace::RElem;
using fixtrace::RMat;
using fixtrace::SimplicialComplex;
using fixtrace::SimplicialMap;

using Rng = std::mt19937_64;

inline int pick(Rng& rng, int lo, int hi) {  // inclusive bounds
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Connected random complex with at most `max_total` simplices after
// closure. Connectivity comes from a random spanning path; extra maximal
// simplices are sprinkled on top.
inline SimplicialComplex random_complex(Rng& rng, int max_vertices,
                                        long long max_total) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    int n = pick(rng, 2, max_vertices);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::vector<int>> maximal;
    for (int i = 0; i + 1 < n; ++i) maximal.push_back({order[i], order[i + 1]});
    int extras = pick(rng, 0, 4);
    for (int e = 0; e < extras; ++e) {
      if (pick(rng, 0, 1) == 0) {
        maximal.push_back({pick(rng, 0, n - 1), pick(rng, 0, n - 1)});
      } else {
        maximal.push_back(
            {pick(rng, 0, n - 1), pick(rng, 0, n - 1), pick(rng, 0, n - 1)});
      }
      auto& s = maximal.back();
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      if (s.size() < 2) maximal.pop_back();
    }
    SimplicialComplex k = close_complex(n, maximal);
    if (k.total_simplices() <= max_total && fixtrace::is_connected(k)) return k;
  }
  return close_complex(2, {{0, 1}});
}

// Random simplicial self-map fixing vertex v0: vertices are assigned in
// BFS order, each image drawn from the candidates that keep every fully
// assigned simplex spanning. Falls back to the constant map at v0.
inline std::vector<int> random_selfmap_fixing(Rng& rng,
                                              const SimplicialComplex& k,
                                              int v0) {
  const int n = k.vertex_count();
  std::vector<int> bfs;
  {
    std::vector<char> seen(n, 0);
    std::vector<int> queue{v0};
    seen[v0] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      bfs.push_back(queue[h]);
      for (int w : k.neighbors(queue[h]))
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    }
  }
  for (int attempt = 0; attempt < 24; ++attempt) {
    std::vector<int> img(n, -1);
    img[v0] = v0;
    bool dead = false;
    for (int u : bfs) {
      if (u == v0) continue;
      std::vector<int> cands(n);
      std::iota(cands.begin(), cands.end(), 0);
      std::shuffle(cands.begin(), cands.end(), rng);
      int chosen = -1;
      for (int w : cands) {
        img[u] = w;
        bool ok = true;
        for (int d = 1; d <= k.dim() && ok; ++d)
          for (const auto& s : k.simplices[d]) {
            if (std::find(s.begin(), s.end(), u) == s.end()) continue;
            std::vector<int> image;
            bool full = true;
            for (int v : s) {
              if (img[v] < 0) {
                full = false;
                break;
              }
              image.push_back(img[v]);
            }
            if (!full) continue;
            std::sort(image.begin(), image.end());
            image.erase(std::unique(image.begin(), image.end()), image.end());
            if (!k.has_simplex(image)) {
              ok = false;
              break;
            }
          }
        if (ok) {
          chosen = w;
          break;
        }
        img[u] = -1;
      }
      if (chosen < 0) {
        dead = true;
        break;
      }
    }
    if (!dead) return img;
  }
  return std::vector<int>(n, v0);  // constant map, always simplicial
}

// One round of barycentric subdivision (test utility): subdivision
// vertices are the simplices of k, maximal simplices are the maximal
// flags of the face poset.
inline SimplicialComplex barycentric_subdivision(const SimplicialComplex& k) {
  std::map<std::vector<int>, int> id;
  std::vector<std::string> labels;
  for (int d = 0; d <= k.dim(); ++d)
    for (const auto& s : k.simplices[d]) {
      id[s] = static_cast<int>(labels.size());
      std::string l = "b";
      for (int v : s) l += "_" + std::to_string(v);
      labels.push_back(l);
    }
  std::vector<std::vector<int>> maximal;
  std::vector<int> chain;
  // extend the flag ending at simplex s by one-vertex-larger cofaces
  auto extend = [&](auto&& self, const std::vector<int>& s) -> void {
    chain.push_back(id.at(s));
    bool maximal_here = true;
    int d = static_cast<int>(s.size());  // next dimension's tuple size - 1
    if (d <= k.dim()) {
      for (const auto& t : k.simplices[d]) {
        bool covers = std::includes(t.begin(), t.end(), s.begin(), s.end());
        if (covers) {
          maximal_here = false;
          self(self, t);
        }
      }
    }
    if (maximal_here) maximal.push_back(chain);
    chain.pop_back();
  };
  for (const auto& v : k.simplices[0]) extend(extend, v);
  return close_complex(std::move(labels), maximal);
}

// --- group-ring randomizers ---

inline RElem random_ring_element(Rng& rng, const fixtrace::FiniteGroupTable& g,
                                 int max_terms = 3, int max_coeff = 2) {
  RElem x;
  int terms = pick(rng, 0, max_terms);
  for (int i = 0; i < terms; ++i) {
    int c = pick(rng, -max_coeff, max_coeff);
    x.add_term(pick(rng, 0, g.order() - 1), Int(c));
  }
  return x;
}

inline RMat random_ring_matrix(Rng& rng, const fixtrace::FiniteGroupTable& g,
                               int n, int max_terms = 3, int max_coeff = 2) {
  RMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = random_ring_element(rng, g, max_terms, max_coeff);
  return m;
}

// Random invertible matrix over Z[G] together with its exact inverse:
// a product of transvections and trivial-unit (+-g) diagonal scalings.
inline std::pair<RMat, RMat> random_invertible(Rng& rng,
                                               const fixtrace::RingSpec& ring,
                                               int n, int ops = 4) {
  fixtrace::TableContext ctx = ring.ctx();
  RMat p = RMat::identity(ctx, n);
  RMat pinv = RMat::identity(ctx, n);
  for (int step = 0; step < ops; ++step) {
    if (n >= 2 && pick(rng, 0, 2) != 0) {
      int i = pick(rng, 0, n - 1);
      int j = pick(rng, 0, n - 1);
      if (i == j) continue;
      RElem r = random_ring_element(rng, ring.group, 2, 1);
      RMat e = RMat::identity(ctx, n);
      RMat einv = RMat::identity(ctx, n);
      e.at(i, j) = r;
      einv.at(i, j) = fixtrace::gr_neg(r);
      p = rm_mul(ctx, p, e);
      pinv = rm_mul(ctx, einv, pinv);
    } else {
      int i = pick(rng, 0, n - 1);
      int g = pick(rng, 0, ring.group.order() - 1);
      int sign = pick(rng, 0, 1) ? 1 : -1;
      RMat e = RMat::identity(ctx, n);
      RMat einv = RMat::identity(ctx, n);
      e.at(i, i) = RElem::of(g, sign);
      einv.at(i, i) = RElem::of(ring.group.inv(g), sign);
      p = rm_mul(ctx, p, e);
      pinv = rm_mul(ctx, einv, pinv);
    }
  }
  return {p, pinv};
}

}  // namespace testgen
