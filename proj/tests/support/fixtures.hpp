#pragma once

// Programmatic copies of the standard fixtures, so unit tests don't need
// file I/O. The JSON files under fixtures/ mirror these.

#include "fixtrace/embedding.hpp"
#include "fixtrace/simplicial.hpp"

#include <vector>

namespace fixtures {

using fixtrace::EmbeddingData;
using fixtrace::Rat;
using fixtrace::Retraction;
using fixtrace::SimplicialComplex;
using fixtrace::SimplicialMap;

inline SimplicialComplex point_complex() {
  return fixtrace::close_complex(1, {{0}});
}

inline SimplicialComplex hollow_triangle() {
  return fixtrace::close_complex(3, {{0, 1}, {1, 2}, {0, 2}});
}

inline SimplicialComplex solid_triangle() {
  return fixtrace::close_complex(3, {{0, 1, 2}});
}

inline SimplicialComplex hexagon() {
  return fixtrace::close_complex(
      6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
}

inline std::vector<int> hexagon_flip_map() { return {0, 5, 4, 3, 2, 1}; }
inline std::vector<int> hexagon_rotation_map() { return {1, 2, 3, 4, 5, 0}; }

inline SimplicialComplex wedge_two_circles() {
  return fixtrace::close_complex(5,
                                 {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}});
}

inline SimplicialComplex octahedron() {
  return fixtrace::close_complex(6, {{0, 1, 2},
                                     {0, 2, 3},
                                     {0, 3, 4},
                                     {0, 1, 4},
                                     {5, 1, 2},
                                     {5, 2, 3},
                                     {5, 3, 4},
                                     {5, 1, 4}});
}

inline std::vector<int> octahedron_antipodal_map() { return {5, 3, 4, 1, 2, 0}; }

inline SimplicialComplex torus7() {
  std::vector<std::vector<int>> faces;
  for (int i = 0; i < 7; ++i) {
    faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
    faces.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return fixtrace::close_complex(7, faces);
}

inline SimplicialComplex projective_plane() {
  return fixtrace::close_complex(6, {{0, 1, 2},
                                     {0, 1, 3},
                                     {0, 2, 4},
                                     {0, 3, 5},
                                     {0, 4, 5},
                                     {1, 2, 5},
                                     {1, 3, 4},
                                     {1, 4, 5},
                                     {2, 3, 4},
                                     {2, 3, 5}});
}

// Interior-vertex cone over a triangle: the star of v0 is the whole disc.
inline SimplicialComplex triangle_star() {
  return fixtrace::close_complex(4, {{0, 1, 2}, {0, 2, 3}, {0, 1, 3}});
}

inline EmbeddingData hexagon_embedding() {
  EmbeddingData e;
  e.dim = 2;
  e.retraction = Retraction::Radial;
  e.coords = {{Rat(2), Rat(0)},  {Rat(1), Rat(2)},   {Rat(-1), Rat(2)},
              {Rat(-2), Rat(0)}, {Rat(-1), Rat(-2)}, {Rat(1), Rat(-2)}};
  return e;
}

inline EmbeddingData triangle_star_embedding() {
  EmbeddingData e;
  e.dim = 2;
  e.retraction = Retraction::NearestStar;
  e.coords = {{Rat(0), Rat(0)}, {Rat(4), Rat(0)}, {Rat(-2), Rat(3)},
              {Rat(-2), Rat(-3)}};
  return e;
}

inline SimplicialComplex interval() {
  return fixtrace::close_complex(3, {{0, 1}, {1, 2}});
}

inline EmbeddingData interval_embedding() {
  EmbeddingData e;
  e.dim = 1;
  e.retraction = Retraction::NearestStar;
  e.coords = {{Rat(-1)}, {Rat(0)}, {Rat(1)}};
  return e;
}

}  // namespace fixtures
