#pragma once

#include "fixtrace/embedding.hpp"
#include "fixtrace/reidemeister.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace fixtrace {

// Exact evaluator of the displacement field v -> v - f(p(v)).
using Field1 = std::function<Rat(const Rat&)>;
using Field2 = std::function<Point(const Point&)>;

struct IndexFailure : std::runtime_error {
  enum Kind { SampleVanishes, CannotRefine, UnsupportedDimension } kind;
  IndexFailure(Kind k, const std::string& what)
      : std::runtime_error(what), kind(k) {}
};

// d = 1: sign comparison of the displacement at x +- eps.
inline int fixed_point_index_1d(const Field1& g, const Rat& x, const Rat& eps) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  Rat lo = g(x - eps);
  Rat hi = g(x + eps);
  if (lo == 0 || hi == 0)
    throw IndexFailure(IndexFailure::SampleVanishes,
                       "displacement vanishes at a sample point");
  if (lo < 0 && hi > 0) return 1;
  if (lo > 0 && hi < 0) return -1;
  return 0;
}

namespace detail {

// Winding of the sampled displacement field around the perimeter of the
// axis-aligned square of half-side h at center. Samples are refined until
// consecutive directions differ by less than a quarter turn (certified by
// a positive dot product); the winding is then an exact count of signed
// crossings of the positive x-axis.
class SquareWinding {
 public:
  SquareWinding(const Field2& g, Point center, Rat h)
      : g_(g), center_(std::move(center)), h_(std::move(h)) {}

  int compute() {
    // perimeter parameter tau in [0,8h): four sides of length 2h each
    std::vector<Rat> taus;
    const Rat len = 8 * h_;
    for (int i = 0; i < 8; ++i) taus.push_back(len * i / 8);
    std::vector<Point> vals;
    for (const Rat& t : taus) vals.push_back(eval(t));

    bool changed = true;
    int guard = 0;
    while (changed) {
      if (++guard > 64)
        throw IndexFailure(IndexFailure::CannotRefine,
                           "angular refinement did not converge");
      changed = false;
      std::vector<Rat> nt;
      std::vector<Point> nv;
      for (std::size_t i = 0; i < taus.size(); ++i) {
        std::size_t j = (i + 1) % taus.size();
        nt.push_back(taus[i]);
        nv.push_back(vals[i]);
        if (geom::dot(vals[i], vals[j]) <= 0) {
          Rat mid = (i + 1 < taus.size()) ? (taus[i] + taus[j]) / 2
                                          : (taus[i] + len) / 2;
          nt.push_back(mid);
          nv.push_back(eval(mid));
          changed = true;
        }
      }
      taus = std::move(nt);
      vals = std::move(nv);
      if (taus.size() > (1u << 20))
        throw IndexFailure(IndexFailure::CannotRefine,
                           "angular refinement did not converge");
    }
    samples_ = vals.size();

    int winding = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const Point& u = vals[i];
      const Point& w = vals[(i + 1) % vals.size()];
      Rat cross = u[0] * w[1] - u[1] * w[0];
      if (u[1] < 0 && w[1] >= 0) {
        if (cross > 0) ++winding;  // upward through the positive x-axis
      } else if (w[1] < 0 && u[1] >= 0) {
        if (cross < 0) --winding;  // downward through the positive x-axis
      }
    }
    return winding;
  }

  std::size_t samples() const { return samples_; }

 private:
  Point eval(const Rat& tau) {
    Point v = param(tau);
    Point g = g_(v);
    if (geom::is_zero(g))
      throw IndexFailure(IndexFailure::SampleVanishes,
                         "displacement vanishes at a sample point");
    return g;
  }

  // counterclockwise square walk starting at the bottom-left corner
  Point param(const Rat& tau) const {
    Rat side = 2 * h_;
    Rat t = tau;
    Point p = center_;
    if (t < side) {  // bottom edge, left to right
      p[0] += t - h_;
      p[1] -= h_;
      return p;
    }
    t -= side;
    if (t < side) {  // right edge, bottom to top
      p[0] += h_;
      p[1] += t - h_;
      return p;
    }
    t -= side;
    if (t < side) {  // top edge, right to left
      p[0] += h_ - t;
      p[1] += h_;
      return p;
    }
    t -= side;
    p[0] -= h_;
    p[1] += h_ - t;  // left edge, top to bottom
    return p;
  }

  const Field2& g_;
  Point center_;
  Rat h_;
  std::size_t samples_ = 0;
};

}  // namespace detail

struct WindingResult {
  int index = 0;
  std::size_t samples = 0;  // resolution diagnostic
};

// d = 2: winding number of the displacement field around the fixed point,
// evaluated on the boundary of a small axis-aligned square (homotopic to
// the eps-circle inside the isolation neighborhood).
inline WindingResult fixed_point_index_2d(const Field2& g, const Point& center,
                                          const Rat& half_side) {
  if (half_side <= 0) throw std::invalid_argument("eps must be positive");
  detail::SquareWinding w(g, center, half_side);
  int idx = w.compute();
  return {idx, w.samples()};
}

// Displacement field of a realized simplicial self-map: v - f(p(v)).
inline Field2 displacement_field(const SimplicialComplex& k,
                                 const EmbeddingData& e, const SimplicialMap& f,
                                 int star_center) {
  return [&k, &e, &f, star_center](const Point& v) {
    LocatedPoint p = retract(k, e, star_center, v);
    return geom::sub(v, pl_image(e, f, p));
  };
}

inline Field1 displacement_field_1d(const SimplicialComplex& k,
                                    const EmbeddingData& e,
                                    const SimplicialMap& f, int star_center) {
  return [&k, &e, &f, star_center](const Rat& x) {
    LocatedPoint p = retract(k, e, star_center, {x});
    return x - pl_image(e, f, p)[0];
  };
}

// Deterministic default size for the sampling square: a quarter of the
// Chebyshev distance from x to the nearest other vertex, which keeps the
// whole square inside the isolation neighborhood on embedded fixtures.
inline Rat default_epsilon(const SimplicialComplex& k, const EmbeddingData& e,
                           int x) {
  Rat best = 0;
  bool have = false;
  for (int v = 0; v < k.vertex_count(); ++v) {
    if (v == x) continue;
    Rat cheb = 0;
    for (int c = 0; c < e.dim; ++c) {
      Rat d = e.coords[v][c] - e.coords[x][c];
      if (d < 0) d = -d;
      if (d > cheb) cheb = d;
    }
    if (!have || cheb < best) {
      best = cheb;
      have = true;
    }
  }
  if (!have) return Rat(1, 4);
  return best / 4;
}

struct FixedPointEntry {
  int vertex = -1;
  int index = 0;
  Word class_word;          // loop class correcting the basepoint path
  std::size_t samples = 0;  // resolution diagnostic (d = 2 only)
};

struct FixedPointReport {
  std::vector<FixedPointEntry> fixed_points;
  TraceValue geometric_trace;
};

// Index of one fixed vertex of a realized simplicial self-map.
inline FixedPointEntry vertex_index(const SimplicialComplex& k,
                                    const EmbeddingData& e,
                                    const SimplicialMap& f, int x,
                                    const std::optional<Rat>& eps_override) {
  Rat eps = eps_override ? *eps_override : default_epsilon(k, e, x);
  FixedPointEntry entry;
  entry.vertex = x;
  if (e.dim == 1) {
    Field1 g = displacement_field_1d(k, e, f, x);
    entry.index = fixed_point_index_1d(g, e.coords[x][0], eps);
    entry.samples = 2;
  } else {
    Field2 g = displacement_field(k, e, f, x);
    WindingResult w = fixed_point_index_2d(g, e.coords[x], eps);
    entry.index = w.index;
    entry.samples = w.samples;
  }
  return entry;
}

// Geometric Reidemeister trace: sum over isolated vertex fixed points of
// index times the class of the loop  path(v0 -> x) . f(path(v0 -> x))^-1,
// projected into the supplied class set.
inline FixedPointReport geometric_reidemeister(
    const SimplicialComplex& k, const SimplicialMap& f, const EmbeddingData& e,
    const SpanningTree& tree, const Pi1Presentation& pres,
    const ReidemeisterClassSet& classes,
    const std::optional<Rat>& eps_override = std::nullopt) {
  if (auto err = validate_embedding(k, e))
    throw std::invalid_argument("bad embedding: " + *err);
  FixedPointScan scan = enumerate_fixed_points(k, e, f);
  if (scan.trouble == FixedPointTrouble::NonVertex)
    throw std::invalid_argument("realized map has a non-vertex fixed point");
  if (scan.trouble == FixedPointTrouble::NotIsolated)
    throw std::invalid_argument("realized map has non-isolated fixed points");

  FixedPointReport report;
  std::vector<std::pair<Word, Int>> contributions;
  for (int x : scan.fixed_vertices) {
    FixedPointEntry entry = vertex_index(k, e, f, x, eps_override);
    // tree paths trivialize to the identity, so the loop's word is the
    // inverse of the image path's word
    entry.class_word = image_path_word(tree, pres, f, tree.path[x]).inverse();
    contributions.push_back({entry.class_word, Int(entry.index)});
    report.fixed_points.push_back(std::move(entry));
  }
  report.geometric_trace = project_to_classes(classes, contributions);
  return report;
}

struct GeomCheckResult {
  TraceValue algebraic;
  FixedPointReport geometric;
  bool agree = false;
};

// Computes both routes against one shared class set and compares them
// class by class.
inline GeomCheckResult geomcheck(const SimplicialComplex& k,
                                 const SimplicialMap& f, int v0,
                                 const EmbeddingData& e, int bound = 6,
                                 const std::optional<Rat>& eps = std::nullopt) {
  SpanningTree tree = spanning_tree(k, v0);
  EquivariantChainData chain = equivariant_boundary(k, tree);
  TwistedChainMap lift = twisted_chain_lift(k, f, tree, chain.presentation);

  std::vector<std::pair<Word, Int>> diag;
  for (int n = 0; n <= k.dim(); ++n)
    for (int j = 0; j < lift.levels[n].cols(); ++j)
      for (const auto& [w, c] : lift.levels[n].at(j, j).terms)
        diag.push_back({w, (n % 2 == 0) ? c : Int(-c)});

  if (auto err = validate_embedding(k, e))
    throw std::invalid_argument("bad embedding: " + *err);
  FixedPointScan scan = enumerate_fixed_points(k, e, f);
  if (scan.trouble)
    throw std::invalid_argument("fixed points are not isolated vertices");

  std::vector<Word> seeds;
  for (const auto& [w, c] : diag) seeds.push_back(w);
  for (int x : scan.fixed_vertices)
    seeds.push_back(image_path_word(tree, chain.presentation, f, tree.path[x])
                        .inverse());

  ReidemeisterClassSet classes = ReidemeisterClassSet::from_presentation(
      chain.presentation, lift.pi1_images, bound, seeds);

  GeomCheckResult out;
  out.algebraic = project_to_classes(classes, diag);
  out.geometric =
      geometric_reidemeister(k, f, e, tree, chain.presentation, classes, eps);
  out.agree = out.algebraic == out.geometric.geometric_trace;
  return out;
}

}  // namespace fixtrace
