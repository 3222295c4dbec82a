#pragma once

#include "fixtrace/numeric.hpp"
#include "fixtrace/simplicial.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixtrace {

using Point = std::vector<Rat>;  // length = ambient dimension (1 or 2)

enum class Retraction { Radial, NearestStar };

// Rational affine realization of a complex in R^1 or R^2, plus the
// retraction rule used to evaluate v - f(p(v)) near the complex.
struct EmbeddingData {
  int dim = 2;
  std::vector<Point> coords;  // per vertex
  Retraction retraction = Retraction::NearestStar;
};

namespace geom {

inline Point sub(const Point& a, const Point& b) {
  Point c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}
inline Point add(const Point& a, const Point& b) {
  Point c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}
inline Point scale(const Point& a, const Rat& s) {
  Point c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * s;
  return c;
}
inline Rat dot(const Point& a, const Point& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline Rat dist2(const Point& a, const Point& b) {
  Point d = sub(a, b);
  return dot(d, d);
}
inline bool is_zero(const Point& a) {
  for (const Rat& x : a)
    if (x != 0) return false;
  return true;
}

}  // namespace geom

// A point of the realized complex together with the simplex containing it
// and its barycentric coordinates there.
struct LocatedPoint {
  std::vector<int> simplex;
  std::vector<Rat> barycentric;
  Point point;
};

inline std::optional<std::string> validate_embedding(const SimplicialComplex& k,
                                                     const EmbeddingData& e) {
  if (e.dim != 1 && e.dim != 2) return "ambient dimension must be 1 or 2";
  if (static_cast<int>(e.coords.size()) != k.vertex_count())
    return "coordinate count mismatch";
  for (const Point& p : e.coords)
    if (static_cast<int>(p.size()) != e.dim) return "coordinate arity mismatch";
  for (int i = 0; i < k.vertex_count(); ++i)
    for (int j = i + 1; j < k.vertex_count(); ++j)
      if (e.coords[i] == e.coords[j])
        return "vertices " + k.vertex_labels[i] + " and " + k.vertex_labels[j] +
               " share coordinates";
  if (k.dim() > e.dim) return "complex dimension exceeds ambient dimension";
  if (e.dim == 2 && k.dim() >= 2)
    for (const auto& s : k.simplices[2]) {
      Point u = geom::sub(e.coords[s[1]], e.coords[s[0]]);
      Point v = geom::sub(e.coords[s[2]], e.coords[s[0]]);
      if (u[0] * v[1] - u[1] * v[0] == 0)
        return "degenerate triangle in embedding";
    }
  return std::nullopt;
}

// Barycentric coordinates of q in the realized simplex, if q lies in it.
inline std::optional<std::vector<Rat>> barycentric_in(
    const SimplicialComplex& k, const EmbeddingData& e,
    const std::vector<int>& s, const Point& q) {
  const int kdim = static_cast<int>(s.size()) - 1;
  if (kdim == 0)
    return q == e.coords[s[0]] ? std::optional<std::vector<Rat>>{{Rat(1)}}
                               : std::nullopt;
  if (kdim == 1) {
    Point d = geom::sub(e.coords[s[1]], e.coords[s[0]]);
    Point r = geom::sub(q, e.coords[s[0]]);
    Rat t;
    bool have = false;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] != 0) {
        t = r[i] / d[i];
        have = true;
        break;
      }
    if (!have) return std::nullopt;
    if (!(geom::sub(r, geom::scale(d, t)) == Point(d.size(), Rat(0))))
      return std::nullopt;
    if (t < 0 || t > 1) return std::nullopt;
    return std::vector<Rat>{1 - t, t};
  }
  // triangle in the plane
  Point u = geom::sub(e.coords[s[1]], e.coords[s[0]]);
  Point v = geom::sub(e.coords[s[2]], e.coords[s[0]]);
  Point r = geom::sub(q, e.coords[s[0]]);
  Rat det = u[0] * v[1] - u[1] * v[0];
  Rat l1 = (r[0] * v[1] - r[1] * v[0]) / det;
  Rat l2 = (u[0] * r[1] - u[1] * r[0]) / det;
  Rat l0 = 1 - l1 - l2;
  if (l0 < 0 || l1 < 0 || l2 < 0) return std::nullopt;
  return std::vector<Rat>{l0, l1, l2};
}

// Locates a point of the realized complex (top dimension first).
inline std::optional<LocatedPoint> locate(const SimplicialComplex& k,
                                          const EmbeddingData& e,
                                          const Point& q) {
  for (int d = k.dim(); d >= 0; --d)
    for (const auto& s : k.simplices[d])
      if (auto bc = barycentric_in(k, e, s, q))
        return LocatedPoint{s, *bc, q};
  return std::nullopt;
}

// Image of a located point under the affine realization of f.
inline Point pl_image(const EmbeddingData& e, const SimplicialMap& f,
                      const LocatedPoint& lp) {
  Point out(e.dim, Rat(0));
  for (std::size_t i = 0; i < lp.simplex.size(); ++i)
    out = geom::add(out,
                    geom::scale(e.coords[f.vertex_map[lp.simplex[i]]],
                                lp.barycentric[i]));
  return out;
}

// Radial retraction for 1-complexes realized star-shaped around the
// origin: the ray from the origin through v meets exactly one edge point.
inline LocatedPoint retract_radial(const SimplicialComplex& k,
                                   const EmbeddingData& e, const Point& v) {
  if (e.dim != 2) throw std::invalid_argument("radial retraction needs R^2");
  if (geom::is_zero(v))
    throw std::domain_error("radial retraction undefined at the origin");
  if (k.dim() < 1) throw std::invalid_argument("radial retraction needs edges");
  for (const auto& s : k.simplices[1]) {
    const Point& a = e.coords[s[0]];
    Point d = geom::sub(e.coords[s[1]], a);
    // solve  t*d - u*v = -a  for edge parameter t and ray parameter u > 0
    Rat det = d[0] * (-v[1]) - d[1] * (-v[0]);
    if (det == 0) continue;
    Rat t = ((-a[0]) * (-v[1]) - (-a[1]) * (-v[0])) / det;
    Rat u = (d[0] * (-a[1]) - d[1] * (-a[0])) / det;
    if (u <= 0 || t < 0 || t > 1) continue;
    Point p = geom::add(a, geom::scale(d, t));
    return LocatedPoint{s, {1 - t, t}, p};
  }
  throw std::domain_error("ray misses the realized complex");
}

namespace detail {

// Closest point of a realized simplex to v, with barycentric coordinates.
inline LocatedPoint closest_on_simplex(const SimplicialComplex&,
                                       const EmbeddingData& e,
                                       const std::vector<int>& s,
                                       const Point& v) {
  const int kdim = static_cast<int>(s.size()) - 1;
  if (kdim == 0) return {s, {Rat(1)}, e.coords[s[0]]};
  if (kdim == 1) {
    const Point& a = e.coords[s[0]];
    Point d = geom::sub(e.coords[s[1]], a);
    Rat t = geom::dot(geom::sub(v, a), d) / geom::dot(d, d);
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    return {s, {1 - t, t}, geom::add(a, geom::scale(d, t))};
  }
  // triangle: inside test first, else best edge
  Point u = geom::sub(e.coords[s[1]], e.coords[s[0]]);
  Point w = geom::sub(e.coords[s[2]], e.coords[s[0]]);
  Point r = geom::sub(v, e.coords[s[0]]);
  Rat det = u[0] * w[1] - u[1] * w[0];
  Rat l1 = (r[0] * w[1] - r[1] * w[0]) / det;
  Rat l2 = (u[0] * r[1] - u[1] * r[0]) / det;
  Rat l0 = 1 - l1 - l2;
  if (l0 >= 0 && l1 >= 0 && l2 >= 0) return {s, {l0, l1, l2}, v};
  std::optional<LocatedPoint> best;
  Rat best_d2;
  for (int drop = 0; drop < 3; ++drop) {
    std::vector<int> edge;
    for (int i = 0; i < 3; ++i)
      if (i != drop) edge.push_back(s[i]);
    LocatedPoint cand = closest_on_simplex(SimplicialComplex{}, e, edge, v);
    Rat d2 = geom::dist2(cand.point, v);
    if (!best || d2 < best_d2) {
      best = cand;
      best_d2 = d2;
    }
  }
  return *best;
}

}  // namespace detail

// Closest point onto the star of the vertex `center`.
inline LocatedPoint retract_nearest_star(const SimplicialComplex& k,
                                         const EmbeddingData& e, int center,
                                         const Point& v) {
  std::optional<LocatedPoint> best;
  Rat best_d2;
  for (int d = 0; d <= k.dim(); ++d)
    for (const auto& s : k.simplices[d]) {
      if (std::find(s.begin(), s.end(), center) == s.end()) continue;
      LocatedPoint cand = detail::closest_on_simplex(k, e, s, v);
      Rat d2 = geom::dist2(cand.point, v);
      if (!best || d2 < best_d2) {
        best = cand;
        best_d2 = d2;
      }
    }
  if (!best) throw std::logic_error("vertex has an empty star");
  return *best;
}

inline LocatedPoint retract(const SimplicialComplex& k, const EmbeddingData& e,
                            int star_center, const Point& v) {
  return e.retraction == Retraction::Radial
             ? retract_radial(k, e, v)
             : retract_nearest_star(k, e, star_center, v);
}

// --- exact fixed-point enumeration of the realized PL map ---

enum class FixedPointTrouble { NonVertex, NotIsolated };

struct FixedPointScan {
  std::vector<int> fixed_vertices;                 // sorted, deduplicated
  std::optional<FixedPointTrouble> trouble;
  Point witness;  // offending point when trouble is set
};

namespace detail {

// Fixed points of the affine map on one realized simplex. Returns the
// points, or signals a positive-dimensional fixed set.
inline bool affine_fixed_points(const SimplicialComplex&, const EmbeddingData& e,
                                const SimplicialMap& f, const std::vector<int>& s,
                                std::vector<Point>& out, bool& positive_dim,
                                Point& witness) {
  const int kdim = static_cast<int>(s.size()) - 1;
  const int d = e.dim;
  // lambda weights: lam_0 = 1 - sum(others). Equation:
  //   c + sum_i lam_i * m_i = 0,  c = W0 - V0, m_i = (Wi - Vi) - (W0 - V0)
  std::vector<Point> m;
  Point c = geom::sub(e.coords[f.vertex_map[s[0]]], e.coords[s[0]]);
  for (int i = 1; i <= kdim; ++i) {
    Point mi = geom::sub(
        geom::sub(e.coords[f.vertex_map[s[i]]], e.coords[s[i]]), c);
    m.push_back(mi);
  }
  auto point_at = [&](const std::vector<Rat>& lam_rest) {
    Rat lam0 = 1;
    for (const Rat& l : lam_rest) lam0 -= l;
    Point q = geom::scale(e.coords[s[0]], lam0);
    for (int i = 1; i <= kdim; ++i)
      q = geom::add(q, geom::scale(e.coords[s[i]], lam_rest[i - 1]));
    return q;
  };
  if (kdim == 0) {
    if (geom::is_zero(c)) out.push_back(e.coords[s[0]]);
    return true;
  }
  if (kdim == 1) {
    // c + t*m0 = 0 on t in [0,1]
    const Point& m0 = m[0];
    if (geom::is_zero(m0)) {
      if (geom::is_zero(c)) {
        positive_dim = true;
        witness = point_at({Rat(1, 2)});
        return false;
      }
      return true;
    }
    Rat t;
    bool have = false;
    for (int i = 0; i < d; ++i)
      if (m0[i] != 0) {
        t = -c[i] / m0[i];
        have = true;
        break;
      }
    (void)have;
    if (!(geom::add(c, geom::scale(m0, t)) == Point(d, Rat(0)))) return true;
    if (t < 0 || t > 1) return true;
    out.push_back(point_at({t}));
    return true;
  }
  // kdim == 2, d == 2: 2x2 system in (l1, l2)
  Rat a00 = m[0][0], a01 = m[1][0], a10 = m[0][1], a11 = m[1][1];
  Rat b0 = -c[0], b1 = -c[1];
  Rat det = a00 * a11 - a01 * a10;
  if (det != 0) {
    Rat l1 = (b0 * a11 - a01 * b1) / det;
    Rat l2 = (a00 * b1 - b0 * a10) / det;
    if (l1 >= 0 && l2 >= 0 && l1 + l2 <= 1) out.push_back(point_at({l1, l2}));
    return true;
  }
  // singular: solution set is empty, a line, or the whole triangle
  bool row0 = (a00 != 0 || a01 != 0);
  bool row1 = (a10 != 0 || a11 != 0);
  if (!row0 && !row1) {
    if (b0 != 0 || b1 != 0) return true;
    positive_dim = true;
    witness = point_at({Rat(1, 3), Rat(1, 3)});
    return false;
  }
  // use the nonzero row as the single equation; check the other row is a
  // multiple (consistency), else no solutions
  Rat p0 = row0 ? a00 : a10, p1 = row0 ? a01 : a11, q = row0 ? b0 : b1;
  Rat o0 = row0 ? a10 : a00, o1 = row0 ? a11 : a01, oq = row0 ? b1 : b0;
  // (o0,o1,oq) must be proportional to (p0,p1,q)
  if (!(o0 * p1 == o1 * p0)) return true;  // cannot happen with det == 0
  Rat factor;
  if (p0 != 0) factor = o0 / p0;
  else factor = o1 / p1;
  if (!(oq == factor * q)) return true;  // inconsistent
  // line p0*l1 + p1*l2 = q intersected with the simplex triangle
  // parametrize: direction (p1, -p0), particular solution
  Rat base1, base2;
  if (p0 != 0) {
    base1 = q / p0;
    base2 = 0;
  } else {
    base1 = 0;
    base2 = q / p1;
  }
  Rat d1 = p1, d2 = -p0;
  // constraints: l1 >= 0, l2 >= 0, l1 + l2 <= 1 with l = base + t*dir
  bool empty = false;
  bool lo_set = false, hi_set = false;
  Rat lo, hi;
  auto constrain = [&](const Rat& coeff, const Rat& rhs) {
    // coeff * t <= rhs
    if (coeff == 0) {
      if (rhs < 0) empty = true;
      return;
    }
    Rat bnd = rhs / coeff;
    if (coeff > 0) {
      if (!hi_set || bnd < hi) { hi = bnd; hi_set = true; }
    } else {
      if (!lo_set || bnd > lo) { lo = bnd; lo_set = true; }
    }
  };
  constrain(-d1, base1);            // l1 >= 0
  constrain(-d2, base2);            // l2 >= 0
  constrain(d1 + d2, 1 - base1 - base2);  // l1 + l2 <= 1
  if (empty) return true;
  if (!lo_set || !hi_set) {
    positive_dim = true;  // unbounded direction cannot happen in a triangle
    witness = point_at({base1, base2});
    return false;
  }
  if (lo > hi) return true;
  if (lo == hi) {
    out.push_back(point_at({base1 + lo * d1, base2 + lo * d2}));
    return true;
  }
  positive_dim = true;
  Rat mid = (lo + hi) / 2;
  witness = point_at({base1 + mid * d1, base2 + mid * d2});
  return false;
}

}  // namespace detail

// All fixed points of the realized PL map. They must be isolated; the scan
// reports whether any fall outside the vertex set.
inline FixedPointScan enumerate_fixed_points(const SimplicialComplex& k,
                                             const EmbeddingData& e,
                                             const SimplicialMap& f) {
  FixedPointScan scan;
  std::vector<Point> points;
  for (int d = 0; d <= k.dim(); ++d)
    for (const auto& s : k.simplices[d]) {
      bool positive = false;
      Point witness;
      if (!detail::affine_fixed_points(k, e, f, s, points, positive, witness)) {
        scan.trouble = FixedPointTrouble::NotIsolated;
        scan.witness = witness;
        return scan;
      }
    }
  std::map<Point, int> seen;
  for (const Point& p : points) {
    if (seen.count(p)) continue;
    seen[p] = 1;
    int vertex = -1;
    for (int v = 0; v < k.vertex_count(); ++v)
      if (e.coords[v] == p) {
        vertex = v;
        break;
      }
    if (vertex < 0) {
      scan.trouble = FixedPointTrouble::NonVertex;
      scan.witness = p;
      return scan;
    }
    scan.fixed_vertices.push_back(vertex);
  }
  std::sort(scan.fixed_vertices.begin(), scan.fixed_vertices.end());
  return scan;
}

}  // namespace fixtrace
