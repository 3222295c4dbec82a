#pragma once

#include "fixtrace/rational_la.hpp"
#include "fixtrace/simplicial.hpp"

#include <stdexcept>

namespace fixtrace {

// Alternating sum of traces of the induced chain maps.
inline Int lefschetz_chain(const SimplicialMap& f) {
  if (!f.is_self_map()) throw std::invalid_argument("not a self-map");
  if (validate_simplicial_map(f))
    throw std::invalid_argument("invalid simplicial map");
  const SimplicialComplex& k = *f.source;
  Int total = 0;
  for (int n = 0; n <= k.dim(); ++n) {
    Int t = induced_chain_map(f, n).trace();
    total += (n % 2 == 0) ? t : Int(-t);
  }
  return total;
}

// Alternating sum of traces of f_* on rational homology, computed with
// exact rational arithmetic. ker(boundary_n) is f-invariant and contains
// im(boundary_{n+1}); the homology trace is the difference of the two
// restricted traces.
inline Int lefschetz_homological(const SimplicialMap& f) {
  if (!f.is_self_map()) throw std::invalid_argument("not a self-map");
  if (validate_simplicial_map(f))
    throw std::invalid_argument("invalid simplicial map");
  const SimplicialComplex& k = *f.source;
  Rat total = 0;
  for (int n = 0; n <= k.dim(); ++n) {
    int cn = k.count(n);
    if (cn == 0) continue;
    RatMatrix fn = RatMatrix::from_int(induced_chain_map(f, n));
    RatMatrix cycles;
    if (n == 0) {
      cycles = RatMatrix(cn, cn);
      for (int i = 0; i < cn; ++i) cycles.at(i, i) = 1;
    } else {
      cycles = rational_kernel_basis(RatMatrix::from_int(boundary_matrix(k, n)));
    }
    Rat tr = restricted_trace(fn, cycles);
    if (n + 1 <= k.dim()) {
      RatMatrix image =
          column_space_basis(RatMatrix::from_int(boundary_matrix(k, n + 1)));
      tr -= restricted_trace(fn, image);
    }
    total += (n % 2 == 0) ? tr : Rat(-tr);
  }
  if (denominator(total) != 1)
    throw std::logic_error("homological Lefschetz number not an integer");
  return numerator(total);
}

}  // namespace fixtrace
