#pragma once
// Projection-phase engine: resultants, discriminants, one-variable
// projection steps, full cascades, and the cascade-size proxy cost used
// to label synthetic corpora.  All arithmetic is exact.

#include <vector>

#include "volab/polyset.hpp"

namespace volab {

// Resultant of p and q with respect to variable `var`, computed by the
// subresultant remainder sequence.  Both inputs must have positive degree
// in `var`.
Polynomial resultant(const Polynomial& p, const Polynomial& q, int var);

// res(p, dp/dvar) without division by the leading coefficient; requires
// degree >= 2 in `var`.
Polynomial discriminant(const Polynomial& p, int var);

// Union of leading coefficients, discriminants and pairwise resultants of
// the polynomials containing `var`, plus the untouched rest.  Constants
// are dropped and every survivor is reduced to its primitive part, so
// integer-constant multiples collapse.
PolySet project_step(const PolySet& s, int var);

struct ProjectionCascade {
  VariableOrdering ordering;
  std::vector<PolySet> levels;  // levels[0] is the input; nvars levels total
};

ProjectionCascade build_cascade(const PolySet& s, const VariableOrdering& o);

// Sum over cascade levels of sum over polynomials of (1 + total degree).
// A deterministic stand-in for construction cost; not a timing.
double proxy_cost(const PolySet& s, const VariableOrdering& o);

}  // namespace volab
