#pragma once
// Minimal SMT-LIB2 reader: collects the polynomials appearing in the
// (in)equality atoms of a script.  Supported surface: declare-fun /
// declare-const of sort Real, assert over <, >, <=, >=, =, distinct with
// +, -, *, numerals, decimals and / of numerals; boolean structure
// (and, or, not, =>) is traversed.  Variable indices follow declaration
// order.  Rational coefficients are cleared per polynomial by the LCM of
// the denominators; each polynomial is sign-normalized (positive leading
// coefficient).

#include <string>

#include "volab/polyset.hpp"

namespace volab {

PolySet parse_smtlib_atoms(const std::string& text);

}  // namespace volab
