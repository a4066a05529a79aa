#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "volab/smtlib.hpp"

using namespace volab;

TEST_CASE("single atom becomes left minus right") {
  PolySet s = parse_smtlib_atoms(
      "(declare-fun x () Real)(declare-fun y () Real)(assert (> (* x x) y))");
  CHECK(s == parse_polyset("x1^2 - x2", 2));
}

TEST_CASE("rational constants are cleared by the denominator lcm") {
  PolySet s = parse_smtlib_atoms("(declare-const x Real)(assert (= (/ 1 2) x))");
  CHECK(s == parse_polyset("2x1 - 1", 1));
}

TEST_CASE("decimal literals work like rationals") {
  PolySet s = parse_smtlib_atoms("(declare-const x Real)(assert (< x 0.25))");
  CHECK(s == parse_polyset("4x1 - 1", 1));
}

TEST_CASE("unsupported operators are rejected") {
  CHECK_THROWS_AS(parse_smtlib_atoms("(declare-const x Real)(assert (> (sin x) 0))"), ParseError);
  CHECK_THROWS_AS(parse_smtlib_atoms("(declare-const x Real)(assert (> (/ 1 x) 0))"), ParseError);
}

TEST_CASE("undeclared symbols are rejected") {
  CHECK_THROWS_AS(parse_smtlib_atoms("(declare-const x Real)(assert (> y 0))"), ParseError);
}

TEST_CASE("variable indices follow declaration order") {
  PolySet s = parse_smtlib_atoms(
      "(set-logic QF_NRA)"
      "(declare-fun b () Real)(declare-fun a () Real)"
      "(assert (and (> b 1) (< (* a a b) 3)))"
      "(check-sat)");
  // b -> x1, a -> x2
  CHECK(s == parse_polyset("x1 - 1; x2^2x1 - 3", 2));
}

TEST_CASE("boolean structure is traversed and atoms are deduplicated") {
  PolySet s = parse_smtlib_atoms(
      "(declare-const x Real)"
      "(assert (or (> x 1) (not (<= x 1))))");
  CHECK(s == parse_polyset("x1 - 1", 1));
}

TEST_CASE("trivially zero atoms carry no polynomial") {
  PolySet s = parse_smtlib_atoms("(declare-const x Real)(assert (= x x))");
  CHECK(s.polys.empty());
}

TEST_CASE("chained relations produce adjacent atoms") {
  PolySet s = parse_smtlib_atoms(
      "(declare-const x Real)(declare-const y Real)(assert (< x y 1))");
  CHECK(s == parse_polyset("x1 - x2; x2 - 1", 2));
}
