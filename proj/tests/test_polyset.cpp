#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "volab/polyset.hpp"
#include "volab/rng.hpp"
#include "volab/synth.hpp"

using namespace volab;

namespace {
const char* kWorkedPoly = "2x1^3x2 + x1^2x2x3 + 2x1^2x3^3 - 3x1 - x2^3x3 - 4x3^2 + 7";
}

TEST_CASE("parsing the two-polynomial example") {
  PolySet s = parse_polyset("x1^2 - x2; x3^3 - 1", 3);
  CHECK(s.polys.size() == 2);
  CHECK(product_degree(s, 0) == 2);
  CHECK(product_degree(s, 1) == 1);
  CHECK(product_degree(s, 2) == 3);
}

TEST_CASE("a bare integer parses as a constant polynomial") {
  PolySet s = parse_polyset("7", 3);
  REQUIRE(s.polys.size() == 1);
  CHECK(s.polys[0].is_constant());
  CHECK(s.polys[0].leading_coeff() == 7);
}

TEST_CASE("implicit multiplication and the worked seven-monomial polynomial") {
  PolySet s = parse_polyset(kWorkedPoly, 3);
  REQUIRE(s.polys.size() == 1);
  const Polynomial& f = s.polys[0];
  CHECK(f.terms().size() == 7);
  CHECK(f.var_degree(0) == 3);
  CHECK(f.var_degree(1) == 3);
  CHECK(f.var_degree(2) == 3);
  CHECK(f.total_degree() == 5);
  // canonical order puts x1^3*x2 first (descending lex)
  CHECK(f.terms()[0].mono.degree_of(0) == 3);
  CHECK(f.terms()[0].coeff == 2);
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK_THROWS_AS(parse_polyset("x1 + @", 3), ParseError);
  CHECK_THROWS_AS(parse_polyset("x4", 3), ParseError);      // index out of range
  CHECK_THROWS_AS(parse_polyset("x1 - x1", 3), ParseError); // zero after combining
  CHECK_THROWS_AS(parse_polyset("x1;", 3), ParseError);     // trailing separator
  CHECK_THROWS_AS(parse_polyset("0", 2), ParseError);
  try {
    parse_polyset("x1 + x9", 3);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset == 5);
  }
}

TEST_CASE("empty input is the empty set and round-trips") {
  PolySet s = parse_polyset("   ", 4);
  CHECK(s.polys.empty());
  CHECK(to_string(s).empty());
  CHECK(parse_polyset(to_string(s), 4) == s);
}

TEST_CASE("printer emits explicit multiplication in canonical order") {
  PolySet s = parse_polyset(kWorkedPoly, 3);
  CHECK(to_string(s) == "2*x1^3*x2 + x1^2*x2*x3 + 2*x1^2*x3^3 - 3*x1 - x2^3*x3 - 4*x3^2 + 7");
}

TEST_CASE("print/parse round-trip on random sets") {
  Rng rng(20240501);
  SynthSpec spec;
  spec.nvars = 4;
  spec.max_polys = 5;
  spec.max_degree = 6;
  for (int i = 0; i < 300; ++i) {
    PolySet s = random_polyset(rng, spec);
    CHECK(parse_polyset(to_string(s), s.nvars) == s);
  }
}

TEST_CASE("duplicate polynomials collapse to one") {
  PolySet s = parse_polyset("x1 + x2; x2 + x1", 2);
  CHECK(s.polys.size() == 1);
}

TEST_CASE("swap permutation example") {
  PolySet s = parse_polyset("x1^2 - x2; x3^3 - 1", 3);
  PolySet expected = parse_polyset("x2^2 - x1; x3^3 - 1", 3);
  Perm swap01{1, 0, 2};
  CHECK(apply_permutation(s, swap01) == expected);
  CHECK(apply_permutation(s, identity_perm(3)) == s);
}

TEST_CASE("permutation acts as a group action and round-trips") {
  Rng rng(7);
  SynthSpec spec;
  spec.nvars = 4;
  for (int i = 0; i < 1000; ++i) {
    PolySet s = random_polyset(rng, spec);
    Perm sigma = rng.permutation(4);
    Perm tau = rng.permutation(4);
    CHECK(apply_permutation(apply_permutation(s, sigma), inverse(sigma)) == s);
    // composition: applying tau then sigma equals applying sigma.tau
    Perm composed(4);
    for (int v = 0; v < 4; ++v) composed[v] = sigma[tau[v]];
    CHECK(apply_permutation(apply_permutation(s, tau), sigma) ==
          apply_permutation(s, composed));
  }
}

TEST_CASE("variable degrees transport through renaming") {
  Rng rng(99);
  SynthSpec spec;
  spec.nvars = 5;
  for (int i = 0; i < 200; ++i) {
    PolySet s = random_polyset(rng, spec);
    Perm sigma = rng.permutation(5);
    PolySet t = apply_permutation(s, sigma);
    for (int v = 0; v < 5; ++v) CHECK(product_degree(t, sigma[v]) == product_degree(s, v));
  }
}

TEST_CASE("product degree matches the expanded product") {
  Rng rng(3);
  SynthSpec spec;
  spec.nvars = 3;
  spec.max_polys = 4;
  spec.max_terms = 3;
  spec.max_degree = 3;
  for (int i = 0; i < 100; ++i) {
    PolySet s = random_polyset(rng, spec);
    Polynomial prod = Polynomial::constant(1);
    for (const auto& p : s.polys) prod = prod * p;
    for (int v = 0; v < 3; ++v) CHECK(product_degree(s, v) == prod.var_degree(v));
  }
  PolySet empty{3, {}};
  CHECK(product_degree(empty, 0) == 0);
}

TEST_CASE("the worked example set has product degrees 6, 4, 5") {
  PolySet s = parse_polyset(std::string("4x1^3x3 - x2x3 + 5x3^2 - 1; ") + kWorkedPoly, 3);
  CHECK(product_degree(s, 0) == 6);
  CHECK(product_degree(s, 1) == 4);
  CHECK(product_degree(s, 2) == 5);
}

TEST_CASE("ordering enumeration is the lexicographic projection order") {
  auto all = all_orderings(3);
  REQUIRE(all.size() == 6);
  CHECK(all[0].to_string() == "x1>x2>x3");
  CHECK(all[2].to_string() == "x2>x1>x3");
  CHECK(all[4].to_string() == "x3>x1>x2");
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(ordering_index(all[i]) == i);
    CHECK(ordering_from_index(3, i) == all[i]);
  }
}

TEST_CASE("ordering transport composes with permutations") {
  VariableOrdering o{{1, 0, 2}};  // x2 > x1 > x3
  Perm swap01{1, 0, 2};
  CHECK(transport(swap01, o).to_string() == "x1>x2>x3");
}

TEST_CASE("constants survive sets but contribute no degree") {
  PolySet s = parse_polyset("5; x1", 1);
  CHECK(s.polys.size() == 2);
  CHECK(product_degree(s, 0) == 1);
}
