#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "volab/projection.hpp"
#include "volab/rng.hpp"
#include "volab/synth.hpp"

using namespace volab;

namespace {

bool same_up_to_sign(const Polynomial& a, const Polynomial& b) { return a == b || a == -b; }

Polynomial random_poly_in(Rng& rng, const SynthSpec& spec) {
  PolySet s = random_polyset(rng, spec);
  return s.polys[rng.pick(static_cast<int>(s.polys.size()))];
}

}  // namespace

TEST_CASE("resultant of x^2 - y and x - 1") {
  PolySet s = parse_polyset("x1^2 - x2; x1 - 1", 2);
  Polynomial r = resultant(s.polys[1], s.polys[0], 0);
  Polynomial expected = parse_polyset("1 - x2", 2).polys[0];
  CHECK(same_up_to_sign(r, expected));
  // identical to the determinant of the Sylvester matrix, sign included
  CHECK(r == oracle::sylvester_resultant(s.polys[1], s.polys[0], 0));
}

TEST_CASE("resultant of two linear polynomials is the root difference") {
  // x = x1, a = x2, b = x3
  PolySet s = parse_polyset("x1 - x2; x1 - x3", 3);
  Polynomial r = resultant(s.polys[0], s.polys[1], 0);
  Polynomial expected = parse_polyset("x2 - x3", 3).polys[0];
  CHECK(same_up_to_sign(r, expected));
}

TEST_CASE("resultant requires positive degree in the variable") {
  PolySet s = parse_polyset("x1 - 1; x2 - 1", 2);
  CHECK_THROWS(resultant(s.polys[0], s.polys[1], 0));
}

TEST_CASE("remainder-sequence resultants match the Sylvester determinant") {
  Rng rng(101);
  SynthSpec spec;
  spec.nvars = 2;
  spec.max_degree = 3;
  spec.max_polys = 1;
  spec.max_terms = 4;
  int done = 0;
  while (done < 150) {
    Polynomial p = random_poly_in(rng, spec);
    Polynomial q = random_poly_in(rng, spec);
    if (p.var_degree(0) < 1 || q.var_degree(0) < 1) continue;
    ++done;
    CHECK(resultant(p, q, 0) == oracle::sylvester_resultant(p, q, 0));
  }
}

TEST_CASE("swapping the arguments flips the sign by degree parity") {
  Rng rng(103);
  SynthSpec spec;
  spec.nvars = 2;
  spec.max_degree = 3;
  spec.max_polys = 1;
  int done = 0;
  while (done < 80) {
    Polynomial p = random_poly_in(rng, spec);
    Polynomial q = random_poly_in(rng, spec);
    if (p.var_degree(0) < 1 || q.var_degree(0) < 1) continue;
    ++done;
    Polynomial ab = resultant(p, q, 0);
    Polynomial ba = resultant(q, p, 0);
    if ((p.var_degree(0) * q.var_degree(0)) % 2 == 0)
      CHECK(ab == ba);
    else
      CHECK(ab == -ba);
  }
}

TEST_CASE("the resultant is multiplicative in its first argument") {
  Rng rng(107);
  SynthSpec spec;
  spec.nvars = 2;
  spec.max_degree = 2;
  spec.max_polys = 1;
  spec.max_terms = 3;
  int done = 0;
  while (done < 60) {
    Polynomial p = random_poly_in(rng, spec);
    Polynomial r = random_poly_in(rng, spec);
    Polynomial q = random_poly_in(rng, spec);
    if (p.var_degree(0) < 1 || r.var_degree(0) < 1 || q.var_degree(0) < 1) continue;
    ++done;
    CHECK(resultant(p * r, q, 0) == resultant(p, q, 0) * resultant(r, q, 0));
  }
}

TEST_CASE("discriminant of x^2 - y is proportional to y") {
  PolySet s = parse_polyset("x1^2 - x2", 2);
  Polynomial d = discriminant(s.polys[0], 0);
  Polynomial y4 = parse_polyset("4x2", 2).polys[0];
  CHECK(same_up_to_sign(d, y4));
}

TEST_CASE("discriminant of a square is zero") {
  PolySet s = parse_polyset("x1^2", 1);
  CHECK(discriminant(s.polys[0], 0).is_zero());
}

TEST_CASE("discriminant of a quadratic matches a(4ac - b^2)") {
  Rng rng(109);
  for (int i = 0; i < 200; ++i) {
    long a = static_cast<long>(rng.below(9)) + 1;
    long b = static_cast<long>(rng.below(19)) - 9;
    long c = static_cast<long>(rng.below(19)) - 9;
    if (rng.pick(2)) a = -a;
    Polynomial p = Polynomial::variable(0, 2).mul_scalar(Int(a)) +
                   Polynomial::variable(0).mul_scalar(Int(b)) + Polynomial::constant(Int(c));
    Polynomial d = discriminant(p, 0);
    Polynomial expected =
        Polynomial::constant(Int(a)) * (Polynomial::constant(Int(4 * a * c - b * b)));
    CHECK(d == expected);
    CHECK((d.is_zero()) == (b * b == 4 * a * c));  // squarefree iff nonzero
  }
}

TEST_CASE("discriminant requires degree at least two") {
  PolySet s = parse_polyset("x1 - 1", 1);
  CHECK_THROWS(discriminant(s.polys[0], 0));
}

TEST_CASE("projection step on the two-polynomial example") {
  PolySet s = parse_polyset("x1^2 - x2; x3^3 - 1", 3);
  PolySet projected = project_step(s, 0);
  CHECK(projected == parse_polyset("x2; x3^3 - 1", 3));
}

TEST_CASE("projecting an absent variable keeps a primitive set unchanged") {
  PolySet s = parse_polyset("x1^2 - x2", 3);
  CHECK(project_step(s, 2) == s);
}

TEST_CASE("projecting a univariate set leaves nothing but constants") {
  PolySet s = parse_polyset("x1^2 - 1", 1);
  CHECK(project_step(s, 0).polys.empty());
}

TEST_CASE("cascade levels never contain an eliminated variable") {
  Rng rng(113);
  SynthSpec spec;
  spec.nvars = 3;
  spec.max_degree = 3;
  spec.max_polys = 3;
  spec.max_terms = 3;
  for (int i = 0; i < 40; ++i) {
    PolySet s = random_polyset(rng, spec);
    for (const auto& o : all_orderings(3)) {
      ProjectionCascade c = build_cascade(s, o);
      REQUIRE(c.levels.size() == 3);
      for (std::size_t level = 1; level < c.levels.size(); ++level)
        for (std::size_t k = 0; k < level; ++k)
          for (const auto& p : c.levels[level].polys) CHECK(p.var_degree(o.order[k]) == 0);
    }
  }
}

TEST_CASE("proxy cost of a univariate set counts only its own level") {
  PolySet s = parse_polyset("x1^3 - x1", 1);
  CHECK(proxy_cost(s, VariableOrdering{{0}}) == 4.0);  // 1 + degree
}

TEST_CASE("a vanishing level continues the cascade") {
  PolySet s = parse_polyset("x1 - 1", 3);
  CHECK(proxy_cost(s, VariableOrdering{{0, 1, 2}}) == 2.0);
}

TEST_CASE("elimination order changes the proxy cost of a lopsided set") {
  PolySet s = parse_polyset("x1^8 - x2; x2 - x3", 3);
  VariableOrdering first{{0, 1, 2}};
  VariableOrdering last{{1, 2, 0}};
  double a = proxy_cost(s, first);
  double b = proxy_cost(s, last);
  CHECK(a != b);
  CHECK(a == oracle::cascade_cost_reference(s, first));
  CHECK(b == oracle::cascade_cost_reference(s, last));
}

TEST_CASE("proxy cost matches the reference cascade on random sets") {
  Rng rng(127);
  SynthSpec spec;
  spec.nvars = 3;
  spec.max_degree = 2;
  spec.max_polys = 3;
  spec.max_terms = 3;
  for (int i = 0; i < 25; ++i) {
    PolySet s = random_polyset(rng, spec);
    for (const auto& o : all_orderings(3)) CHECK(proxy_cost(s, o) == oracle::cascade_cost_reference(s, o));
  }
}

TEST_CASE("proxy cost is invariant under consistent renaming") {
  Rng rng(131);
  SynthSpec spec;
  spec.nvars = 3;
  spec.max_degree = 2;
  spec.max_polys = 3;
  spec.max_terms = 3;
  for (int i = 0; i < 25; ++i) {
    PolySet s = random_polyset(rng, spec);
    Perm sigma = rng.permutation(3);
    PolySet renamed = apply_permutation(s, sigma);
    for (const auto& o : all_orderings(3))
      CHECK(proxy_cost(s, o) == proxy_cost(renamed, transport(sigma, o)));
  }
}
