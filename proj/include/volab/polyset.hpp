#pragma once
// Sparse multivariate polynomials over arbitrary-precision integers,
// the polynomial text grammar, variable permutations and orderings.
//
// Variables are dense indices 0..nvars-1; the text surface names them
// x1..xn.  Monomials inside a polynomial are kept in descending
// lexicographic order of their exponent vectors (variable 0 weighs
// heaviest), polynomials inside a set in ascending order, so equality
// is structural and printing is canonical.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace volab {

using Int = mpz_class;
using Rat = mpq_class;

// Exponent map of one monomial: (variable, exponent > 0) sorted by variable.
struct Monomial {
  std::vector<std::pair<int, int>> exps;

  int degree_of(int var) const;
  int total_degree() const;
  bool contains(int var) const { return degree_of(var) > 0; }
  bool is_constant() const { return exps.empty(); }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// strcmp-style lexicographic comparison of exponent vectors.
int lex_cmp(const Monomial& a, const Monomial& b);

Monomial mono_mul(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Int coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

class Polynomial {
public:
  Polynomial() = default;
  static Polynomial constant(Int c);
  static Polynomial variable(int var, int exp = 1);
  static Polynomial from_terms(std::vector<Term> terms);

  // Terms in descending lexicographic monomial order, coefficients nonzero.
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_constant()); }
  int var_degree(int var) const;
  int total_degree() const;  // 0 for constants and the zero polynomial
  int max_var() const;       // largest variable present, -1 if none
  const Int& leading_coeff() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial pow(int e) const;
  Polynomial derivative(int var) const;

  Int content() const;               // gcd of |coefficients|, 0 for zero
  Polynomial primitive_part() const; // content divided out, leading coeff > 0
  Polynomial mul_scalar(const Int& c) const;
  Polynomial div_scalar_exact(const Int& c) const;  // throws std::logic_error if inexact

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
  std::vector<Term> terms_;
};

// Total order on polynomials used to keep sets canonical: term-by-term by
// monomial, then coefficient; shorter polynomial first on a common prefix.
int poly_cmp(const Polynomial& a, const Polynomial& b);

// perm[i] = new index of variable i.
using Perm = std::vector<int>;

Perm identity_perm(int n);
Perm inverse(const Perm& p);
bool is_permutation(const Perm& p);

// Set of distinct nonzero polynomials over variables 0..nvars-1.
struct PolySet {
  int nvars = 0;
  std::vector<Polynomial> polys;

  std::size_t size() const { return polys.size(); }
  friend bool operator==(const PolySet&, const PolySet&) = default;
};

// Sorts, removes duplicates and zero polynomials.
PolySet make_polyset(int nvars, std::vector<Polynomial> polys);

Polynomial apply_permutation(const Polynomial& p, const Perm& sigma);
PolySet apply_permutation(const PolySet& s, const Perm& sigma);

int product_degree(const PolySet& s, int var);

// Projection-first ordering: order[0] is eliminated first.
struct VariableOrdering {
  std::vector<int> order;

  int nvars() const { return static_cast<int>(order.size()); }
  std::string to_string() const;  // "x2>x1>x3"
  friend bool operator==(const VariableOrdering&, const VariableOrdering&) = default;
};

std::uint64_t factorial(int n);
std::vector<VariableOrdering> all_orderings(int nvars);
// Lexicographic rank of the projection sequence; the file format for
// per-ordering arrays indexes them this way (for 3 variables:
// 123, 132, 213, 231, 312, 321).
std::uint64_t ordering_index(const VariableOrdering& o);
VariableOrdering ordering_from_index(int nvars, std::uint64_t idx);
// Ordering of the renamed problem: (sigma . o)[k] = sigma[o[k]].
VariableOrdering transport(const Perm& sigma, const VariableOrdering& o);

struct ParseError : std::runtime_error {
  std::size_t offset;
  ParseError(std::size_t off, const std::string& msg);
};

// Grammar: polyset := poly (";" poly)* ; poly := ["+"|"-"] term (("+"|"-") term)* ;
// term := [coeff] ["*"] factor ("*"? factor)* | coeff ; factor := var ["^" uint] ;
// var := "x" uint (1-based).  Whitespace is insignificant; multiplication may
// be implicit.  Empty input parses to the empty set.
PolySet parse_polyset(const std::string& text, int nvars);

std::string to_string(const Polynomial& p);
std::string to_string(const PolySet& s);  // "; "-joined, canonical order

}  // namespace volab
