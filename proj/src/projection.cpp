#include "volab/projection.hpp"

#include <stdexcept>

namespace volab {

namespace {

// Dense coefficient list by power of `var`; empty means zero, back() nonzero.
using UPoly = std::vector<Polynomial>;

int udeg(const UPoly& u) { return static_cast<int>(u.size()) - 1; }

void utrim(UPoly& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

UPoly to_univar(const Polynomial& p, int var) {
  UPoly u(p.var_degree(var) + 1);
  for (const auto& t : p.terms()) {
    int e = t.mono.degree_of(var);
    Monomial rest;
    for (const auto& [v, ex] : t.mono.exps)
      if (v != var) rest.exps.emplace_back(v, ex);
    u[e] = u[e] + Polynomial::from_terms({Term{std::move(rest), t.coeff}});
  }
  utrim(u);
  return u;
}

Monomial mono_div(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t j = 0;
  for (const auto& [v, e] : a.exps) {
    int sub = 0;
    while (j < b.exps.size() && b.exps[j].first < v) throw std::logic_error("monomial not divisible");
    if (j < b.exps.size() && b.exps[j].first == v) sub = b.exps[j++].second;
    if (sub > e) throw std::logic_error("monomial not divisible");
    if (e - sub > 0) out.exps.emplace_back(v, e - sub);
  }
  if (j != b.exps.size()) throw std::logic_error("monomial not divisible");
  return out;
}

// Exact multivariate division; the quotient must exist.
Polynomial poly_div_exact(Polynomial a, const Polynomial& b) {
  if (b.is_zero()) throw std::logic_error("division by zero polynomial");
  std::vector<Term> q;
  while (!a.is_zero()) {
    const Term& la = a.terms().front();
    const Term& lb = b.terms().front();
    Monomial m = mono_div(la.mono, lb.mono);
    Int c, r;
    mpz_tdiv_qr(c.get_mpz_t(), r.get_mpz_t(), la.coeff.get_mpz_t(), lb.coeff.get_mpz_t());
    if (r != 0) throw std::logic_error("inexact polynomial division");
    Term t{std::move(m), std::move(c)};
    a = a - b * Polynomial::from_terms({t});
    q.push_back(std::move(t));
  }
  return Polynomial::from_terms(std::move(q));
}

// Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A mod B.
UPoly prem(UPoly a, const UPoly& b) {
  const Polynomial& lb = b.back();
  int db = udeg(b);
  int e = udeg(a) - db + 1;
  while (!a.empty() && udeg(a) >= db) {
    Polynomial la = a.back();
    int shift = udeg(a) - db;
    UPoly next(a.size() - 1);
    for (int i = 0; i < static_cast<int>(a.size()) - 1; ++i) {
      next[i] = lb * a[i];
      if (i >= shift) next[i] = next[i] - la * b[i - shift];
    }
    utrim(next);
    a = std::move(next);
    --e;
  }
  if (e > 0) {
    Polynomial scale = lb.pow(e);
    for (auto& c : a) c = c * scale;
  }
  return a;
}

UPoly udiv_exact(const UPoly& a, const Polynomial& d) {
  UPoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = a[i].is_zero() ? Polynomial() : poly_div_exact(a[i], d);
  return out;
}

}  // namespace

Polynomial resultant(const Polynomial& p, const Polynomial& q, int var) {
  if (p.var_degree(var) < 1 || q.var_degree(var) < 1)
    throw std::invalid_argument("resultant requires positive degree in the eliminated variable");
  UPoly a = to_univar(p, var);
  UPoly b = to_univar(q, var);
  int sign = 1;
  if (udeg(a) < udeg(b)) {
    std::swap(a, b);
    if ((udeg(a) * udeg(b)) % 2 != 0) sign = -sign;
  }
  Polynomial g = Polynomial::constant(1);
  Polynomial h = Polynomial::constant(1);
  while (true) {
    int da = udeg(a), db = udeg(b);
    int delta = da - db;
    if ((da & 1) && (db & 1)) sign = -sign;
    UPoly r = prem(a, b);
    a = std::move(b);
    Polynomial divisor = g * h.pow(delta);
    b = udiv_exact(r, divisor);
    utrim(b);
    if (b.empty()) return Polynomial();  // common factor in `var`
    g = a.back();
    if (delta > 0) h = poly_div_exact(g.pow(delta), h.pow(delta - 1));
    if (udeg(b) == 0) break;
  }
  int da = udeg(a);
  Polynomial res = poly_div_exact(b[0].pow(da), h.pow(da - 1));
  return sign < 0 ? -res : res;
}

Polynomial discriminant(const Polynomial& p, int var) {
  if (p.var_degree(var) < 2)
    throw std::invalid_argument("discriminant requires degree >= 2 in the variable");
  return resultant(p, p.derivative(var), var);
}

PolySet project_step(const PolySet& s, int var) {
  std::vector<Polynomial> out;
  std::vector<const Polynomial*> with_var;
  for (const auto& p : s.polys) {
    if (p.var_degree(var) >= 1)
      with_var.push_back(&p);
    else
      out.push_back(p);
  }
  for (const Polynomial* p : with_var) {
    UPoly u = to_univar(*p, var);
    out.push_back(u.back());  // leading coefficient w.r.t. var
    if (udeg(u) >= 2) out.push_back(discriminant(*p, var));
  }
  for (std::size_t i = 0; i < with_var.size(); ++i)
    for (std::size_t j = i + 1; j < with_var.size(); ++j)
      out.push_back(resultant(*with_var[i], *with_var[j], var));
  std::vector<Polynomial> reduced;
  reduced.reserve(out.size());
  for (auto& p : out) {
    if (p.is_zero() || p.is_constant()) continue;
    reduced.push_back(p.primitive_part());
  }
  return make_polyset(s.nvars, std::move(reduced));
}

ProjectionCascade build_cascade(const PolySet& s, const VariableOrdering& o) {
  if (o.nvars() != s.nvars || !is_permutation(o.order))
    throw std::invalid_argument("ordering must be a permutation of the variables");
  ProjectionCascade c;
  c.ordering = o;
  c.levels.push_back(s);
  for (int k = 0; k + 1 < s.nvars; ++k)
    c.levels.push_back(project_step(c.levels.back(), o.order[k]));
  return c;
}

double proxy_cost(const PolySet& s, const VariableOrdering& o) {
  ProjectionCascade c = build_cascade(s, o);
  double cost = 0.0;
  for (const auto& level : c.levels)
    for (const auto& p : level.polys) cost += 1.0 + static_cast<double>(p.total_degree());
  return cost;
}

}  // namespace volab
