#include "volab/polyset.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace volab {

int Monomial::degree_of(int var) const {
  for (const auto& [v, e] : exps)
    if (v == var) return e;
  return 0;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& [v, e] : exps) d += e;
  return d;
}

int lex_cmp(const Monomial& a, const Monomial& b) {
  std::size_t i = 0, j = 0;
  while (i < a.exps.size() || j < b.exps.size()) {
    int va = i < a.exps.size() ? a.exps[i].first : -1;
    int vb = j < b.exps.size() ? b.exps[j].first : -1;
    if (va == vb) {
      if (a.exps[i].second != b.exps[j].second)
        return a.exps[i].second < b.exps[j].second ? -1 : 1;
      ++i, ++j;
    } else if (vb == -1 || (va != -1 && va < vb)) {
      return 1;  // a has a positive exponent where b has zero
    } else {
      return -1;
    }
  }
  return 0;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0, j = 0;
  while (i < a.exps.size() || j < b.exps.size()) {
    if (j == b.exps.size() || (i < a.exps.size() && a.exps[i].first < b.exps[j].first))
      out.exps.push_back(a.exps[i++]);
    else if (i == a.exps.size() || b.exps[j].first < a.exps[i].first)
      out.exps.push_back(b.exps[j++]);
    else {
      out.exps.emplace_back(a.exps[i].first, a.exps[i].second + b.exps[j].second);
      ++i, ++j;
    }
  }
  return out;
}

Polynomial Polynomial::constant(Int c) {
  Polynomial p;
  if (c != 0) p.terms_.push_back({Monomial{}, std::move(c)});
  return p;
}

Polynomial Polynomial::variable(int var, int exp) {
  Polynomial p;
  Monomial m;
  if (exp > 0) m.exps.emplace_back(var, exp);
  p.terms_.push_back({std::move(m), Int(1)});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return lex_cmp(a.mono, b.mono) > 0; });
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
      p.terms_.back().coeff += t.coeff;
    else
      p.terms_.push_back(std::move(t));
    if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  }
  return p;
}

int Polynomial::var_degree(int var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree_of(var));
  return d;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
  return d;
}

int Polynomial::max_var() const {
  int m = -1;
  for (const auto& t : terms_)
    for (const auto& [v, e] : t.mono.exps) m = std::max(m, v);
  return m;
}

const Int& Polynomial::leading_coeff() const {
  static const Int zero(0);
  return terms_.empty() ? zero : terms_.front().coeff;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Term> out;
  out.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    int c = i == a.terms_.size()   ? -1
            : j == b.terms_.size() ? 1
                                   : lex_cmp(a.terms_[i].mono, b.terms_[j].mono);
    if (c > 0)
      out.push_back(a.terms_[i++]);
    else if (c < 0)
      out.push_back(b.terms_[j++]);
    else {
      Int s = a.terms_[i].coeff + b.terms_[j].coeff;
      if (s != 0) out.push_back({a.terms_[i].mono, std::move(s)});
      ++i, ++j;
    }
  }
  Polynomial p;
  p.terms_ = std::move(out);
  return p;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  struct LexGreater {
    bool operator()(const Monomial& x, const Monomial& y) const { return lex_cmp(x, y) > 0; }
  };
  std::map<Monomial, Int, LexGreater> acc;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) acc[mono_mul(ta.mono, tb.mono)] += ta.coeff * tb.coeff;
  Polynomial p;
  for (auto& [m, c] : acc)
    if (c != 0) p.terms_.push_back({m, std::move(c)});
  return p;
}

Polynomial Polynomial::pow(int e) const {
  Polynomial r = Polynomial::constant(1);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

Polynomial Polynomial::derivative(int var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    int e = t.mono.degree_of(var);
    if (e == 0) continue;
    Monomial m;
    for (const auto& [v, ex] : t.mono.exps) {
      if (v == var) {
        if (ex > 1) m.exps.emplace_back(v, ex - 1);
      } else {
        m.exps.emplace_back(v, ex);
      }
    }
    out.push_back({std::move(m), t.coeff * e});
  }
  return from_terms(std::move(out));
}

Int Polynomial::content() const {
  Int g(0);
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Polynomial Polynomial::primitive_part() const {
  if (is_zero()) return *this;
  Int c = content();
  if (leading_coeff() < 0) c = -c;
  return div_scalar_exact(c);
}

Polynomial Polynomial::mul_scalar(const Int& c) const {
  if (c == 0) return Polynomial();
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Polynomial Polynomial::div_scalar_exact(const Int& c) const {
  if (c == 0) throw std::logic_error("division by zero scalar");
  Polynomial p = *this;
  for (auto& t : p.terms_) {
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
    if (r != 0) throw std::logic_error("inexact scalar division");
    t.coeff = std::move(q);
  }
  return p;
}

int poly_cmp(const Polynomial& a, const Polynomial& b) {
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
    if (int c = lex_cmp(ta[i].mono, tb[i].mono)) return c;
    if (int c = cmp(ta[i].coeff, tb[i].coeff)) return c < 0 ? -1 : 1;
  }
  if (ta.size() != tb.size()) return ta.size() < tb.size() ? -1 : 1;
  return 0;
}

Perm identity_perm(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

Perm inverse(const Perm& p) {
  Perm inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
  return inv;
}

bool is_permutation(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

PolySet make_polyset(int nvars, std::vector<Polynomial> polys) {
  std::erase_if(polys, [](const Polynomial& p) { return p.is_zero(); });
  std::sort(polys.begin(), polys.end(),
            [](const Polynomial& a, const Polynomial& b) { return poly_cmp(a, b) < 0; });
  polys.erase(std::unique(polys.begin(), polys.end()), polys.end());
  return PolySet{nvars, std::move(polys)};
}

Polynomial apply_permutation(const Polynomial& p, const Perm& sigma) {
  std::vector<Term> out;
  out.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    Monomial m;
    for (const auto& [v, e] : t.mono.exps) m.exps.emplace_back(sigma[v], e);
    std::sort(m.exps.begin(), m.exps.end());
    out.push_back({std::move(m), t.coeff});
  }
  return Polynomial::from_terms(std::move(out));
}

PolySet apply_permutation(const PolySet& s, const Perm& sigma) {
  std::vector<Polynomial> out;
  out.reserve(s.polys.size());
  for (const auto& p : s.polys) out.push_back(apply_permutation(p, sigma));
  return make_polyset(s.nvars, std::move(out));
}

int product_degree(const PolySet& s, int var) {
  int d = 0;
  for (const auto& p : s.polys) d += p.var_degree(var);
  return d;
}

std::string VariableOrdering::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i) out += '>';
    out += 'x';
    out += std::to_string(order[i] + 1);
  }
  return out;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::vector<VariableOrdering> all_orderings(int nvars) {
  std::vector<int> cur(nvars);
  for (int i = 0; i < nvars; ++i) cur[i] = i;
  std::vector<VariableOrdering> out;
  out.reserve(factorial(nvars));
  do {
    out.push_back(VariableOrdering{cur});
  } while (std::next_permutation(cur.begin(), cur.end()));
  return out;
}

std::uint64_t ordering_index(const VariableOrdering& o) {
  int n = o.nvars();
  std::uint64_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (o.order[j] < o.order[i]) ++smaller;
    rank += static_cast<std::uint64_t>(smaller) * factorial(n - 1 - i);
  }
  return rank;
}

VariableOrdering ordering_from_index(int nvars, std::uint64_t idx) {
  std::vector<int> pool(nvars);
  for (int i = 0; i < nvars; ++i) pool[i] = i;
  std::vector<int> order;
  order.reserve(nvars);
  for (int i = nvars - 1; i >= 0; --i) {
    std::uint64_t f = factorial(i);
    std::size_t k = static_cast<std::size_t>(idx / f);
    idx %= f;
    order.push_back(pool[k]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return VariableOrdering{std::move(order)};
}

VariableOrdering transport(const Perm& sigma, const VariableOrdering& o) {
  VariableOrdering out;
  out.order.reserve(o.order.size());
  for (int v : o.order) out.order.push_back(sigma[v]);
  return out;
}

ParseError::ParseError(std::size_t off, const std::string& msg)
    : std::runtime_error("byte " + std::to_string(off) + ": " + msg), offset(off) {}

namespace {

struct TextParser {
  const std::string& s;
  int nvars;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eof() const { return pos >= s.size(); }
  char peek() const { return pos < s.size() ? s[pos] : '\0'; }

  [[noreturn]] void fail(std::size_t off, const std::string& msg) { throw ParseError(off, msg); }

  bool at_digit() const { return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])); }

  std::string take_digits() {
    std::size_t start = pos;
    while (at_digit()) ++pos;
    return s.substr(start, pos - start);
  }

  // factor := var ["^" uint]
  void parse_factor(std::map<int, int>& exps) {
    std::size_t idx_off = pos;
    ++pos;  // 'x'
    if (!at_digit()) fail(pos, "expected variable index after 'x'");
    Int v(take_digits());
    if (v < 1 || v > nvars) fail(idx_off, "variable index out of range (nvars=" + std::to_string(nvars) + ")");
    int var = static_cast<int>(v.get_si()) - 1;
    int exp = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos;
      skip_ws();
      if (!at_digit()) fail(pos, "expected exponent after '^'");
      Int e(take_digits());
      if (e > 1000000) fail(pos, "exponent too large");
      exp = static_cast<int>(e.get_si());
    }
    exps[var] += exp;
  }

  Term parse_term(int sign) {
    skip_ws();
    std::size_t start = pos;
    Int coeff(1);
    bool any = false;
    if (at_digit()) {
      coeff = Int(take_digits());
      any = true;
      skip_ws();
      if (peek() == '*') {
        ++pos;
        skip_ws();
        if (peek() != 'x') fail(pos, "expected variable after '*'");
      }
    }
    std::map<int, int> exps;
    while (peek() == 'x') {
      parse_factor(exps);
      any = true;
      skip_ws();
      if (peek() == '*') {
        ++pos;
        skip_ws();
        if (peek() != 'x') fail(pos, "expected variable after '*'");
      }
    }
    if (!any) fail(start, "expected term");
    Monomial m;
    for (const auto& [v, e] : exps)
      if (e > 0) m.exps.emplace_back(v, e);
    return Term{std::move(m), sign > 0 ? coeff : Int(-coeff)};
  }

  Polynomial parse_poly() {
    skip_ws();
    std::size_t start = pos;
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      if (peek() == '-') sign = -1;
      ++pos;
    }
    std::vector<Term> terms;
    terms.push_back(parse_term(sign));
    while (true) {
      skip_ws();
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos;
        terms.push_back(parse_term(sign));
      } else {
        break;
      }
    }
    Polynomial p = Polynomial::from_terms(std::move(terms));
    if (p.is_zero()) fail(start, "zero polynomial");
    return p;
  }

  PolySet parse_set() {
    skip_ws();
    if (eof()) return PolySet{nvars, {}};
    std::vector<Polynomial> polys;
    polys.push_back(parse_poly());
    skip_ws();
    while (peek() == ';') {
      ++pos;
      polys.push_back(parse_poly());
      skip_ws();
    }
    if (!eof()) fail(pos, "unexpected character '" + std::string(1, peek()) + "'");
    return make_polyset(nvars, std::move(polys));
  }
};

}  // namespace

PolySet parse_polyset(const std::string& text, int nvars) {
  if (nvars < 1) throw std::invalid_argument("nvars must be positive");
  TextParser p{text, nvars};
  return p.parse_set();
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool neg = t.coeff < 0;
    Int mag = abs(t.coeff);
    if (first) {
      if (neg) out += '-';
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    bool need_coeff = mag != 1 || t.mono.is_constant();
    if (need_coeff) out += mag.get_str();
    for (std::size_t i = 0; i < t.mono.exps.size(); ++i) {
      if (need_coeff || i > 0) out += '*';
      out += 'x';
      out += std::to_string(t.mono.exps[i].first + 1);
      if (t.mono.exps[i].second > 1) {
        out += '^';
        out += std::to_string(t.mono.exps[i].second);
      }
    }
  }
  return out;
}

std::string to_string(const PolySet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.polys.size(); ++i) {
    if (i) out += "; ";
    out += to_string(s.polys[i]);
  }
  return out;
}

}  // namespace volab
