#include "volab/smtlib.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <unordered_map>

namespace volab {

namespace {

struct Sexpr {
  // Leaf if children empty and !list; atom holds the token.
  std::string atom;
  std::vector<Sexpr> children;
  bool list = false;
  std::size_t offset = 0;
};

struct SexprParser {
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size()) {
      char c = s[pos];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else if (c == ';') {
        while (pos < s.size() && s[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip();
    return pos >= s.size();
  }

  Sexpr next() {
    skip();
    if (pos >= s.size()) throw ParseError(pos, "unexpected end of input");
    std::size_t start = pos;
    if (s[pos] == '(') {
      ++pos;
      Sexpr e;
      e.list = true;
      e.offset = start;
      while (true) {
        skip();
        if (pos >= s.size()) throw ParseError(start, "unclosed '('");
        if (s[pos] == ')') {
          ++pos;
          return e;
        }
        e.children.push_back(next());
      }
    }
    if (s[pos] == ')') throw ParseError(pos, "unexpected ')'");
    std::size_t tok_start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' &&
           s[pos] != ')' && s[pos] != ';')
      ++pos;
    Sexpr e;
    e.atom = s.substr(tok_start, pos - tok_start);
    e.offset = tok_start;
    return e;
  }
};

struct MonoLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return lex_cmp(a, b) > 0; }
};

// Polynomial with rational coefficients, transient while reading terms.
using RatPoly = std::map<Monomial, Rat, MonoLexGreater>;

RatPoly rp_const(const Rat& c) {
  RatPoly p;
  if (c != 0) p[Monomial{}] = c;
  return p;
}

RatPoly rp_add(const RatPoly& a, const RatPoly& b) {
  RatPoly out = a;
  for (const auto& [m, c] : b) {
    auto it = out.find(m);
    if (it == out.end()) {
      out[m] = c;
    } else {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

RatPoly rp_neg(const RatPoly& a) {
  RatPoly out = a;
  for (auto& [m, c] : out) c = -c;
  return out;
}

RatPoly rp_mul(const RatPoly& a, const RatPoly& b) {
  RatPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m = mono_mul(ma, mb);
      auto it = out.find(m);
      Rat prod = ca * cb;
      if (it == out.end()) {
        if (prod != 0) out[m] = prod;
      } else {
        it->second += prod;
        if (it->second == 0) out.erase(it);
      }
    }
  return out;
}

bool is_numeral(const std::string& tok) {
  if (tok.empty()) return false;
  bool dot = false;
  for (std::size_t i = 0; i < tok.size(); ++i) {
    if (tok[i] == '.' && !dot && i > 0) {
      dot = true;
    } else if (!std::isdigit(static_cast<unsigned char>(tok[i]))) {
      return false;
    }
  }
  return true;
}

Rat numeral_value(const std::string& tok) {
  auto dot = tok.find('.');
  if (dot == std::string::npos) return Rat(Int(tok));
  std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
  std::size_t frac = tok.size() - dot - 1;
  Int den(1);
  for (std::size_t i = 0; i < frac; ++i) den *= 10;
  Rat q(Int(digits), den);
  q.canonicalize();
  return q;
}

struct Reader {
  std::unordered_map<std::string, int> vars;
  std::vector<Polynomial> atoms;

  [[noreturn]] static void fail(const Sexpr& e, const std::string& msg) {
    throw ParseError(e.offset, msg);
  }

  // Numeral or (- numeral) or (/ num num); used for rational constants.
  bool try_constant(const Sexpr& e, Rat& out) {
    if (!e.list) {
      if (!is_numeral(e.atom)) return false;
      out = numeral_value(e.atom);
      return true;
    }
    if (e.children.empty() || e.children[0].list) return false;
    const std::string& op = e.children[0].atom;
    if (op == "-" && e.children.size() == 2) {
      Rat inner;
      if (!try_constant(e.children[1], inner)) return false;
      out = -inner;
      return true;
    }
    if (op == "/" && e.children.size() == 3) {
      Rat num, den;
      if (!try_constant(e.children[1], num) || !try_constant(e.children[2], den)) return false;
      if (den == 0) fail(e, "division by zero");
      out = num / den;
      return true;
    }
    return false;
  }

  RatPoly term(const Sexpr& e) {
    Rat c;
    if (try_constant(e, c)) return rp_const(c);
    if (!e.list) {
      auto it = vars.find(e.atom);
      if (it == vars.end()) fail(e, "undeclared symbol '" + e.atom + "'");
      RatPoly p;
      Monomial m;
      m.exps.emplace_back(it->second, 1);
      p[m] = Rat(1);
      return p;
    }
    if (e.children.empty() || e.children[0].list) fail(e, "malformed term");
    const std::string& op = e.children[0].atom;
    if (op == "+") {
      RatPoly acc;
      for (std::size_t i = 1; i < e.children.size(); ++i) acc = rp_add(acc, term(e.children[i]));
      return acc;
    }
    if (op == "-") {
      if (e.children.size() == 2) return rp_neg(term(e.children[1]));
      if (e.children.size() < 2) fail(e, "malformed '-'");
      RatPoly acc = term(e.children[1]);
      for (std::size_t i = 2; i < e.children.size(); ++i)
        acc = rp_add(acc, rp_neg(term(e.children[i])));
      return acc;
    }
    if (op == "*") {
      RatPoly acc = rp_const(Rat(1));
      for (std::size_t i = 1; i < e.children.size(); ++i) acc = rp_mul(acc, term(e.children[i]));
      return acc;
    }
    if (op == "/") fail(e, "unsupported operator: '/' of non-numerals");
    fail(e, "unsupported operator: '" + op + "'");
  }

  void atom(const Sexpr& lhs, const Sexpr& rhs) {
    RatPoly diff = rp_add(term(lhs), rp_neg(term(rhs)));
    if (diff.empty()) return;  // trivially zero difference carries no polynomial
    Int den_lcm(1);
    for (const auto& [m, c] : diff)
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    std::vector<Term> terms;
    for (const auto& [m, c] : diff) {
      Rat scaled = c * Rat(den_lcm);
      terms.push_back({m, Int(scaled.get_num())});
    }
    Polynomial p = Polynomial::from_terms(std::move(terms));
    if (p.leading_coeff() < 0) p = -p;
    atoms.push_back(std::move(p));
  }

  void formula(const Sexpr& e) {
    if (!e.list) {
      if (e.atom == "true" || e.atom == "false") return;
      fail(e, "unsupported operator: '" + e.atom + "'");
    }
    if (e.children.empty() || e.children[0].list) fail(e, "malformed formula");
    const std::string& op = e.children[0].atom;
    if (op == "and" || op == "or" || op == "not" || op == "=>") {
      for (std::size_t i = 1; i < e.children.size(); ++i) formula(e.children[i]);
      return;
    }
    if (op == "<" || op == ">" || op == "<=" || op == ">=" || op == "=" || op == "distinct") {
      if (e.children.size() < 3) fail(e, "relation needs two arguments");
      for (std::size_t i = 1; i + 1 < e.children.size(); ++i) atom(e.children[i], e.children[i + 1]);
      return;
    }
    fail(e, "unsupported operator: '" + op + "'");
  }

  void command(const Sexpr& e) {
    if (!e.list || e.children.empty() || e.children[0].list) fail(e, "expected command");
    const std::string& head = e.children[0].atom;
    if (head == "declare-fun") {
      if (e.children.size() != 4 || e.children[1].list || !e.children[2].list ||
          !e.children[2].children.empty() || e.children[3].list || e.children[3].atom != "Real")
        fail(e, "only nullary Real declarations are supported");
      declare(e.children[1]);
    } else if (head == "declare-const") {
      if (e.children.size() != 3 || e.children[1].list || e.children[2].list ||
          e.children[2].atom != "Real")
        fail(e, "only Real declarations are supported");
      declare(e.children[1]);
    } else if (head == "assert") {
      if (e.children.size() != 2) fail(e, "malformed assert");
      formula(e.children[1]);
    } else if (head == "set-logic" || head == "set-info" || head == "set-option" ||
               head == "check-sat" || head == "exit" || head == "get-model") {
      // no polynomial content
    } else {
      fail(e, "unsupported command: '" + head + "'");
    }
  }

  void declare(const Sexpr& name) {
    if (name.list) fail(name, "expected symbol");
    if (vars.count(name.atom)) fail(name, "symbol redeclared: '" + name.atom + "'");
    int idx = static_cast<int>(vars.size());
    vars.emplace(name.atom, idx);
  }
};

}  // namespace

PolySet parse_smtlib_atoms(const std::string& text) {
  SexprParser sp{text};
  Reader rd;
  while (!sp.eof()) rd.command(sp.next());
  int nvars = static_cast<int>(rd.vars.size());
  if (nvars == 0 && !rd.atoms.empty()) throw ParseError(0, "atoms without declared variables");
  return make_polyset(std::max(nvars, 1), std::move(rd.atoms));
}

}  // namespace volab
