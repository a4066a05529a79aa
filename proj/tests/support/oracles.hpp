#pragma once
// Independent reference implementations used only by tests.  These follow
// different algorithmic routes than the library (determinant expansion
// instead of remainder sequences, flat loops instead of shared helpers)
// so agreement is meaningful.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <vector>

#include "volab/dataset.hpp"
#include "volab/polyset.hpp"
#include "volab/projection.hpp"

namespace oracle {

using volab::Int;
using volab::Polynomial;
using volab::PolySet;
using volab::ProblemRecord;
using volab::Term;
using volab::VariableOrdering;

// Coefficient list of p by power of `var` (index = power), in polynomials
// over the remaining variables.
inline std::vector<Polynomial> coeffs_in(const Polynomial& p, int var) {
  std::vector<Polynomial> out(static_cast<std::size_t>(p.var_degree(var)) + 1);
  for (const auto& t : p.terms()) {
    int e = t.mono.degree_of(var);
    volab::Monomial rest;
    for (const auto& [v, ex] : t.mono.exps)
      if (v != var) rest.exps.emplace_back(v, ex);
    out[static_cast<std::size_t>(e)] =
        out[static_cast<std::size_t>(e)] + Polynomial::from_terms({Term{rest, t.coeff}});
  }
  return out;
}

// Determinant by expansion over rows with a column-subset memo; no
// division, exact for polynomial entries.
inline Polynomial det_expansion(const std::vector<std::vector<Polynomial>>& m) {
  std::size_t n = m.size();
  std::map<std::uint32_t, Polynomial> memo;
  // mask = set of still-available columns; row index = n - popcount(mask)
  std::function<Polynomial(std::uint32_t)> rec = [&](std::uint32_t mask) -> Polynomial {
    if (mask == 0) return Polynomial::constant(1);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::size_t row = n - static_cast<std::size_t>(__builtin_popcount(mask));
    Polynomial acc;
    int sign = 1;
    for (std::size_t col = 0; col < n; ++col) {
      if (!(mask & (1u << col))) continue;
      if (!m[row][col].is_zero()) {
        Polynomial sub = rec(mask & ~(1u << col));
        Polynomial contrib = m[row][col] * sub;
        acc = sign > 0 ? acc + contrib : acc - contrib;
      }
      sign = -sign;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return rec(n == 32 ? 0xffffffffu : ((1u << n) - 1u));
}

// Resultant as the determinant of the Sylvester matrix.
inline Polynomial sylvester_resultant(const Polynomial& p, const Polynomial& q, int var) {
  std::vector<Polynomial> a = coeffs_in(p, var);
  std::vector<Polynomial> b = coeffs_in(q, var);
  std::size_t dp = a.size() - 1, dq = b.size() - 1;
  std::size_t n = dp + dq;
  std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n));
  for (std::size_t r = 0; r < dq; ++r)
    for (std::size_t c = 0; c <= dp; ++c) m[r][r + c] = a[dp - c];
  for (std::size_t r = 0; r < dp; ++r)
    for (std::size_t c = 0; c <= dq; ++c) m[dq + r][r + c] = b[dq - c];
  return det_expansion(m);
}

// Projection step following the operator definition literally; shares only
// the resultant/discriminant primitives with the library.
inline PolySet project_step_reference(const PolySet& s, int var) {
  std::vector<Polynomial> out;
  std::vector<Polynomial> active;
  for (const auto& p : s.polys) {
    if (p.var_degree(var) >= 1)
      active.push_back(p);
    else
      out.push_back(p);
  }
  for (const auto& p : active) {
    out.push_back(coeffs_in(p, var).back());
    if (p.var_degree(var) >= 2) out.push_back(volab::resultant(p, p.derivative(var), var));
  }
  for (std::size_t i = 0; i < active.size(); ++i)
    for (std::size_t j = i + 1; j < active.size(); ++j)
      out.push_back(volab::resultant(active[i], active[j], var));
  std::vector<Polynomial> keep;
  for (const auto& p : out)
    if (!p.is_zero() && !p.is_constant()) keep.push_back(p.primitive_part());
  return volab::make_polyset(s.nvars, std::move(keep));
}

inline double cascade_cost_reference(const PolySet& s, const VariableOrdering& o) {
  double cost = 0.0;
  PolySet level = s;
  for (int k = 0; k < s.nvars; ++k) {
    for (const auto& p : level.polys) cost += 1.0 + static_cast<double>(p.total_degree());
    if (k + 1 < s.nvars) level = project_step_reference(level, o.order[k]);
  }
  return cost;
}

// Flat-loop k-nearest-neighbour prediction over standardized rows.
struct BruteKnn {
  Eigen::MatrixXd x;  // standardized training rows
  Eigen::VectorXd y;
  int k = 1;
  bool inverse_distance = false;

  std::vector<std::pair<double, int>> ranked(const Eigen::VectorXd& q) const {
    std::vector<std::pair<double, int>> d;
    for (int i = 0; i < x.rows(); ++i) {
      double acc = 0;
      for (int j = 0; j < x.cols(); ++j) acc += (x(i, j) - q[j]) * (x(i, j) - q[j]);
      d.emplace_back(std::sqrt(acc), i);
    }
    std::sort(d.begin(), d.end());
    d.resize(static_cast<std::size_t>(std::min<int>(k, static_cast<int>(d.size()))));
    return d;
  }

  int classify(const Eigen::VectorXd& q) const {
    auto nn = ranked(q);
    bool exact = inverse_distance && nn[0].first == 0.0;
    std::map<int, double> votes;
    for (auto& [dist, idx] : nn) {
      if (exact && dist != 0.0) continue;
      votes[static_cast<int>(y[idx])] += inverse_distance && !exact ? 1.0 / dist : 1.0;
    }
    int best = -1;
    double w = -1;
    for (auto& [label, weight] : votes)
      if (weight > w) {
        best = label;
        w = weight;
      }
    return best;
  }

  double regress(const Eigen::VectorXd& q) const {
    auto nn = ranked(q);
    bool exact = inverse_distance && nn[0].first == 0.0;
    double acc = 0, wsum = 0;
    for (auto& [dist, idx] : nn) {
      if (exact && dist != 0.0) continue;
      double w = inverse_distance && !exact ? 1.0 / dist : 1.0;
      acc += w * y[idx];
      wsum += w;
    }
    return acc / wsum;
  }
};

// Straight-line re-implementation of the strategy metrics.
struct ReferenceReport {
  std::size_t solved = 0;
  double accuracy = 0, total = 0, markup = 0;
};

inline ReferenceReport evaluate_reference(const std::vector<VariableOrdering>& choices,
                                          const std::vector<ProblemRecord>& records) {
  ReferenceReport rep;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    auto idx = volab::ordering_index(choices[i]);
    double opt = std::numeric_limits<double>::infinity();
    for (const auto& t : r.timings)
      opt = std::min(opt, t ? *t : 2 * r.timeout_limit);
    double chosen = r.timings[idx] ? *r.timings[idx] : 2 * r.timeout_limit;
    if (r.timings[idx]) {
      ++rep.solved;
      if (*r.timings[idx] == opt) rep.accuracy += 1;
    }
    rep.total += chosen;
    rep.markup += (chosen - opt) / (opt + 1);
  }
  if (!records.empty()) {
    rep.accuracy /= static_cast<double>(records.size());
    rep.markup /= static_cast<double>(records.size());
  }
  return rep;
}

}  // namespace oracle
