#include "volab/synth.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "volab/parallel.hpp"
#include "volab/projection.hpp"

namespace volab {

PolySet random_polyset(Rng& rng, const SynthSpec& spec) {
  while (true) {
    int npolys = spec.min_polys + rng.pick(spec.max_polys - spec.min_polys + 1);
    std::vector<Polynomial> polys;
    while (static_cast<int>(polys.size()) < npolys) {
      int nterms = 1 + rng.pick(spec.max_terms);
      std::vector<Term> terms;
      for (int t = 0; t < nterms; ++t) {
        Monomial m;
        for (int v = 0; v < spec.nvars; ++v) {
          int e = rng.pick(spec.max_degree + 1);
          if (e > 0) m.exps.emplace_back(v, e);
        }
        long long c = 1 + rng.pick(spec.coeff_bound);
        if (rng.pick(2)) c = -c;
        terms.push_back({std::move(m), Int(static_cast<long>(c))});
      }
      Polynomial p = Polynomial::from_terms(std::move(terms));
      if (!p.is_zero()) polys.push_back(std::move(p));
    }
    // Guarantee every variable occurs in the set.
    for (int v = 0; v < spec.nvars; ++v) {
      bool present = false;
      for (const auto& p : polys) present = present || p.var_degree(v) > 0;
      if (!present) {
        int target = rng.pick(static_cast<int>(polys.size()));
        int e = 1 + rng.pick(spec.max_degree);
        long long c = 1 + rng.pick(spec.coeff_bound);
        if (rng.pick(2)) c = -c;
        Polynomial extra =
            polys[target] + Polynomial::variable(v, e).mul_scalar(Int(static_cast<long>(c)));
        if (!extra.is_zero()) polys[target] = std::move(extra);
      }
    }
    PolySet s = make_polyset(spec.nvars, std::move(polys));
    bool ok = !s.polys.empty();
    for (int v = 0; ok && v < spec.nvars; ++v) ok = product_degree(s, v) > 0;
    if (ok) return s;
  }
}

std::vector<ProblemRecord> synthetic_problems(std::uint64_t seed, const CorpusSpec& spec) {
  Rng rng = stream(seed, "synth");
  std::vector<ProblemRecord> out;
  out.reserve(static_cast<std::size_t>(spec.records));
  for (int i = 0; i < spec.records; ++i) {
    ProblemRecord r;
    char idbuf[16];
    std::snprintf(idbuf, sizeof(idbuf), "p%04d", i);
    char srcbuf[16];
    std::snprintf(srcbuf, sizeof(srcbuf), "g%02d", i % std::max(spec.sources, 1));
    r.id = idbuf;
    r.source = srcbuf;
    r.polys = random_polyset(rng, spec.polys);
    out.push_back(std::move(r));
  }
  return out;
}

void attach_random_timings(std::vector<ProblemRecord>& records, std::uint64_t seed,
                           double timeout_prob, double limit) {
  Rng rng = stream(seed, "timings");
  for (auto& r : records) {
    std::size_t n = factorial(r.polys.nvars);
    std::set<double> used;
    r.timings.assign(n, std::nullopt);
    r.timeout_limit = limit;
    std::size_t finite_at = rng.below(n);  // keep at least this entry finite
    for (std::size_t i = 0; i < n; ++i) {
      if (i != finite_at && rng.unit() < timeout_prob) continue;
      double t = rng.unit() * limit;
      while (!used.insert(t).second) t = rng.unit() * limit;
      r.timings[i] = t;
    }
  }
}

void proxy_label(std::vector<ProblemRecord>& records, double quantile, bool censor, int threads) {
  std::vector<std::vector<double>> costs(records.size());
  parallel_for(records.size(), threads, [&](std::size_t i) {
    const PolySet& s = records[i].polys;
    auto orderings = all_orderings(s.nvars);
    std::vector<double> c;
    c.reserve(orderings.size());
    for (const auto& o : orderings) c.push_back(proxy_cost(s, o));
    costs[i] = std::move(c);
  });
  std::vector<double> all;
  for (const auto& c : costs) all.insert(all.end(), c.begin(), c.end());
  if (all.empty()) return;
  std::sort(all.begin(), all.end());
  std::size_t rank = static_cast<std::size_t>(std::ceil(quantile * static_cast<double>(all.size())));
  rank = std::min(std::max<std::size_t>(rank, 1), all.size());
  double limit = all[rank - 1];
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& r = records[i];
    r.timeout_limit = limit;
    r.timings.clear();
    bool any_finite = false;
    for (double c : costs[i]) {
      if (censor && c > limit) {
        r.timings.push_back(std::nullopt);
      } else {
        r.timings.push_back(c);
        any_finite = true;
      }
    }
    if (!any_finite) {
      // keep the record usable: the cheapest ordering stays observed
      std::size_t best = 0;
      for (std::size_t j = 1; j < costs[i].size(); ++j)
        if (costs[i][j] < costs[i][best]) best = j;
      r.timings[best] = costs[i][best];
    }
  }
}

void bias_labels(std::vector<ProblemRecord>& records, std::uint64_t seed, double bias) {
  Rng rng = stream(seed, "bias");
  for (auto& r : records) {
    if (!r.labeled()) throw DataError("bias_labels needs labeled records");
    if (rng.unit() < bias) {
      // sigma sends the best ordering's k-th variable to position k.
      VariableOrdering best = best_ordering(r);
      Perm sigma(best.order.size());
      for (std::size_t k = 0; k < best.order.size(); ++k)
        sigma[best.order[k]] = static_cast<int>(k);
      r = permute_record(r, sigma);
    } else {
      r = permute_record(r, rng.permutation(r.polys.nvars));
    }
  }
}

}  // namespace volab
