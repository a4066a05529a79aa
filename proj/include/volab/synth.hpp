#pragma once
// Seeded synthetic corpora for experiments and tests: random polynomial
// sets grouped into sources, with timings attached either at random
// (tie-free) or by the projection proxy cost.

#include <cstdint>
#include <vector>

#include "volab/dataset.hpp"
#include "volab/rng.hpp"

namespace volab {

struct SynthSpec {
  int nvars = 3;
  int min_polys = 1;
  int max_polys = 4;
  int max_terms = 5;   // monomials per polynomial before combining
  int max_degree = 3;  // per-variable exponent bound
  int coeff_bound = 9; // nonzero coefficients in [-bound, bound]
};

// Every variable is guaranteed to occur somewhere in the set.
PolySet random_polyset(Rng& rng, const SynthSpec& spec);

struct CorpusSpec {
  SynthSpec polys;
  int records = 100;
  int sources = 10;
};

// Unlabeled records with ids p0000.. and sources g00.. (round-robin).
std::vector<ProblemRecord> synthetic_problems(std::uint64_t seed, const CorpusSpec& spec);

// Distinct random timings per ordering; a timeout entry replaces a timing
// with probability timeout_prob (at least one entry stays finite).
void attach_random_timings(std::vector<ProblemRecord>& records, std::uint64_t seed,
                           double timeout_prob = 0.0, double limit = 60.0);

// timings[i] := proxy cost of ordering i; every record's timeout_limit is
// set to the corpus-wide `quantile` cost.  With censor=true costs above
// the limit become timeouts.
void proxy_label(std::vector<ProblemRecord>& records, double quantile = 0.95,
                 bool censor = false, int threads = 1);

// With probability `bias` renames a record's variables so that its best
// ordering becomes ordering 0, otherwise applies a uniform random
// renaming: produces the skewed class distributions seen in harvested
// corpora.
void bias_labels(std::vector<ProblemRecord>& records, std::uint64_t seed, double bias);

}  // namespace volab
