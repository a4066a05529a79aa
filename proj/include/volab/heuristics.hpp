#pragma once
// Human-designed variable ordering heuristics with seeded tie-breaking.
//
//   brown  min max-degree, then min max total-degree of monomials with the
//          variable, then min count of monomials with the variable
//   gmods  min degree in the product of the polynomials
//   t1     gmods' key, then min avg-of-avg degree, then min sum of degrees
//
// The ordering is built greedily one variable at a time.  By default every
// criterion is evaluated on the original set; reproject mode re-evaluates
// on the projected set after each choice.  Remaining ties are broken by a
// uniform seeded pick, so the same (set, seed) always yields the same
// ordering.

#include <cstdint>
#include <string>

#include "volab/polyset.hpp"

namespace volab {

struct TieBreaker {
  std::uint64_t seed = 0;
};

enum class HeuristicKind { brown, gmods, t1 };
enum class HeuristicMode { original_set, reproject };

VariableOrdering brown_order(const PolySet& s, TieBreaker tb,
                             HeuristicMode mode = HeuristicMode::original_set);
VariableOrdering gmods_order(const PolySet& s, TieBreaker tb,
                             HeuristicMode mode = HeuristicMode::original_set);
VariableOrdering t1_order(const PolySet& s, TieBreaker tb,
                          HeuristicMode mode = HeuristicMode::original_set);

VariableOrdering heuristic_order(HeuristicKind kind, const PolySet& s, TieBreaker tb,
                                 HeuristicMode mode = HeuristicMode::original_set);

HeuristicKind heuristic_from_name(const std::string& name);  // "brown" | "gmods" | "t1"
std::string heuristic_name(HeuristicKind kind);

}  // namespace volab
