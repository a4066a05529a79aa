#include "volab/heuristics.hpp"

#include <stdexcept>

#include "volab/features.hpp"
#include "volab/projection.hpp"
#include "volab/rng.hpp"

namespace volab {

namespace {

std::vector<Rat> criteria(HeuristicKind kind, const PolySet& s, int var) {
  ExtractionVectors i1 = extraction_vector(s, var, IKind::I1);
  switch (kind) {
    case HeuristicKind::brown:
      return {
          aggregate_exact(Agg::max, Agg::max, i1),
          aggregate_exact(Agg::max, Agg::max, extraction_vector(s, var, IKind::I2)),
          aggregate_exact(Agg::sum, Agg::sum, extraction_vector(s, var, IKind::I3)),
      };
    case HeuristicKind::gmods:
      return {aggregate_exact(Agg::sum, Agg::max, i1)};
    case HeuristicKind::t1:
      return {
          aggregate_exact(Agg::sum, Agg::max, i1),
          aggregate_exact(Agg::avg, Agg::avg, i1),
          aggregate_exact(Agg::sum, Agg::sum, i1),
      };
  }
  throw std::logic_error("unknown heuristic");
}

}  // namespace

VariableOrdering heuristic_order(HeuristicKind kind, const PolySet& s, TieBreaker tb,
                                 HeuristicMode mode) {
  if (s.nvars < 1) throw std::invalid_argument("need at least one variable");
  Rng rng(stream_seed(tb.seed, heuristic_name(kind)));
  std::vector<int> remaining;
  for (int v = 0; v < s.nvars; ++v) remaining.push_back(v);
  PolySet current = s;
  VariableOrdering out;
  while (!remaining.empty()) {
    std::vector<int> best;
    std::vector<Rat> best_key;
    for (int v : remaining) {
      std::vector<Rat> key = criteria(kind, current, v);
      if (best.empty() || key < best_key) {
        best = {v};
        best_key = std::move(key);
      } else if (key == best_key) {
        best.push_back(v);
      }
    }
    int chosen = best.size() == 1 ? best[0] : best[rng.pick(static_cast<int>(best.size()))];
    out.order.push_back(chosen);
    std::erase(remaining, chosen);
    if (mode == HeuristicMode::reproject && !remaining.empty())
      current = project_step(current, chosen);
  }
  return out;
}

VariableOrdering brown_order(const PolySet& s, TieBreaker tb, HeuristicMode mode) {
  return heuristic_order(HeuristicKind::brown, s, tb, mode);
}
VariableOrdering gmods_order(const PolySet& s, TieBreaker tb, HeuristicMode mode) {
  return heuristic_order(HeuristicKind::gmods, s, tb, mode);
}
VariableOrdering t1_order(const PolySet& s, TieBreaker tb, HeuristicMode mode) {
  return heuristic_order(HeuristicKind::t1, s, tb, mode);
}

HeuristicKind heuristic_from_name(const std::string& name) {
  if (name == "brown") return HeuristicKind::brown;
  if (name == "gmods") return HeuristicKind::gmods;
  if (name == "t1") return HeuristicKind::t1;
  throw std::invalid_argument("unknown heuristic: " + name);
}

std::string heuristic_name(HeuristicKind kind) {
  switch (kind) {
    case HeuristicKind::brown: return "brown";
    case HeuristicKind::gmods: return "gmods";
    case HeuristicKind::t1: return "t1";
  }
  return "?";
}

}  // namespace volab
