#pragma once
// Turning fitted models into variable-ordering choices, and the seeded
// randomized hyperparameter search scored by total selection time.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "volab/dataset.hpp"
#include "volab/knn.hpp"

namespace volab {

enum class Paradigm { classification, ordering_regression, variable_regression };

std::string paradigm_name(Paradigm p);             // "class" | "reg-ord" | "reg-var"
Paradigm paradigm_from_name(const std::string&);

// Optional restriction to a candidate subset of ordering indices.
using Candidates = std::vector<std::uint64_t>;

// Classification can only accept or reject its single prediction: if the
// predicted ordering is outside the candidate set this throws, since a
// classifier cannot rank the remaining options.
VariableOrdering choose_by_classifier(const KnnModel& m, const PolySet& s,
                                      const Candidates* candidates = nullptr);

// Argmin of the estimated time over all (or the candidate) orderings;
// ties go to the lowest ordering index.
VariableOrdering choose_by_ordering_regressor(const KnnModel& m, const PolySet& s,
                                              const Candidates* candidates = nullptr);
// Same selection layer with an arbitrary value estimate, used to check
// that the layer itself adds no error.
VariableOrdering choose_by_ordering_estimates(
    const std::function<double(const VariableOrdering&)>& estimate, int nvars,
    const Candidates* candidates = nullptr);

using Projector = std::function<PolySet(const PolySet&, int)>;

// Greedy loop: score every remaining variable on the current set, project
// the best one out, repeat.  Ties go to the lowest variable index.
VariableOrdering choose_by_variable_regressor(const KnnModel& m, const PolySet& s,
                                              const Projector& projector);
VariableOrdering choose_by_variable_regressor(const KnnModel& m, const PolySet& s);

// A trained strategy: the model plus how to use it.
struct TrainedStrategy {
  Paradigm paradigm = Paradigm::classification;
  KnnModel model;
  VarRegMode varreg_mode = VarRegMode::original_set;
  bool log_targets = false;
  int nvars = 0;

  VariableOrdering choose(const PolySet& s) const;
};

TrainedStrategy fit_strategy(Paradigm paradigm, KnnConfig cfg,
                             const std::vector<ProblemRecord>& train, VarRegMode varreg_mode,
                             bool log_targets);

// Total penalized time of the strategy's choices over the records.
double selection_time(const TrainedStrategy& strategy, const std::vector<ProblemRecord>& records);

std::string strategy_to_json(const TrainedStrategy& s);
TrainedStrategy strategy_from_json(const std::string& text);
void save_strategy(const std::string& path, const TrainedStrategy& s);
TrainedStrategy load_strategy(const std::string& path);

struct SearchSpace {
  int k_min = 1;
  int k_max = 20;
  std::vector<Weighting> weightings = {Weighting::uniform, Weighting::inverse_distance};
  int trials = 10;
  std::uint64_t seed = 0;
};

struct SearchResult {
  KnnConfig best;
  double best_score = 0.0;
  std::vector<double> trial_scores;
};

// Samples `trials` configurations, fits each on the training records and
// scores it by total penalized selection time on the validation records.
// Ties keep the first sampled configuration.  Trials may run in parallel;
// the reduction follows sampling order.
SearchResult random_search(const SearchSpace& space, const std::vector<ProblemRecord>& train,
                           const std::vector<ProblemRecord>& validation, Paradigm paradigm,
                           VarRegMode varreg_mode = VarRegMode::original_set,
                           bool log_targets = false, int threads = 1);

}  // namespace volab
