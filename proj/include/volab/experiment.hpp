#pragma once
// The cross-validated experiment: grouped folds, per-fold dataset
// treatment (raw / balanced / augmented training data), hyperparameter
// search inside the training folds, heuristic baselines on the same test
// folds, and deterministic report files.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "volab/dataset.hpp"
#include "volab/heuristics.hpp"
#include "volab/metrics.hpp"
#include "volab/select.hpp"

namespace volab {

enum class DatasetMode { imbalanced, balanced, augmented };

std::string dataset_mode_name(DatasetMode m);
DatasetMode dataset_mode_from_name(const std::string& name);

struct ExperimentConfig {
  std::string problems_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int folds = 5;
  DatasetMode mode = DatasetMode::balanced;
  Paradigm paradigm = Paradigm::classification;
  int trials = 10;
  int k_min = 1;
  int k_max = 20;
  bool dedup_records = true;
  bool test_balanced = true;  // test folds are balanced unless disabled
  std::vector<HeuristicKind> baselines = {HeuristicKind::brown, HeuristicKind::gmods,
                                          HeuristicKind::t1};
  VarRegMode varreg_mode = VarRegMode::original_set;
  bool log_targets = false;
  int threads = 0;  // 0 = hardware concurrency
};

// Flat key = value lines ('#' comments); keys mirror the CLI flags.
ExperimentConfig config_from_file(const std::string& path);
void apply_config_kv(ExperimentConfig& cfg, const std::string& key, const std::string& value);

struct FoldOutcome {
  int fold = 0;
  std::size_t train_records = 0;
  std::size_t test_records = 0;
  KnnConfig chosen;
  double search_score = 0.0;
  // "knn-<paradigm>" plus one entry per heuristic baseline.
  std::map<std::string, StrategyReport> reports;
};

struct AggregateMetrics {
  double solved = 0.0;
  double time_accuracy = 0.0;
  double total_time = 0.0;
  double avg_markup = 0.0;
};

struct ExperimentResult {
  std::vector<FoldOutcome> folds;
  std::map<std::string, AggregateMetrics> aggregate;  // mean over folds
  std::string model_strategy_name;
};

// Runs the experiment on already-loaded records (dedup applied here when
// configured).  Deterministic for a fixed config, any thread count.
ExperimentResult run_experiment_on(const ExperimentConfig& cfg,
                                   std::vector<ProblemRecord> records);

// Loads cfg.problems_path, runs, and writes report.json / report.csv into
// cfg.out_dir (atomically).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string experiment_report_json(const ExperimentConfig& cfg, const ExperimentResult& result);
std::string experiment_report_csv(const ExperimentResult& result);

}  // namespace volab
