#include "volab/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <set>

#include <json.hpp>

#include "volab/parallel.hpp"
#include "volab/rng.hpp"

namespace volab {

std::string dataset_mode_name(DatasetMode m) {
  switch (m) {
    case DatasetMode::imbalanced: return "imbalanced";
    case DatasetMode::balanced: return "balanced";
    case DatasetMode::augmented: return "augmented";
  }
  return "?";
}

DatasetMode dataset_mode_from_name(const std::string& name) {
  if (name == "imbalanced") return DatasetMode::imbalanced;
  if (name == "balanced") return DatasetMode::balanced;
  if (name == "augmented") return DatasetMode::augmented;
  throw std::invalid_argument("unknown dataset mode: " + name);
}

namespace {

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("expected a boolean, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    std::size_t comma = v.find(',', pos);
    std::string item = v.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

void apply_config_kv(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "problems") cfg.problems_path = value;
  else if (key == "out") cfg.out_dir = value;
  else if (key == "seed") cfg.seed = std::stoull(value);
  else if (key == "folds") cfg.folds = std::stoi(value);
  else if (key == "mode") cfg.mode = dataset_mode_from_name(value);
  else if (key == "paradigm") cfg.paradigm = paradigm_from_name(value);
  else if (key == "trials") cfg.trials = std::stoi(value);
  else if (key == "k-min") cfg.k_min = std::stoi(value);
  else if (key == "k-max") cfg.k_max = std::stoi(value);
  else if (key == "dedup") cfg.dedup_records = parse_bool(value);
  else if (key == "test-balanced") cfg.test_balanced = parse_bool(value);
  else if (key == "threads") cfg.threads = std::stoi(value);
  else if (key == "log-targets") cfg.log_targets = parse_bool(value);
  else if (key == "varreg-mode")
    cfg.varreg_mode = value == "projected" ? VarRegMode::projected : VarRegMode::original_set;
  else if (key == "heuristics") {
    cfg.baselines.clear();
    for (const auto& name : split_list(value)) cfg.baselines.push_back(heuristic_from_name(name));
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

ExperimentConfig config_from_file(const std::string& path) {
  ExperimentConfig cfg;
  std::string text = read_file(path);
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    std::string line = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = end == std::string::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError(path + ":" + std::to_string(line_no) + ": expected key = value");
    try {
      apply_config_kv(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::exception& e) {
      throw DataError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

namespace {

std::vector<ProblemRecord> apply_mode(const std::vector<ProblemRecord>& records, DatasetMode mode,
                                      std::uint64_t seed) {
  switch (mode) {
    case DatasetMode::imbalanced: return records;
    case DatasetMode::balanced: return balance(records, seed);
    case DatasetMode::augmented: return augment(records);
  }
  throw std::logic_error("unknown dataset mode");
}

StrategyReport evaluate_on(const TrainedStrategy& strategy,
                           const std::vector<ProblemRecord>& test) {
  std::vector<VariableOrdering> choices;
  choices.reserve(test.size());
  for (const auto& r : test) choices.push_back(strategy.choose(r.polys));
  return evaluate_strategy(choices, test);
}

}  // namespace

ExperimentResult run_experiment_on(const ExperimentConfig& cfg,
                                   std::vector<ProblemRecord> records) {
  if (cfg.folds < 2) throw std::invalid_argument("need at least two folds");
  if (cfg.mode == DatasetMode::augmented && cfg.paradigm == Paradigm::ordering_regression)
    throw std::invalid_argument(
        "augmented mode is redundant for ordering regression: that dataset already contains "
        "every variable permutation of each problem, so augmentation only duplicates rows");
  if (cfg.dedup_records) records = dedup(records);
  if (records.empty()) throw DataError("no records after ingestion");
  FoldAssignment fa = split_folds(records, cfg.folds, stream_seed(cfg.seed, "split"));

  ExperimentResult result;
  result.model_strategy_name = "knn-" + paradigm_name(cfg.paradigm);
  result.folds.resize(static_cast<std::size_t>(cfg.folds));

  parallel_for(static_cast<std::size_t>(cfg.folds), cfg.threads, [&](std::size_t fi) {
    int fold = static_cast<int>(fi);
    std::string tag = "fold" + std::to_string(fold);
    FoldOutcome out;
    out.fold = fold;
    std::vector<ProblemRecord> test_raw = records_in_fold(records, fa, fold);
    std::vector<ProblemRecord> train_raw = records_outside_fold(records, fa, fold);
    if (test_raw.empty() || train_raw.empty()) {
      result.folds[fi] = std::move(out);  // empty fold: no reports
      return;
    }
    std::vector<ProblemRecord> test =
        cfg.test_balanced ? balance(test_raw, stream_seed(cfg.seed, tag + "/balance-test"))
                          : test_raw;

    // Hyperparameter search never sees the test fold: it holds out one
    // training fold for validation and trains on the rest.
    int val_fold = -1;
    for (int f = 1; f < cfg.folds && val_fold < 0; ++f) {
      int candidate = (fold + f) % cfg.folds;
      if (!records_in_fold(records, fa, candidate).empty() && candidate != fold)
        val_fold = candidate;
    }
    std::vector<ProblemRecord> val_raw =
        val_fold >= 0 ? records_in_fold(records, fa, val_fold) : train_raw;
    std::vector<ProblemRecord> subtrain_raw;
    for (const auto& r : train_raw)
      if (val_fold < 0 || fa.fold_of(r.id) != val_fold) subtrain_raw.push_back(r);
    if (subtrain_raw.empty()) subtrain_raw = train_raw;

    SearchSpace space;
    space.k_min = cfg.k_min;
    space.k_max = cfg.k_max;
    space.trials = cfg.trials;
    space.seed = stream_seed(cfg.seed, tag + "/search");
    SearchResult search = random_search(
        space, apply_mode(subtrain_raw, cfg.mode, stream_seed(cfg.seed, tag + "/mode-subtrain")),
        val_raw, cfg.paradigm, cfg.varreg_mode, cfg.log_targets, /*threads=*/1);
    out.chosen = search.best;
    out.search_score = search.best_score;

    std::vector<ProblemRecord> train =
        apply_mode(train_raw, cfg.mode, stream_seed(cfg.seed, tag + "/mode-train"));
    TrainedStrategy strategy =
        fit_strategy(cfg.paradigm, search.best, train, cfg.varreg_mode, cfg.log_targets);
    out.train_records = train.size();
    out.test_records = test.size();
    out.reports[result.model_strategy_name] = evaluate_on(strategy, test);

    for (HeuristicKind h : cfg.baselines) {
      TieBreaker tb{stream_seed(cfg.seed, tag + "/heuristic/" + heuristic_name(h))};
      std::vector<VariableOrdering> choices;
      choices.reserve(test.size());
      for (const auto& r : test) choices.push_back(heuristic_order(h, r.polys, tb));
      out.reports[heuristic_name(h)] = evaluate_strategy(choices, test);
    }
    result.folds[fi] = std::move(out);
  });

  // Mean of each metric over the folds that actually ran.
  std::map<std::string, std::vector<const StrategyReport*>> by_strategy;
  for (const auto& fold : result.folds)
    for (const auto& [name, rep] : fold.reports) by_strategy[name].push_back(&rep);
  for (const auto& [name, reps] : by_strategy) {
    AggregateMetrics agg;
    for (const StrategyReport* r : reps) {
      agg.solved += static_cast<double>(r->solved);
      agg.time_accuracy += r->time_accuracy;
      agg.total_time += r->total_time;
      agg.avg_markup += r->avg_markup;
    }
    double n = static_cast<double>(reps.size());
    agg.solved /= n;
    agg.time_accuracy /= n;
    agg.total_time /= n;
    agg.avg_markup /= n;
    result.aggregate[name] = agg;
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.problems_path.empty()) throw std::invalid_argument("no problems file configured");
  if (cfg.out_dir.empty()) throw std::invalid_argument("no output directory configured");
  std::vector<ProblemRecord> records = load_problems(cfg.problems_path);
  ExperimentResult result = run_experiment_on(cfg, std::move(records));
  std::filesystem::path dir(cfg.out_dir);
  atomic_write_file((dir / "report.json").string(), experiment_report_json(cfg, result));
  atomic_write_file((dir / "report.csv").string(), experiment_report_csv(result));
  return result;
}

namespace {

nlohmann::json report_json_obj(const StrategyReport& r) {
  return nlohmann::json::parse(report_to_json(r));
}

}  // namespace

std::string experiment_report_json(const ExperimentConfig& cfg, const ExperimentResult& result) {
  nlohmann::json j;
  j["config"] = {
      {"seed", cfg.seed},
      {"folds", cfg.folds},
      {"mode", dataset_mode_name(cfg.mode)},
      {"paradigm", paradigm_name(cfg.paradigm)},
      {"trials", cfg.trials},
      {"k_min", cfg.k_min},
      {"k_max", cfg.k_max},
      {"dedup", cfg.dedup_records},
      {"test_balanced", cfg.test_balanced},
  };
  nlohmann::json folds = nlohmann::json::array();
  for (const auto& fold : result.folds) {
    nlohmann::json f;
    f["fold"] = fold.fold;
    f["train_records"] = fold.train_records;
    f["test_records"] = fold.test_records;
    f["chosen_k"] = fold.chosen.k;
    f["chosen_weighting"] = weighting_name(fold.chosen.weighting);
    f["search_score"] = fold.search_score;
    nlohmann::json reports;
    for (const auto& [name, rep] : fold.reports) reports[name] = report_json_obj(rep);
    f["strategies"] = std::move(reports);
    folds.push_back(std::move(f));
  }
  j["folds"] = std::move(folds);
  nlohmann::json agg;
  for (const auto& [name, m] : result.aggregate) {
    agg[name] = {{"solved", m.solved},
                 {"time_accuracy", m.time_accuracy},
                 {"total_time", m.total_time},
                 {"avg_markup", m.avg_markup}};
  }
  j["aggregate"] = std::move(agg);
  return j.dump(2) + "\n";
}

std::string experiment_report_csv(const ExperimentResult& result) {
  std::string out = "fold," + report_csv_header() + "\n";
  for (const auto& fold : result.folds)
    for (const auto& [name, rep] : fold.reports)
      out += std::to_string(fold.fold) + "," + report_csv_row(name, rep) + "\n";
  for (const auto& [name, m] : result.aggregate) {
    out += "mean," + name + ",," + format_double(m.solved) + "," +
           format_double(m.time_accuracy) + "," + format_double(m.total_time) + "," +
           format_double(m.avg_markup) + "\n";
  }
  return out;
}

}  // namespace volab
