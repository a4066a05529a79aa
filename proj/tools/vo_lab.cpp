// vo-lab: variable-ordering selection laboratory.
//
// Subcommands cover the full pipeline: parse, featurize, proxy-label,
// dataset transforms, heuristic baselines, training, evaluation,
// comparison, and the cross-validated experiment.  Exit codes: 0 ok,
// 1 usage error, 2 data error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>

#include "volab/dataset.hpp"
#include "volab/experiment.hpp"
#include "volab/heuristics.hpp"
#include "volab/io.hpp"
#include "volab/metrics.hpp"
#include "volab/parallel.hpp"
#include "volab/projection.hpp"
#include "volab/select.hpp"
#include "volab/smtlib.hpp"
#include "volab/synth.hpp"

using namespace volab;

namespace {

std::string csv_matrix(const std::vector<std::string>& names, const Eigen::MatrixXd& x,
                       const std::string& extra_name, const std::vector<std::string>& extra) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  if (!extra_name.empty()) out += "," + extra_name;
  out += '\n';
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      if (c) out += ',';
      out += format_double(x(r, c));
    }
    if (!extra_name.empty()) out += "," + extra[static_cast<std::size_t>(r)];
    out += '\n';
  }
  return out;
}

struct ParseCmd {
  std::string input;
  std::string text;
  std::string format = "text";
  int nvars = 0;
  bool emit_record = false;
  std::string id = "p0";
  std::string source = "unknown";

  void run() const {
    std::string content = text;
    if (content.empty()) {
      if (input.empty()) throw DataError("parse: provide --input or --text");
      content = read_file(input);
    }
    PolySet s;
    if (format == "text") {
      if (nvars < 1) throw DataError("parse: --nvars is required for the text grammar");
      s = parse_polyset(content, nvars);
    } else if (format == "smtlib") {
      s = parse_smtlib_atoms(content);
    } else {
      throw std::invalid_argument("parse: unknown format '" + format + "'");
    }
    if (emit_record) {
      nlohmann::json j;
      j["id"] = id;
      j["source"] = source;
      j["nvars"] = s.nvars;
      j["polys"] = to_string(s);
      std::cout << j.dump() << "\n";
    } else {
      std::cout << to_string(s) << "\n";
    }
  }
};

struct FeaturizeCmd {
  std::string input, out;

  void run() const {
    auto records = load_problems(input, /*require_timings=*/false);
    if (records.empty()) throw DataError("featurize: no records");
    int nvars = records[0].polys.nvars;
    for (const auto& r : records)
      if (r.polys.nvars != nvars) throw DataError("featurize: records mix variable counts");
    Eigen::MatrixXd x(static_cast<Eigen::Index>(records.size()),
                      static_cast<Eigen::Index>(nvars) * kFeatureCount);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < records.size(); ++i) {
      x.row(static_cast<Eigen::Index>(i)) = classification_embedding(records[i].polys);
      ids.push_back(records[i].id);
    }
    std::vector<std::string> names = embedding_slot_names(nvars, /*by_position=*/false);
    // id column first
    std::string body = csv_matrix(names, x, "", {});
    std::string withid = "id," + body.substr(0, body.find('\n') + 1);
    std::size_t pos = body.find('\n') + 1;
    std::size_t row = 0;
    while (pos < body.size()) {
      std::size_t end = body.find('\n', pos);
      withid += ids[row++] + "," + body.substr(pos, end - pos) + "\n";
      pos = end + 1;
    }
    atomic_write_file(out, withid);
    std::cout << "wrote " << records.size() << " rows to " << out << "\n";
  }
};

struct ProxyLabelCmd {
  std::string input, out;
  double quantile = 0.95;
  bool censor = false;
  int threads = 0;

  void run() const {
    auto records = load_problems(input, /*require_timings=*/false);
    proxy_label(records, quantile, censor, effective_threads(threads));
    save_problems(out, records);
    std::cout << "labeled " << records.size() << " records -> " << out << "\n";
  }
};

struct DatasetCmd {
  std::string input, out;
  std::uint64_t seed = 0;
  int folds = 5;
  std::string paradigm = "class";
  std::string varreg = "original";

  void dedup_cmd() const {
    auto records = load_problems(input);
    auto kept = dedup(records);
    save_problems(out, kept);
    std::cout << records.size() << " -> " << kept.size() << " records after dedup\n";
  }

  void split_cmd() const {
    auto records = load_problems(input);
    FoldAssignment fa = split_folds(records, folds, seed);
    nlohmann::json j;
    j["folds"] = fa.folds;
    nlohmann::json m;
    for (const auto& r : records) m[r.id] = fa.fold_of(r.id);
    j["fold_by_id"] = std::move(m);
    atomic_write_file(out, j.dump(2) + "\n");
    std::cout << "assigned " << records.size() << " records to " << folds << " folds -> " << out
              << "\n";
  }

  void balance_cmd() const {
    auto records = load_problems(input);
    save_problems(out, balance(records, seed));
    std::cout << "balanced " << records.size() << " records -> " << out << "\n";
  }

  void augment_cmd() const {
    auto records = load_problems(input);
    auto big = augment(records);
    save_problems(out, big);
    std::cout << records.size() << " -> " << big.size() << " records after augmentation\n";
  }

  void build_cmd() const {
    auto records = load_problems(input);
    Paradigm p = paradigm_from_name(paradigm);
    std::string csv;
    if (p == Paradigm::classification) {
      ClassificationData data = build_classification(records);
      std::vector<std::string> labels;
      for (int label : data.labels) labels.push_back(std::to_string(label));
      csv = csv_matrix(data.names, data.x, "label", labels);
    } else {
      RegressionData data =
          p == Paradigm::ordering_regression
              ? build_ordering_regression(records)
              : build_variable_regression(records, varreg == "projected"
                                                       ? VarRegMode::projected
                                                       : VarRegMode::original_set);
      std::vector<std::string> targets;
      for (Eigen::Index i = 0; i < data.y.size(); ++i)
        targets.push_back(format_double(data.y[i]));
      csv = csv_matrix(data.names, data.x, "target", targets);
    }
    atomic_write_file(out, csv);
    std::cout << "wrote instance matrix -> " << out << "\n";
  }
};

struct HeuristicCmd {
  std::string heuristic = "brown";
  std::string input;
  std::uint64_t seed = 0;
  int nvars = 0;
  bool reproject = false;

  void run() const {
    HeuristicKind kind = heuristic_from_name(heuristic);
    HeuristicMode mode = reproject ? HeuristicMode::reproject : HeuristicMode::original_set;
    TieBreaker tb{seed};
    if (input.size() > 6 && input.substr(input.size() - 6) == ".jsonl") {
      auto records = load_problems(input, /*require_timings=*/false);
      for (const auto& r : records)
        std::cout << r.id << "\t" << heuristic_order(kind, r.polys, tb, mode).to_string() << "\n";
    } else {
      if (nvars < 1) throw DataError("heuristic run: --nvars is required for text input");
      PolySet s = parse_polyset(read_file(input), nvars);
      std::cout << heuristic_order(kind, s, tb, mode).to_string() << "\n";
    }
  }
};

struct TrainCmd {
  std::string input, out;
  std::string paradigm = "class";
  std::string mode = "imbalanced";
  std::string varreg = "original";
  int trials = 10;
  std::uint64_t seed = 0;
  int k_min = 1, k_max = 20;
  bool log_targets = false;
  int threads = 0;

  void run() const {
    auto records = load_problems(input);
    Paradigm p = paradigm_from_name(paradigm);
    DatasetMode m = dataset_mode_from_name(mode);
    VarRegMode vr = varreg == "projected" ? VarRegMode::projected : VarRegMode::original_set;
    if (m == DatasetMode::augmented && p == Paradigm::ordering_regression)
      throw std::invalid_argument(
          "augmented mode is redundant for ordering regression: that dataset already contains "
          "every variable permutation of each problem");
    // Hold out one grouped fold for the hyperparameter search.
    FoldAssignment fa = split_folds(records, 5, stream_seed(seed, "train/split"));
    auto val = records_in_fold(records, fa, 0);
    auto sub = records_outside_fold(records, fa, 0);
    if (val.empty() || sub.empty()) {
      val = records;
      sub = records;
    }
    auto treat = [&](const std::vector<ProblemRecord>& rs, const char* tag) {
      switch (m) {
        case DatasetMode::imbalanced: return rs;
        case DatasetMode::balanced: return balance(rs, stream_seed(seed, tag));
        case DatasetMode::augmented: return augment(rs);
      }
      return rs;
    };
    SearchSpace space;
    space.k_min = k_min;
    space.k_max = k_max;
    space.trials = trials;
    space.seed = stream_seed(seed, "train/search");
    SearchResult res = random_search(space, treat(sub, "train/mode-sub"), val, p, vr, log_targets,
                                     effective_threads(threads));
    TrainedStrategy strategy =
        fit_strategy(p, res.best, treat(records, "train/mode-full"), vr, log_targets);
    save_strategy(out, strategy);
    std::cout << "chose k=" << res.best.k << " weighting=" << weighting_name(res.best.weighting)
              << " (search score " << format_double(res.best_score) << "); model -> " << out
              << "\n";
  }
};

struct EvaluateCmd {
  std::string model, test, out_json, out_csv;
  std::uint64_t seed = 0;
  bool balance_test = false;

  void run() const {
    TrainedStrategy strategy = load_strategy(model);
    auto records = load_problems(test);
    if (balance_test) records = balance(records, stream_seed(seed, "evaluate/balance"));
    std::vector<VariableOrdering> choices;
    for (const auto& r : records) choices.push_back(strategy.choose(r.polys));
    StrategyReport rep = evaluate_strategy(choices, records);
    std::string name = "knn-" + paradigm_name(strategy.paradigm);
    std::cout << report_to_json(rep) << "\n";
    if (!out_json.empty()) atomic_write_file(out_json, report_to_json(rep) + "\n");
    if (!out_csv.empty())
      atomic_write_file(out_csv, report_csv_header() + "\n" + report_csv_row(name, rep) + "\n");
  }
};

struct CompareCmd {
  std::string input, out_dir;
  std::vector<std::string> models;
  std::string heuristics = "brown,gmods,t1";
  std::uint64_t seed = 0;
  bool balance_test = false;

  void run() const {
    auto records = load_problems(input);
    if (balance_test) records = balance(records, stream_seed(seed, "compare/balance"));
    std::vector<std::pair<std::string, std::vector<VariableOrdering>>> strategies;
    for (const auto& spec : models) {
      std::string name, path;
      if (auto eq = spec.find('='); eq != std::string::npos) {
        name = spec.substr(0, eq);
        path = spec.substr(eq + 1);
      } else {
        path = spec;
        name = std::filesystem::path(spec).stem().string();
      }
      TrainedStrategy strategy = load_strategy(path);
      std::vector<VariableOrdering> choices;
      for (const auto& r : records) choices.push_back(strategy.choose(r.polys));
      strategies.emplace_back(name, std::move(choices));
    }
    if (!heuristics.empty()) {
      std::size_t pos = 0;
      while (pos <= heuristics.size()) {
        std::size_t comma = heuristics.find(',', pos);
        std::string name =
            heuristics.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!name.empty()) {
          HeuristicKind kind = heuristic_from_name(name);
          TieBreaker tb{stream_seed(seed, "compare/heuristic/" + name)};
          std::vector<VariableOrdering> choices;
          for (const auto& r : records) choices.push_back(heuristic_order(kind, r.polys, tb));
          strategies.emplace_back(name, std::move(choices));
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }
    std::string table = report_csv_header() + "\n";
    std::string plot = "strategy,record,chosen_time\n";
    for (const auto& [name, choices] : strategies) {
      StrategyReport rep = evaluate_strategy(choices, records);
      table += report_csv_row(name, rep) + "\n";
      for (std::size_t i = 0; i < records.size(); ++i) {
        double chosen = penalized_time(records[i].timings[ordering_index(choices[i])],
                                       records[i].timeout_limit);
        plot += name + "," + records[i].id + "," + format_double(chosen) + "\n";
      }
    }
    std::filesystem::path dir(out_dir);
    atomic_write_file((dir / "compare.csv").string(), table);
    atomic_write_file((dir / "plotdata.csv").string(), plot);
    std::cout << table;
  }
};

struct SynthCmd {
  std::string out;
  std::uint64_t seed = 0;
  int records = 100;
  int sources = 10;
  int nvars = 3;
  int max_polys = 4;
  int max_terms = 5;
  int max_degree = 3;
  std::string label = "proxy";  // proxy | random | none
  double bias = 0.0;
  double timeout_prob = 0.0;
  double quantile = 0.95;
  bool censor = false;
  int threads = 0;

  void run() const {
    CorpusSpec spec;
    spec.records = records;
    spec.sources = sources;
    spec.polys.nvars = nvars;
    spec.polys.max_polys = max_polys;
    spec.polys.max_terms = max_terms;
    spec.polys.max_degree = max_degree;
    auto problems = synthetic_problems(seed, spec);
    if (label == "proxy") {
      proxy_label(problems, quantile, censor, effective_threads(threads));
    } else if (label == "random") {
      attach_random_timings(problems, seed, timeout_prob);
    } else if (label != "none") {
      throw std::invalid_argument("synth: unknown labelling '" + label + "'");
    }
    if (bias > 0.0) bias_labels(problems, seed, bias);
    save_problems(out, problems);
    std::cout << "wrote " << problems.size() << " records -> " << out << "\n";
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vo-lab: machine-learned variable-ordering selection for polynomial systems"};
  app.require_subcommand(1);

  ParseCmd parse_cmd;
  auto* parse_sub = app.add_subcommand("parse", "parse polynomials and print the canonical form");
  parse_sub->add_option("--input", parse_cmd.input, "input file");
  parse_sub->add_option("--text", parse_cmd.text, "inline input text");
  parse_sub->add_option("--format", parse_cmd.format, "text | smtlib")->capture_default_str();
  parse_sub->add_option("--nvars", parse_cmd.nvars, "variable count (text grammar)");
  parse_sub->add_flag("--emit-record", parse_cmd.emit_record, "print a JSONL problem record");
  parse_sub->add_option("--id", parse_cmd.id, "record id for --emit-record");
  parse_sub->add_option("--source", parse_cmd.source, "record source for --emit-record");
  parse_sub->callback([&] { parse_cmd.run(); });

  FeaturizeCmd feat_cmd;
  auto* feat_sub = app.add_subcommand("featurize", "write the per-variable feature matrix as CSV");
  feat_sub->add_option("--input", feat_cmd.input, "problems JSONL")->required();
  feat_sub->add_option("--out", feat_cmd.out, "output CSV")->required();
  feat_sub->callback([&] { feat_cmd.run(); });

  ProxyLabelCmd proxy_cmd;
  auto* proxy_sub =
      app.add_subcommand("proxy-label", "label records with projection proxy costs");
  proxy_sub->add_option("--input", proxy_cmd.input, "problems JSONL")->required();
  proxy_sub->add_option("--out", proxy_cmd.out, "labeled JSONL")->required();
  proxy_sub->add_option("--quantile", proxy_cmd.quantile, "timeout-limit quantile")
      ->capture_default_str();
  proxy_sub->add_flag("--censor", proxy_cmd.censor, "costs above the limit become timeouts");
  proxy_sub->add_option("--threads", proxy_cmd.threads, "worker threads (0 = hardware)");
  proxy_sub->callback([&] { proxy_cmd.run(); });

  DatasetCmd ds_cmd;
  auto* ds_sub = app.add_subcommand("dataset", "dataset transforms");
  ds_sub->require_subcommand(1);
  auto add_io = [&](CLI::App* sub, bool needs_out = true) {
    sub->add_option("--input", ds_cmd.input, "problems JSONL")->required();
    if (needs_out) sub->add_option("--out", ds_cmd.out, "output file")->required();
  };
  auto* ds_dedup = ds_sub->add_subcommand("dedup", "drop signature duplicates");
  add_io(ds_dedup);
  ds_dedup->callback([&] { ds_cmd.dedup_cmd(); });
  auto* ds_split = ds_sub->add_subcommand("split", "grouped fold assignment");
  add_io(ds_split);
  ds_split->add_option("--folds", ds_cmd.folds, "fold count")->capture_default_str();
  ds_split->add_option("--seed", ds_cmd.seed, "seed");
  ds_split->callback([&] { ds_cmd.split_cmd(); });
  auto* ds_balance = ds_sub->add_subcommand("balance", "random per-record renaming");
  add_io(ds_balance);
  ds_balance->add_option("--seed", ds_cmd.seed, "seed");
  ds_balance->callback([&] { ds_cmd.balance_cmd(); });
  auto* ds_augment = ds_sub->add_subcommand("augment", "all renamings of every record");
  add_io(ds_augment);
  ds_augment->callback([&] { ds_cmd.augment_cmd(); });
  auto* ds_build = ds_sub->add_subcommand("build", "paradigm instance matrix CSV");
  add_io(ds_build);
  ds_build->add_option("--paradigm", ds_cmd.paradigm, "class | reg-ord | reg-var")
      ->capture_default_str();
  ds_build->add_option("--varreg-mode", ds_cmd.varreg, "original | projected")
      ->capture_default_str();
  ds_build->callback([&] { ds_cmd.build_cmd(); });

  HeuristicCmd h_cmd;
  auto* h_sub = app.add_subcommand("heuristic", "human-designed baselines");
  auto* h_run = h_sub->add_subcommand("run", "choose an ordering with a heuristic");
  h_run->add_option("--heuristic", h_cmd.heuristic, "brown | gmods | t1")->capture_default_str();
  h_run->add_option("--input", h_cmd.input, "polyset text file or problems JSONL")->required();
  h_run->add_option("--seed", h_cmd.seed, "tie-break seed");
  h_run->add_option("--nvars", h_cmd.nvars, "variable count (text input)");
  h_run->add_flag("--reproject", h_cmd.reproject, "re-evaluate criteria on projected sets");
  h_run->callback([&] { h_cmd.run(); });
  h_sub->require_subcommand(1);

  TrainCmd train_cmd;
  auto* train_sub = app.add_subcommand("train", "hyperparameter search + fit a model");
  train_sub->add_option("--input", train_cmd.input, "problems JSONL")->required();
  train_sub->add_option("--out", train_cmd.out, "model JSON")->required();
  train_sub->add_option("--paradigm", train_cmd.paradigm, "class | reg-ord | reg-var")
      ->capture_default_str();
  train_sub->add_option("--mode", train_cmd.mode, "imbalanced | balanced | augmented")
      ->capture_default_str();
  train_sub->add_option("--trials", train_cmd.trials, "search trials")->capture_default_str();
  train_sub->add_option("--seed", train_cmd.seed, "seed");
  train_sub->add_option("--k-min", train_cmd.k_min, "")->capture_default_str();
  train_sub->add_option("--k-max", train_cmd.k_max, "")->capture_default_str();
  train_sub->add_option("--varreg-mode", train_cmd.varreg, "original | projected")
      ->capture_default_str();
  train_sub->add_flag("--log-targets", train_cmd.log_targets,
                      "train ordering regression on log(1+t)");
  train_sub->add_option("--threads", train_cmd.threads, "worker threads");
  train_sub->callback([&] { train_cmd.run(); });

  EvaluateCmd eval_cmd;
  auto* eval_sub = app.add_subcommand("evaluate", "evaluate a model on a labeled corpus");
  eval_sub->add_option("--model", eval_cmd.model, "model JSON")->required();
  eval_sub->add_option("--test", eval_cmd.test, "problems JSONL")->required();
  eval_sub->add_option("--out", eval_cmd.out_json, "report JSON path");
  eval_sub->add_option("--csv", eval_cmd.out_csv, "report CSV path");
  eval_sub->add_flag("--balance-test", eval_cmd.balance_test, "randomly rename the test records");
  eval_sub->add_option("--seed", eval_cmd.seed, "seed for --balance-test");
  eval_sub->callback([&] { eval_cmd.run(); });

  CompareCmd cmp_cmd;
  auto* cmp_sub = app.add_subcommand("compare", "evaluate several strategies side by side");
  cmp_sub->add_option("--input", cmp_cmd.input, "problems JSONL")->required();
  cmp_sub->add_option("--out", cmp_cmd.out_dir, "output directory")->required();
  cmp_sub->add_option("--model", cmp_cmd.models, "model file (optionally name=path), repeatable");
  cmp_sub->add_option("--heuristics", cmp_cmd.heuristics, "comma list of baselines")
      ->capture_default_str();
  cmp_sub->add_flag("--balance-test", cmp_cmd.balance_test, "randomly rename the test records");
  cmp_sub->add_option("--seed", cmp_cmd.seed, "seed");
  cmp_sub->callback([&] { cmp_cmd.run(); });

  SynthCmd synth_cmd;
  auto* synth_sub = app.add_subcommand("synth", "generate a synthetic labeled corpus");
  synth_sub->add_option("--out", synth_cmd.out, "problems JSONL")->required();
  synth_sub->add_option("--seed", synth_cmd.seed, "seed");
  synth_sub->add_option("--records", synth_cmd.records, "record count")->capture_default_str();
  synth_sub->add_option("--sources", synth_cmd.sources, "source group count")
      ->capture_default_str();
  synth_sub->add_option("--nvars", synth_cmd.nvars, "variables")->capture_default_str();
  synth_sub->add_option("--max-polys", synth_cmd.max_polys, "")->capture_default_str();
  synth_sub->add_option("--max-terms", synth_cmd.max_terms, "")->capture_default_str();
  synth_sub->add_option("--max-degree", synth_cmd.max_degree, "")->capture_default_str();
  synth_sub->add_option("--label", synth_cmd.label, "proxy | random | none")
      ->capture_default_str();
  synth_sub->add_option("--bias", synth_cmd.bias, "probability of renaming toward ordering 0");
  synth_sub->add_option("--timeout-prob", synth_cmd.timeout_prob, "for --label random");
  synth_sub->add_option("--quantile", synth_cmd.quantile, "for --label proxy")
      ->capture_default_str();
  synth_sub->add_flag("--censor", synth_cmd.censor, "costs above the limit become timeouts");
  synth_sub->add_option("--threads", synth_cmd.threads, "worker threads");
  synth_sub->callback([&] { synth_cmd.run(); });

  // experiment run: config file + flag overrides
  auto* exp_sub = app.add_subcommand("experiment", "cross-validated experiments");
  auto* exp_run = exp_sub->add_subcommand("run", "run the configured experiment");
  exp_sub->require_subcommand(1);
  std::string exp_config;
  std::vector<std::pair<std::string, std::string>> overrides;
  std::map<std::string, std::string> opt_values;
  exp_run->add_option("--config", exp_config, "flat key=value config file");
  for (const char* key : {"problems", "out", "seed", "folds", "mode", "paradigm", "trials",
                          "k-min", "k-max", "dedup", "test-balanced", "threads", "heuristics",
                          "varreg-mode", "log-targets"}) {
    exp_run->add_option("--" + std::string(key), opt_values[key],
                        "override config key '" + std::string(key) + "'");
  }
  exp_run->callback([&] {
    ExperimentConfig cfg;
    if (!exp_config.empty()) cfg = config_from_file(exp_config);
    for (const auto& [key, value] : opt_values)
      if (!value.empty()) apply_config_kv(cfg, key, value);
    ExperimentResult result = run_experiment(cfg);
    for (const auto& [name, agg] : result.aggregate) {
      std::cout << name << ": total_time=" << format_double(agg.total_time)
                << " accuracy=" << format_double(agg.time_accuracy)
                << " markup=" << format_double(agg.avg_markup)
                << " solved=" << format_double(agg.solved) << "\n";
    }
    std::cout << "reports written to " << cfg.out_dir << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
