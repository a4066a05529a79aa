#include "volab/select.hpp"

#include <algorithm>

#include <json.hpp>

#include "volab/parallel.hpp"
#include "volab/projection.hpp"
#include "volab/rng.hpp"

namespace volab {

std::string paradigm_name(Paradigm p) {
  switch (p) {
    case Paradigm::classification: return "class";
    case Paradigm::ordering_regression: return "reg-ord";
    case Paradigm::variable_regression: return "reg-var";
  }
  return "?";
}

Paradigm paradigm_from_name(const std::string& name) {
  if (name == "class") return Paradigm::classification;
  if (name == "reg-ord") return Paradigm::ordering_regression;
  if (name == "reg-var") return Paradigm::variable_regression;
  throw std::invalid_argument("unknown paradigm: " + name);
}

VariableOrdering choose_by_classifier(const KnnModel& m, const PolySet& s,
                                      const Candidates* candidates) {
  int predicted = m.predict_class(classification_embedding(s));
  if (candidates) {
    bool allowed = std::find(candidates->begin(), candidates->end(),
                             static_cast<std::uint64_t>(predicted)) != candidates->end();
    if (!allowed)
      throw DataError("classifier prediction is outside the candidate set; a classifier cannot "
                      "rank the remaining orderings");
  }
  return ordering_from_index(s.nvars, static_cast<std::uint64_t>(predicted));
}

VariableOrdering choose_by_ordering_estimates(
    const std::function<double(const VariableOrdering&)>& estimate, int nvars,
    const Candidates* candidates) {
  std::vector<std::uint64_t> pool;
  if (candidates) {
    pool = *candidates;
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  } else {
    pool.resize(factorial(nvars));
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  }
  if (pool.empty()) throw DataError("candidate ordering set is empty");
  std::uint64_t best_idx = pool[0];
  double best_value = 0.0;
  bool first = true;
  for (std::uint64_t idx : pool) {
    double v = estimate(ordering_from_index(nvars, idx));
    if (first || v < best_value) {
      best_idx = idx;
      best_value = v;
      first = false;
    }
  }
  return ordering_from_index(nvars, best_idx);
}

VariableOrdering choose_by_ordering_regressor(const KnnModel& m, const PolySet& s,
                                              const Candidates* candidates) {
  Eigen::MatrixXd blocks = variable_feature_matrix(s);
  return choose_by_ordering_estimates(
      [&](const VariableOrdering& o) { return m.predict_value(assemble_ordering(blocks, o)); },
      s.nvars, candidates);
}

VariableOrdering choose_by_variable_regressor(const KnnModel& m, const PolySet& s,
                                              const Projector& projector) {
  if (!projector) throw std::invalid_argument("variable regression requires a projector");
  VariableOrdering out;
  std::vector<int> remaining;
  for (int v = 0; v < s.nvars; ++v) remaining.push_back(v);
  PolySet current = s;
  while (!remaining.empty()) {
    int chosen = remaining[0];
    if (remaining.size() > 1) {
      double best = 0.0;
      bool first = true;
      for (int v : remaining) {
        double est = m.predict_value(variable_features(current, v));
        if (first || est < best) {
          best = est;
          chosen = v;
          first = false;
        }
      }
    }
    out.order.push_back(chosen);
    std::erase(remaining, chosen);
    if (!remaining.empty()) current = projector(current, chosen);
  }
  return out;
}

VariableOrdering choose_by_variable_regressor(const KnnModel& m, const PolySet& s) {
  return choose_by_variable_regressor(
      m, s, [](const PolySet& set, int var) { return project_step(set, var); });
}

VariableOrdering TrainedStrategy::choose(const PolySet& s) const {
  switch (paradigm) {
    case Paradigm::classification: return choose_by_classifier(model, s);
    case Paradigm::ordering_regression: return choose_by_ordering_regressor(model, s);
    case Paradigm::variable_regression: return choose_by_variable_regressor(model, s);
  }
  throw std::logic_error("unknown paradigm");
}

TrainedStrategy fit_strategy(Paradigm paradigm, KnnConfig cfg,
                             const std::vector<ProblemRecord>& train, VarRegMode varreg_mode,
                             bool log_targets) {
  if (train.empty()) throw DataError("cannot fit on an empty training set");
  TrainedStrategy s;
  s.paradigm = paradigm;
  s.varreg_mode = varreg_mode;
  s.log_targets = log_targets;
  s.nvars = train[0].polys.nvars;
  switch (paradigm) {
    case Paradigm::classification:
      s.model = KnnModel::fit_classifier(cfg, build_classification(train));
      break;
    case Paradigm::ordering_regression:
      s.model = KnnModel::fit_regressor(cfg, build_ordering_regression(train, log_targets));
      break;
    case Paradigm::variable_regression:
      s.model = KnnModel::fit_regressor(cfg, build_variable_regression(train, varreg_mode));
      break;
  }
  return s;
}

double selection_time(const TrainedStrategy& strategy, const std::vector<ProblemRecord>& records) {
  double total = 0.0;
  for (const auto& r : records) {
    VariableOrdering chosen = strategy.choose(r.polys);
    total += penalized_time(r.timings[ordering_index(chosen)], r.timeout_limit);
  }
  return total;
}

SearchResult random_search(const SearchSpace& space, const std::vector<ProblemRecord>& train,
                           const std::vector<ProblemRecord>& validation, Paradigm paradigm,
                           VarRegMode varreg_mode, bool log_targets, int threads) {
  if (space.trials < 1) throw std::invalid_argument("search needs at least one trial");
  if (space.k_min < 1 || space.k_max < space.k_min)
    throw std::invalid_argument("bad k range");
  if (space.weightings.empty()) throw std::invalid_argument("no weightings to sample");
  if (train.empty() || validation.empty())
    throw DataError("search needs non-empty training and validation records");
  Rng rng = stream(space.seed, "search");
  std::vector<KnnConfig> configs;
  configs.reserve(static_cast<std::size_t>(space.trials));
  for (int t = 0; t < space.trials; ++t) {
    KnnConfig cfg;
    cfg.k = space.k_min + rng.pick(space.k_max - space.k_min + 1);
    cfg.weighting = space.weightings[rng.pick(static_cast<int>(space.weightings.size()))];
    configs.push_back(cfg);
  }

  // Instances and validation embeddings do not depend on the trial config,
  // so build them once and share across trials.
  int nvars = train[0].polys.nvars;
  ClassificationData cls;
  RegressionData reg;
  switch (paradigm) {
    case Paradigm::classification: cls = build_classification(train); break;
    case Paradigm::ordering_regression: reg = build_ordering_regression(train, log_targets); break;
    case Paradigm::variable_regression: reg = build_variable_regression(train, varreg_mode); break;
  }
  std::vector<Eigen::MatrixXd> val_blocks;
  if (paradigm != Paradigm::variable_regression) {
    val_blocks.resize(validation.size());
    parallel_for(validation.size(), threads, [&](std::size_t i) {
      val_blocks[i] = variable_feature_matrix(validation[i].polys);
    });
  }

  std::vector<double> scores(configs.size());
  parallel_for(configs.size(), threads, [&](std::size_t t) {
    KnnModel m = paradigm == Paradigm::classification
                     ? KnnModel::fit_classifier(configs[t], cls)
                     : KnnModel::fit_regressor(configs[t], reg);
    double total = 0.0;
    for (std::size_t i = 0; i < validation.size(); ++i) {
      const ProblemRecord& r = validation[i];
      VariableOrdering chosen;
      switch (paradigm) {
        case Paradigm::classification:
          chosen = ordering_from_index(
              nvars, static_cast<std::uint64_t>(m.predict_class(
                         assemble_classification(val_blocks[i]))));
          break;
        case Paradigm::ordering_regression:
          chosen = choose_by_ordering_estimates(
              [&](const VariableOrdering& o) {
                return m.predict_value(assemble_ordering(val_blocks[i], o));
              },
              nvars);
          break;
        case Paradigm::variable_regression:
          chosen = choose_by_variable_regressor(m, r.polys);
          break;
      }
      total += penalized_time(r.timings[ordering_index(chosen)], r.timeout_limit);
    }
    scores[t] = total;
  });
  std::size_t best = 0;
  for (std::size_t t = 1; t < scores.size(); ++t)
    if (scores[t] < scores[best]) best = t;
  return SearchResult{configs[best], scores[best], std::move(scores)};
}

namespace {

using nlohmann::json;

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::VectorXd vector_from_json(const json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

}  // namespace

std::string strategy_to_json(const TrainedStrategy& s) {
  json j;
  j["format"] = "vo-lab.model";
  j["version"] = 1;
  j["paradigm"] = paradigm_name(s.paradigm);
  j["nvars"] = s.nvars;
  j["varreg_mode"] = s.varreg_mode == VarRegMode::original_set ? "original" : "projected";
  j["log_targets"] = s.log_targets;
  j["mode"] = s.model.mode() == KnnMode::classify ? "classify" : "regress";
  j["k"] = s.model.config().k;
  j["weighting"] = weighting_name(s.model.config().weighting);
  j["scaler"] = {{"mean", vector_to_json(s.model.scaler().mean())},
                 {"std", vector_to_json(s.model.scaler().stddev())}};
  json rows = json::array();
  const Eigen::MatrixXd& x = s.model.train_x();
  for (Eigen::Index i = 0; i < x.rows(); ++i) rows.push_back(vector_to_json(x.row(i)));
  j["x"] = std::move(rows);
  j["y"] = vector_to_json(s.model.train_y());
  return j.dump();
}

struct ModelIo {
  static TrainedStrategy read(const std::string& text) {
    json j = json::parse(text);
    if (!j.is_object() || j.value("format", "") != "vo-lab.model")
      throw DataError("not a model file");
    if (j.value("version", 0) != 1) throw DataError("unsupported model version");
    TrainedStrategy s;
    s.paradigm = paradigm_from_name(j.at("paradigm").get<std::string>());
    s.nvars = j.at("nvars").get<int>();
    s.varreg_mode = j.value("varreg_mode", "original") == std::string("projected")
                        ? VarRegMode::projected
                        : VarRegMode::original_set;
    s.log_targets = j.value("log_targets", false);
    KnnModel& m = s.model;
    m.mode_ = j.at("mode").get<std::string>() == "classify" ? KnnMode::classify : KnnMode::regress;
    m.config_.k = j.at("k").get<int>();
    m.config_.weighting = weighting_from_name(j.at("weighting").get<std::string>());
    m.scaler_ = Standardizer(vector_from_json(j.at("scaler").at("mean")),
                             vector_from_json(j.at("scaler").at("std")));
    const json& rows = j.at("x");
    if (rows.empty()) throw DataError("model has no training rows");
    m.x_.resize(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      m.x_.row(static_cast<Eigen::Index>(i)) = vector_from_json(rows[i]);
    m.y_ = vector_from_json(j.at("y"));
    if (m.y_.size() != m.x_.rows()) throw DataError("model row/target count mismatch");
    return s;
  }
};

TrainedStrategy strategy_from_json(const std::string& text) {
  try {
    return ModelIo::read(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad model file: ") + e.what());
  }
}

void save_strategy(const std::string& path, const TrainedStrategy& s) {
  atomic_write_file(path, strategy_to_json(s) + "\n");
}

TrainedStrategy load_strategy(const std::string& path) {
  return strategy_from_json(read_file(path));
}

}  // namespace volab
