#include "volab/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "volab/projection.hpp"
#include "volab/rng.hpp"

#include <json.hpp>

namespace volab {

double penalized_time(const std::optional<double>& t, double limit) {
  return t.has_value() ? *t : 2.0 * limit;
}

std::vector<double> penalized_timings(const ProblemRecord& r) {
  std::vector<double> out;
  out.reserve(r.timings.size());
  for (const auto& t : r.timings) out.push_back(penalized_time(t, r.timeout_limit));
  return out;
}

double optimal_time(const ProblemRecord& r) {
  if (!r.labeled()) throw DataError("record '" + r.id + "' has no timings");
  double best = penalized_time(r.timings[0], r.timeout_limit);
  for (std::size_t i = 1; i < r.timings.size(); ++i)
    best = std::min(best, penalized_time(r.timings[i], r.timeout_limit));
  return best;
}

VariableOrdering best_ordering(const ProblemRecord& r) {
  if (!r.labeled()) throw DataError("record '" + r.id + "' has no timings");
  std::size_t best = 0;
  double best_t = penalized_time(r.timings[0], r.timeout_limit);
  for (std::size_t i = 1; i < r.timings.size(); ++i) {
    double t = penalized_time(r.timings[i], r.timeout_limit);
    if (t < best_t) {
      best = i;
      best_t = t;
    }
  }
  return ordering_from_index(r.polys.nvars, best);
}

namespace {

std::string perm_tag(const Perm& sigma) {
  std::string tag;
  for (int v : sigma) tag += std::to_string(v + 1);
  return tag;
}

}  // namespace

ProblemRecord permute_record(const ProblemRecord& r, const Perm& sigma, bool tag_id) {
  ProblemRecord out;
  out.id = tag_id ? r.id + "~" + perm_tag(sigma) : r.id;
  out.source = r.source;
  out.timeout_limit = r.timeout_limit;
  out.polys = apply_permutation(r.polys, sigma);
  if (r.labeled()) {
    std::size_t n = r.timings.size();
    out.timings.resize(n);
    if (r.cells) out.cells.emplace(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
      VariableOrdering o = ordering_from_index(r.polys.nvars, idx);
      std::size_t moved = ordering_index(transport(sigma, o));
      out.timings[moved] = r.timings[idx];
      if (r.cells) (*out.cells)[moved] = (*r.cells)[idx];
    }
  }
  return out;
}

std::vector<ProblemRecord> dedup(const std::vector<ProblemRecord>& records) {
  std::set<std::string> seen;
  std::vector<ProblemRecord> out;
  for (const auto& r : records) {
    std::string sig;
    if (r.cells) {
      sig = "c:";
      for (long long c : *r.cells) sig += std::to_string(c) + ",";
    } else {
      sig = "t:";
      for (const auto& t : r.timings) sig += (t ? format_double(*t) : "null") + std::string(",");
    }
    if (seen.insert(sig).second) out.push_back(r);
  }
  return out;
}

int FoldAssignment::fold_of(const std::string& id) const {
  auto it = fold_by_id.find(id);
  if (it == fold_by_id.end()) throw DataError("id not in fold assignment: " + id);
  return it->second;
}

FoldAssignment split_folds(const std::vector<ProblemRecord>& records, int k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("fold count must be positive");
  std::vector<std::string> group_order;
  std::map<std::string, std::vector<const ProblemRecord*>> groups;
  for (const auto& r : records) {
    auto [it, fresh] = groups.try_emplace(r.source);
    if (fresh) group_order.push_back(r.source);
    it->second.push_back(&r);
  }
  Rng rng = stream(seed, "split");
  rng.shuffle(group_order);
  std::stable_sort(group_order.begin(), group_order.end(),
                   [&](const std::string& a, const std::string& b) {
                     return groups[a].size() > groups[b].size();
                   });
  FoldAssignment fa;
  fa.folds = k;
  std::vector<std::size_t> load(k, 0);
  for (const auto& source : group_order) {
    int target = 0;
    for (int f = 1; f < k; ++f)
      if (load[f] < load[target]) target = f;
    load[target] += groups[source].size();
    for (const ProblemRecord* r : groups[source]) fa.fold_by_id[r->id] = target;
  }
  return fa;
}

std::vector<ProblemRecord> records_in_fold(const std::vector<ProblemRecord>& records,
                                           const FoldAssignment& fa, int fold) {
  std::vector<ProblemRecord> out;
  for (const auto& r : records)
    if (fa.fold_of(r.id) == fold) out.push_back(r);
  return out;
}

std::vector<ProblemRecord> records_outside_fold(const std::vector<ProblemRecord>& records,
                                                const FoldAssignment& fa, int fold) {
  std::vector<ProblemRecord> out;
  for (const auto& r : records)
    if (fa.fold_of(r.id) != fold) out.push_back(r);
  return out;
}

std::vector<ProblemRecord> balance(const std::vector<ProblemRecord>& records, std::uint64_t seed) {
  Rng rng = stream(seed, "balance");
  std::vector<ProblemRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(permute_record(r, rng.permutation(r.polys.nvars)));
  return out;
}

std::vector<ProblemRecord> augment(const std::vector<ProblemRecord>& records) {
  std::vector<ProblemRecord> out;
  for (const auto& r : records) {
    std::vector<int> sigma(r.polys.nvars);
    for (int i = 0; i < r.polys.nvars; ++i) sigma[i] = i;
    do {
      out.push_back(permute_record(r, sigma, /*tag_id=*/true));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  return out;
}

namespace {

int common_nvars(const std::vector<ProblemRecord>& records) {
  if (records.empty()) throw DataError("no records");
  int nvars = records[0].polys.nvars;
  for (const auto& r : records) {
    if (r.polys.nvars != nvars)
      throw DataError("records mix variable counts (" + std::to_string(nvars) + " vs " +
                      std::to_string(r.polys.nvars) + ")");
    if (!r.labeled()) throw DataError("record '" + r.id + "' has no timings");
  }
  return nvars;
}

}  // namespace

ClassificationData build_classification(const std::vector<ProblemRecord>& records) {
  int nvars = common_nvars(records);
  ClassificationData data;
  data.names = embedding_slot_names(nvars, /*by_position=*/false);
  data.x.resize(static_cast<Eigen::Index>(records.size()),
                static_cast<Eigen::Index>(nvars) * kFeatureCount);
  data.labels.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    data.x.row(static_cast<Eigen::Index>(i)) = classification_embedding(records[i].polys);
    data.labels.push_back(static_cast<int>(ordering_index(best_ordering(records[i]))));
  }
  return data;
}

RegressionData build_ordering_regression(const std::vector<ProblemRecord>& records,
                                         bool log_targets) {
  int nvars = common_nvars(records);
  std::size_t per = factorial(nvars);
  RegressionData data;
  data.names = embedding_slot_names(nvars, /*by_position=*/true);
  data.x.resize(static_cast<Eigen::Index>(records.size() * per),
                static_cast<Eigen::Index>(nvars) * kFeatureCount);
  data.y.resize(static_cast<Eigen::Index>(records.size() * per));
  auto orderings = all_orderings(nvars);
  Eigen::Index row = 0;
  for (const auto& r : records) {
    for (std::size_t idx = 0; idx < per; ++idx, ++row) {
      data.x.row(row) = ordering_embedding(r.polys, orderings[idx]);
      double t = penalized_time(r.timings[idx], r.timeout_limit);
      data.y[row] = log_targets ? std::log1p(t) : t;
    }
  }
  return data;
}

namespace {

// Best penalized time among orderings whose projection sequence starts
// with the given prefix.
double best_time_with_prefix(const ProblemRecord& r, const std::vector<int>& prefix) {
  int nvars = r.polys.nvars;
  double best = std::numeric_limits<double>::infinity();
  std::size_t per = factorial(nvars);
  for (std::size_t idx = 0; idx < per; ++idx) {
    VariableOrdering o = ordering_from_index(nvars, idx);
    bool match = true;
    for (std::size_t k = 0; k < prefix.size() && match; ++k) match = o.order[k] == prefix[k];
    if (match) best = std::min(best, penalized_time(r.timings[idx], r.timeout_limit));
  }
  return best;
}

void projected_instances(const ProblemRecord& r, const PolySet& current, std::vector<int>& prefix,
                         std::vector<Eigen::VectorXd>& rows, std::vector<double>& targets) {
  int nvars = r.polys.nvars;
  if (static_cast<int>(prefix.size()) == nvars) return;
  for (int v = 0; v < nvars; ++v) {
    if (std::find(prefix.begin(), prefix.end(), v) != prefix.end()) continue;
    prefix.push_back(v);
    rows.push_back(variable_features(current, v));
    targets.push_back(best_time_with_prefix(r, prefix));
    if (static_cast<int>(prefix.size()) < nvars)
      projected_instances(r, project_step(current, v), prefix, rows, targets);
    prefix.pop_back();
  }
}

}  // namespace

RegressionData build_variable_regression(const std::vector<ProblemRecord>& records,
                                         VarRegMode mode) {
  common_nvars(records);
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> targets;
  for (const auto& r : records) {
    if (mode == VarRegMode::original_set) {
      for (int v = 0; v < r.polys.nvars; ++v) {
        rows.push_back(variable_features(r.polys, v));
        std::vector<int> prefix{v};
        targets.push_back(best_time_with_prefix(r, prefix));
      }
    } else {
      std::vector<int> prefix;
      projected_instances(r, r.polys, prefix, rows, targets);
    }
  }
  RegressionData data;
  data.names = feature_slot_names();
  data.x.resize(static_cast<Eigen::Index>(rows.size()), kFeatureCount);
  data.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    data.x.row(static_cast<Eigen::Index>(i)) = rows[i];
    data.y[static_cast<Eigen::Index>(i)] = targets[i];
  }
  return data;
}

namespace {

using nlohmann::json;

ProblemRecord record_from_json(const json& j, bool require_timings, std::size_t line_no) {
  auto fail = [&](const std::string& msg) {
    throw DataError("line " + std::to_string(line_no) + ": " + msg);
  };
  if (!j.is_object()) fail("record is not an object");
  ProblemRecord r;
  if (!j.contains("id") || !j["id"].is_string()) fail("missing string field 'id'");
  r.id = j["id"].get<std::string>();
  if (!j.contains("source") || !j["source"].is_string()) fail("missing string field 'source'");
  r.source = j["source"].get<std::string>();
  if (!j.contains("nvars") || !j["nvars"].is_number_integer()) fail("missing integer field 'nvars'");
  int nvars = j["nvars"].get<int>();
  if (nvars < 1 || nvars > 10) fail("nvars out of range");
  if (!j.contains("polys") || !j["polys"].is_string()) fail("missing string field 'polys'");
  try {
    r.polys = parse_polyset(j["polys"].get<std::string>(), nvars);
  } catch (const ParseError& e) {
    fail(std::string("polys: ") + e.what());
  }
  std::size_t expected = factorial(nvars);
  bool has_timings = j.contains("timings") && !j["timings"].is_null();
  if (require_timings && !has_timings) fail("missing field 'timings'");
  if (has_timings) {
    const json& ts = j["timings"];
    if (!ts.is_array() || ts.size() != expected)
      fail("'timings' must be an array of length nvars! = " + std::to_string(expected));
    for (const auto& t : ts) {
      if (t.is_null())
        r.timings.push_back(std::nullopt);
      else if (t.is_number())
        r.timings.push_back(t.get<double>());
      else
        fail("'timings' entries must be numbers or null");
    }
    if (!j.contains("timeout_limit") || !j["timeout_limit"].is_number())
      fail("missing numeric field 'timeout_limit'");
    r.timeout_limit = j["timeout_limit"].get<double>();
    if (r.timeout_limit <= 0) fail("'timeout_limit' must be positive");
  }
  if (j.contains("cells") && !j["cells"].is_null()) {
    const json& cs = j["cells"];
    if (!cs.is_array() || cs.size() != expected)
      fail("'cells' must be an array of length nvars! = " + std::to_string(expected));
    std::vector<long long> cells;
    for (const auto& c : cs) {
      if (!c.is_number_integer()) fail("'cells' entries must be integers");
      cells.push_back(c.get<long long>());
    }
    r.cells = std::move(cells);
  }
  return r;
}

}  // namespace

std::vector<ProblemRecord> parse_problems(const std::string& jsonl, bool require_timings,
                                          IngestStats* stats) {
  std::vector<ProblemRecord> out;
  std::set<std::string> ids;
  std::size_t line_no = 0, rejected = 0;
  std::size_t pos = 0;
  while (pos <= jsonl.size()) {
    std::size_t end = jsonl.find('\n', pos);
    std::string line = jsonl.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = end == std::string::npos ? jsonl.size() + 1 : end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
    ProblemRecord r = record_from_json(j, require_timings, line_no);
    if (!ids.insert(r.id).second)
      throw DataError("line " + std::to_string(line_no) + ": duplicate id '" + r.id + "'");
    if (r.labeled()) {
      bool any_finite = false;
      for (const auto& t : r.timings) any_finite |= t.has_value();
      if (!any_finite) {
        ++rejected;  // unsolvable under every ordering
        continue;
      }
    }
    out.push_back(std::move(r));
  }
  if (stats) {
    stats->lines = line_no;
    stats->rejected_all_timeout = rejected;
  }
  return out;
}

std::vector<ProblemRecord> load_problems(const std::string& path, bool require_timings,
                                         IngestStats* stats) {
  return parse_problems(read_file(path), require_timings, stats);
}

std::string problems_to_jsonl(const std::vector<ProblemRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    json j;
    j["id"] = r.id;
    j["source"] = r.source;
    j["nvars"] = r.polys.nvars;
    j["polys"] = to_string(r.polys);
    if (r.labeled()) {
      json ts = json::array();
      for (const auto& t : r.timings) {
        if (t)
          ts.push_back(*t);
        else
          ts.push_back(nullptr);
      }
      j["timings"] = std::move(ts);
      j["timeout_limit"] = r.timeout_limit;
    }
    if (r.cells) j["cells"] = *r.cells;
    out += j.dump();
    out += '\n';
  }
  return out;
}

void save_problems(const std::string& path, const std::vector<ProblemRecord>& records) {
  atomic_write_file(path, problems_to_jsonl(records));
}

}  // namespace volab
