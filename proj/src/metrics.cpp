#include "volab/metrics.hpp"

#include <algorithm>

#include <json.hpp>

namespace volab {

double markup(double t_chosen, double t_optimal) {
  return (t_chosen - t_optimal) / (t_optimal + 1.0);
}

StrategyReport evaluate_strategy(const std::vector<VariableOrdering>& choices,
                                 const std::vector<ProblemRecord>& records) {
  if (choices.size() != records.size())
    throw DataError("one choice per record required (" + std::to_string(choices.size()) + " vs " +
                    std::to_string(records.size()) + ")");
  StrategyReport rep;
  rep.records = records.size();
  bool all_cells = !records.empty();
  double markup_sum = 0.0;
  double cell_markup_sum = 0.0;
  std::size_t cell_hits = 0;
  double cell_total = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const ProblemRecord& r = records[i];
    std::uint64_t idx = ordering_index(choices[i]);
    if (choices[i].nvars() != r.polys.nvars || idx >= r.timings.size())
      throw DataError("choice for record '" + r.id + "' is not an ordering of its variables");
    const auto& chosen_raw = r.timings[idx];
    double chosen = penalized_time(chosen_raw, r.timeout_limit);
    double optimal = optimal_time(r);
    if (chosen_raw.has_value()) {
      ++rep.solved;
      if (*chosen_raw == optimal) rep.time_accuracy += 1.0;
    }
    rep.total_time += chosen;
    markup_sum += markup(chosen, optimal);
    if (r.cells) {
      long long chosen_cells = (*r.cells)[idx];
      long long min_cells = *std::min_element(r.cells->begin(), r.cells->end());
      if (chosen_cells == min_cells) ++cell_hits;
      cell_total += static_cast<double>(chosen_cells);
      double denom = std::max<double>(static_cast<double>(min_cells), 1.0);
      cell_markup_sum += (static_cast<double>(chosen_cells) - static_cast<double>(min_cells)) / denom;
    } else {
      all_cells = false;
    }
  }
  if (!records.empty()) {
    rep.time_accuracy /= static_cast<double>(records.size());
    rep.avg_markup = markup_sum / static_cast<double>(records.size());
    if (all_cells) {
      CellMetrics cm;
      cm.accuracy = static_cast<double>(cell_hits) / static_cast<double>(records.size());
      cm.total_cells = cell_total;
      cm.avg_markup = cell_markup_sum / static_cast<double>(records.size());
      rep.cells = cm;
    }
  }
  return rep;
}

std::string report_to_json(const StrategyReport& r) {
  nlohmann::json j;
  j["records"] = r.records;
  j["solved"] = r.solved;
  j["time_accuracy"] = r.time_accuracy;
  j["total_time"] = r.total_time;
  j["avg_markup"] = r.avg_markup;
  if (r.cells) {
    j["cells"] = {{"accuracy", r.cells->accuracy},
                  {"total_cells", r.cells->total_cells},
                  {"avg_markup", r.cells->avg_markup}};
  }
  return j.dump();
}

std::string report_csv_header() {
  return "strategy,records,solved,time_accuracy,total_time,avg_markup";
}

std::string report_csv_row(const std::string& strategy, const StrategyReport& r) {
  return strategy + "," + std::to_string(r.records) + "," + std::to_string(r.solved) + "," +
         format_double(r.time_accuracy) + "," + format_double(r.total_time) + "," +
         format_double(r.avg_markup);
}

}  // namespace volab
