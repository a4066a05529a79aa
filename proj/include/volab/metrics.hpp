#pragma once
// Evaluation metrics for a selection strategy over a labeled corpus:
// solved count, time accuracy, total time and average time markup
//   (t_chosen - t_optimal) / (t_optimal + 1)
// with timed-out choices scored as twice the time limit.  Cell-count
// analogues (same formulas on cell counts, no +1 shift) are reported
// when every record carries cell counts.

#include <optional>
#include <string>
#include <vector>

#include "volab/dataset.hpp"

namespace volab {

double markup(double t_chosen, double t_optimal);

struct CellMetrics {
  double accuracy = 0.0;
  double total_cells = 0.0;
  double avg_markup = 0.0;
};

struct StrategyReport {
  std::size_t records = 0;
  std::size_t solved = 0;        // choices that did not time out
  double time_accuracy = 0.0;    // fraction whose choice attains the record minimum
  double total_time = 0.0;       // sum of penalized chosen times
  double avg_markup = 0.0;
  std::optional<CellMetrics> cells;
};

StrategyReport evaluate_strategy(const std::vector<VariableOrdering>& choices,
                                 const std::vector<ProblemRecord>& records);

std::string report_to_json(const StrategyReport& r);  // single JSON object
std::string report_csv_header();
std::string report_csv_row(const std::string& strategy, const StrategyReport& r);

}  // namespace volab
