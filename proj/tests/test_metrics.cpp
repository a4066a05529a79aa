#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "volab/metrics.hpp"
#include "volab/rng.hpp"
#include "volab/synth.hpp"

using namespace volab;

namespace {

ProblemRecord reference_record() {
  ProblemRecord r;
  r.id = "ref";
  r.source = "grp";
  r.polys = parse_polyset("x1^2 - x2; x3^3 - 1", 3);
  r.timings = {22.16, 17.14, std::nullopt, 24.87, 16.06, 22.58};
  r.timeout_limit = 30.0;
  return r;
}

std::vector<ProblemRecord> tie_free_corpus(std::uint64_t seed, int records, int sources) {
  CorpusSpec spec;
  spec.records = records;
  spec.sources = sources;
  auto out = synthetic_problems(seed, spec);
  attach_random_timings(out, seed, 0.15);
  return out;
}

}  // namespace

TEST_CASE("markup damps small differences with the +1 shift") {
  CHECK(markup(12.47, 12.43) == (12.47 - 12.43) / (12.43 + 1.0));
  CHECK(markup(12.47, 12.43) == doctest::Approx(0.002978).epsilon(1e-3));
  CHECK(markup(7.5, 7.5) == 0.0);
  CHECK(markup(60.0, 16.06) == (60.0 - 16.06) / (16.06 + 1.0));
  CHECK(markup(60.0, 16.06) == doctest::Approx(2.5756).epsilon(1e-4));
}

TEST_CASE("an always-optimal strategy has perfect metrics") {
  auto records = tie_free_corpus(1, 50, 5);
  std::vector<VariableOrdering> choices;
  double optimal_sum = 0;
  for (const auto& r : records) {
    choices.push_back(best_ordering(r));
    optimal_sum += optimal_time(r);
  }
  StrategyReport rep = evaluate_strategy(choices, records);
  CHECK(rep.records == 50);
  CHECK(rep.solved == 50);
  CHECK(rep.time_accuracy == 1.0);
  CHECK(rep.avg_markup == 0.0);
  CHECK(rep.total_time == optimal_sum);
}

TEST_CASE("a timed-out choice costs twice the limit and is not solved") {
  std::vector<ProblemRecord> records{reference_record()};
  std::vector<VariableOrdering> choices{ordering_from_index(3, 2)};  // the timeout entry
  StrategyReport rep = evaluate_strategy(choices, records);
  CHECK(rep.solved == 0);
  CHECK(rep.time_accuracy == 0.0);
  CHECK(rep.total_time == 60.0);
  CHECK(rep.avg_markup == markup(60.0, 16.06));
}

TEST_CASE("exact-time ties count as accurate") {
  ProblemRecord r = reference_record();
  r.timings = {4.0, 4.0, 9.0, 9.0, 9.0, 9.0};
  StrategyReport rep = evaluate_strategy({ordering_from_index(3, 1)}, {r});
  CHECK(rep.time_accuracy == 1.0);
  CHECK(rep.avg_markup == 0.0);
}

TEST_CASE("random strategies match the straight-line reference") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto records = tie_free_corpus(100 + static_cast<std::uint64_t>(trial), 30, 4);
    std::vector<VariableOrdering> choices;
    for (const auto& r : records)
      choices.push_back(ordering_from_index(r.polys.nvars, rng.below(6)));
    StrategyReport rep = evaluate_strategy(choices, records);
    oracle::ReferenceReport expect = oracle::evaluate_reference(choices, records);
    CHECK(rep.solved == expect.solved);
    CHECK(rep.time_accuracy == expect.accuracy);
    CHECK(rep.total_time == expect.total);
    CHECK(rep.avg_markup == expect.markup);
  }
}

TEST_CASE("no strategy beats the oracle strategy") {
  Rng rng(13);
  auto records = tie_free_corpus(200, 40, 5);
  double optimal_sum = 0;
  for (const auto& r : records) optimal_sum += optimal_time(r);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<VariableOrdering> choices;
    for (const auto& r : records)
      choices.push_back(ordering_from_index(r.polys.nvars, rng.below(6)));
    StrategyReport rep = evaluate_strategy(choices, records);
    CHECK(rep.total_time >= optimal_sum);
    CHECK(rep.avg_markup >= 0.0);
  }
}

TEST_CASE("improving a single choice strictly lowers the total time") {
  auto records = tie_free_corpus(300, 20, 4);
  std::vector<VariableOrdering> worst, better;
  for (const auto& r : records) {
    std::size_t argmax = 0;
    auto pens = penalized_timings(r);
    for (std::size_t i = 1; i < pens.size(); ++i)
      if (pens[i] > pens[argmax]) argmax = i;
    worst.push_back(ordering_from_index(3, argmax));
    better.push_back(ordering_from_index(3, argmax));
  }
  better[0] = best_ordering(records[0]);
  double before = evaluate_strategy(worst, records).total_time;
  double after = evaluate_strategy(better, records).total_time;
  CHECK(after < before);
}

TEST_CASE("reports are invariant under consistent renaming") {
  Rng rng(17);
  auto records = tie_free_corpus(400, 25, 5);
  std::vector<VariableOrdering> choices;
  for (const auto& r : records) choices.push_back(ordering_from_index(3, rng.below(6)));
  StrategyReport base = evaluate_strategy(choices, records);
  std::vector<ProblemRecord> renamed;
  std::vector<VariableOrdering> transported;
  for (std::size_t i = 0; i < records.size(); ++i) {
    Perm sigma = rng.permutation(3);
    renamed.push_back(permute_record(records[i], sigma));
    transported.push_back(transport(sigma, choices[i]));
  }
  StrategyReport moved = evaluate_strategy(transported, renamed);
  CHECK(moved.solved == base.solved);
  CHECK(moved.time_accuracy == base.time_accuracy);
  CHECK(moved.total_time == base.total_time);
  CHECK(moved.avg_markup == base.avg_markup);
}

TEST_CASE("a choice count mismatch is an error") {
  auto records = tie_free_corpus(500, 5, 2);
  std::vector<VariableOrdering> choices;
  CHECK_THROWS_AS(evaluate_strategy(choices, records), DataError);
}

TEST_CASE("cell metrics appear only when every record has cell counts") {
  auto records = tie_free_corpus(600, 6, 2);
  std::vector<VariableOrdering> choices;
  for (const auto& r : records) choices.push_back(best_ordering(r));
  CHECK_FALSE(evaluate_strategy(choices, records).cells.has_value());
  for (auto& r : records) r.cells = std::vector<long long>{60, 50, 40, 30, 20, 10};
  StrategyReport rep = evaluate_strategy(choices, records);
  REQUIRE(rep.cells.has_value());
  // the cheapest cell count sits at ordering index 5
  double hits = 0;
  for (const auto& c : choices)
    if (ordering_index(c) == 5) hits += 1;
  CHECK(rep.cells->accuracy == hits / 6.0);
  CHECK(rep.cells->avg_markup >= 0.0);
}

TEST_CASE("reports serialize to json and csv") {
  auto records = tie_free_corpus(700, 4, 2);
  std::vector<VariableOrdering> choices;
  for (const auto& r : records) choices.push_back(best_ordering(r));
  StrategyReport rep = evaluate_strategy(choices, records);
  std::string j = report_to_json(rep);
  CHECK(j.find("\"total_time\"") != std::string::npos);
  std::string row = report_csv_row("oracle", rep);
  CHECK(row.substr(0, 7) == "oracle,");
  CHECK(report_csv_header().find("avg_markup") != std::string::npos);
}
