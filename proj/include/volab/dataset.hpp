#pragma once
// Problem records with per-ordering timings, dataset transforms
// (dedup, grouped folds, balancing, augmentation) and the instance
// builders for the three learning paradigms.
//
// Per-ordering arrays are indexed by the lexicographic rank of the
// projection sequence (see ordering_index); a missing entry stands for a
// timeout.  The JSON Lines schema per record is
//   {"id": ..., "source": ..., "nvars": 3, "polys": "<text grammar>",
//    "timings": [22.16, null, ...], "timeout_limit": 30.0, "cells": [...]?}
// with null = timeout.  Records whose orderings all timed out are
// rejected at ingestion.

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "volab/features.hpp"
#include "volab/io.hpp"
#include "volab/polyset.hpp"

namespace volab {

struct ProblemRecord {
  std::string id;
  std::string source;  // group key for fold assignment
  PolySet polys;
  std::vector<std::optional<double>> timings;  // empty when not yet labeled
  double timeout_limit = 0.0;
  std::optional<std::vector<long long>> cells;

  bool labeled() const { return !timings.empty(); }
};

// Finite times pass through; a timeout is scored as twice the limit.
double penalized_time(const std::optional<double>& t, double limit);

std::vector<double> penalized_timings(const ProblemRecord& r);
double optimal_time(const ProblemRecord& r);  // min of the penalized timings

// Argmin of the penalized timings; ties go to the lowest ordering index.
VariableOrdering best_ordering(const ProblemRecord& r);

// Renames variables by sigma and re-indexes timings and cells so the
// per-ordering arrays describe the renamed problem.
ProblemRecord permute_record(const ProblemRecord& r, const Perm& sigma, bool tag_id = false);

// Keeps the first record (by input order) of every signature class:
// the cell-count vector when present, the exact timing array otherwise.
std::vector<ProblemRecord> dedup(const std::vector<ProblemRecord>& records);

struct FoldAssignment {
  int folds = 0;
  std::unordered_map<std::string, int> fold_by_id;

  int fold_of(const std::string& id) const;
};

// Groups records by source and assigns whole groups to folds, largest
// group first onto the currently smallest fold; groups of equal size are
// taken in seeded-shuffled order.  No source ever spans two folds.
FoldAssignment split_folds(const std::vector<ProblemRecord>& records, int k, std::uint64_t seed);

std::vector<ProblemRecord> records_in_fold(const std::vector<ProblemRecord>& records,
                                           const FoldAssignment& fa, int fold);
std::vector<ProblemRecord> records_outside_fold(const std::vector<ProblemRecord>& records,
                                                const FoldAssignment& fa, int fold);

// Applies an independent uniform random variable permutation to every
// record (labels transport with the timings).
std::vector<ProblemRecord> balance(const std::vector<ProblemRecord>& records, std::uint64_t seed);

// Applies all nvars! permutations to every record; output size is
// nvars! times the input size.
std::vector<ProblemRecord> augment(const std::vector<ProblemRecord>& records);

struct ClassificationData {
  Eigen::MatrixXd x;            // one row per record, nvars*27 columns
  std::vector<int> labels;      // ordering index per row
  std::vector<std::string> names;
};

struct RegressionData {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<std::string> names;
};

ClassificationData build_classification(const std::vector<ProblemRecord>& records);

// nvars! rows per record: the ordering-permuted embedding with the
// penalized time of that ordering (optionally log(1+t)) as target.
RegressionData build_ordering_regression(const std::vector<ProblemRecord>& records,
                                         bool log_targets = false);

enum class VarRegMode {
  original_set,  // one instance per variable of the input set
  projected      // instances along every projection prefix of the cascade
};

// Variable-level instances: the 27 features of one variable, with the
// best penalized time among orderings that project it next as target.
RegressionData build_variable_regression(const std::vector<ProblemRecord>& records,
                                         VarRegMode mode = VarRegMode::original_set);

struct IngestStats {
  std::size_t lines = 0;
  std::size_t rejected_all_timeout = 0;
};

std::vector<ProblemRecord> parse_problems(const std::string& jsonl, bool require_timings = true,
                                          IngestStats* stats = nullptr);
std::vector<ProblemRecord> load_problems(const std::string& path, bool require_timings = true,
                                         IngestStats* stats = nullptr);
std::string problems_to_jsonl(const std::vector<ProblemRecord>& records);
void save_problems(const std::string& path, const std::vector<ProblemRecord>& records);

}  // namespace volab
