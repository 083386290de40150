/*
 * Copyright 2026 The crickpred Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <iosfwd>
#include <string>
#include <vector>

#include "crickpred/dataset.hpp"
#include "crickpred/error.hpp"
#include "crickpred/learners/model.hpp"
#include "crickpred/resample.hpp"

namespace crickpred::eval {

class TooFewRows : public DataError {
 public:
  using DataError::DataError;
};

class ShapeMismatch : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

enum class SplitStrategy { Stratified, Chronological };

std::string_view to_string(SplitStrategy s);
std::optional<SplitStrategy> parse_strategy(std::string_view s);

struct SplitSpec {
  double train_fraction = 0.9;
  SplitStrategy strategy = SplitStrategy::Stratified;
  std::uint64_t seed = 1;
};

struct SplitIndices {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

/// Stratified: each class is shuffled with its own seed and round(f * n_c)
/// rows (at least one, at most n_c - 1) go to training; every non-empty
/// class needs two rows (TooFewRows). Chronological: rows are ordered by
/// (match date, player, sequence) and the first round(f * n) train.
SplitIndices split_indices(const Dataset& d, const SplitSpec& spec);

/// "60/40" for 0.6.
std::string split_label(double train_fraction);

struct ConfusionMatrix {
  // counts[true - 1][predicted - 1]
  std::vector<std::vector<long>> counts;

  explicit ConfusionMatrix(int m = 2)
      : counts(static_cast<std::size_t>(m), std::vector<long>(static_cast<std::size_t>(m), 0)) {}
  long total() const;
  bool operator==(const ConfusionMatrix&) const = default;
};

struct MetricSet {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double auroc = 0.0;
  double rmse = 0.0;

  bool operator==(const MetricSet&) const = default;
};

/// Area under the ROC curve of scores for a binary problem via the
/// Mann-Whitney statistic; tied scores count one half. Throws
/// PreconditionError if either class is absent.
double auroc_binary(const std::vector<double>& scores, const std::vector<bool>& positive);

/// Builds the confusion matrix from true and predicted labels.
ConfusionMatrix confusion(int m, const std::vector<int>& truth, const std::vector<int>& predicted);

/// Accuracy; support-weighted precision, recall, F1 and one-vs-rest AUROC
/// (classes absent from the truth or present in every row are skipped; 0.5
/// if none remain); RMSE over every (row, class) probability residual.
MetricSet metrics(const ConfusionMatrix& cm, const std::vector<std::vector<double>>& proba,
                  const std::vector<int>& truth);

struct ModelEvaluation {
  ConfusionMatrix confusion;
  MetricSet metrics;
  std::vector<std::vector<double>> proba;
  std::vector<int> predicted;
};

ModelEvaluation evaluate_model(const learn::TrainedModel& model, const Dataset& test);

/// The data one split cell trains and tests on.
struct PreparedSplit {
  SplitIndices indices;
  ImputationStats stats;  // fitted on the training fold only
  Dataset train;          // imputed (per-class) and, if enabled, oversampled
  Dataset test;           // imputed with training-fold global statistics
  std::vector<resample::SyntheticRecord> synthetic_trace;  // indices into imputed fold
};

PreparedSplit prepare_split(const Dataset& d, const SplitSpec& spec, bool smote,
                            const resample::SmoteConfig& smote_cfg, unsigned jobs = 1);

struct ExperimentConfig {
  std::vector<learn::LearnerKind> learners{std::begin(learn::kAllLearners),
                                           std::end(learn::kAllLearners)};
  std::vector<double> splits{0.6, 0.7, 0.8, 0.9};
  SplitStrategy strategy = SplitStrategy::Stratified;
  std::uint64_t seed = 1;
  bool smote = true;
  resample::SmoteConfig smote_cfg;
  learn::LearnerConfig learner_cfg;
  unsigned jobs = 1;
};

struct CellResult {
  learn::LearnerKind learner = learn::LearnerKind::NaiveBayes;
  double train_fraction = 0.0;
  MetricSet metrics;
  ConfusionMatrix confusion;
  long train_rows = 0;
  long synthetic_rows = 0;
  long test_rows = 0;
  bool converged = true;
  double seconds = 0.0;  // wall time; not part of the deterministic report
};

struct EvalReport {
  std::string title;
  int num_classes = 2;
  std::vector<CellResult> cells;  // ordered by split, then learner

  const CellResult* find(learn::LearnerKind k, double train_fraction) const;
  /// Highest-accuracy cell of a learner (earliest split on ties).
  const CellResult* best(learn::LearnerKind k) const;
  std::vector<learn::LearnerKind> learners() const;
  std::vector<double> splits() const;
};

/// Progress callback invoked after each cell.
using ProgressFn = std::function<void(const CellResult&)>;

EvalReport run_experiment(const Dataset& d, const ExperimentConfig& cfg,
                          const ProgressFn& progress = {});

/// Aligned text tables: accuracy grid (learner x split), metrics at each
/// learner's best split, metrics at the 90/10 split (if run) and the
/// confusion matrices of those cells.
std::string format_report(const EvalReport& r, const std::vector<std::string>& class_names = {});

/// One row per (learner, split, metric): accuracy, precision, recall, f1,
/// auroc, rmse, train_rows, synthetic_rows, test_rows, converged and every
/// confusion entry as confusion_<true>_<pred>.
void write_report_csv(std::ostream& out, const EvalReport& r);
EvalReport read_report_csv(std::istream& in);

/// learner,split,seconds
void write_timings_csv(std::ostream& out, const EvalReport& r);

}  // namespace crickpred::eval
