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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "crickpred/dataset.hpp"
#include "crickpred/learners/common.hpp"
#include "crickpred/learners/forest.hpp"
#include "crickpred/learners/naive_bayes.hpp"
#include "crickpred/learners/svm.hpp"
#include "crickpred/learners/tree.hpp"

namespace crickpred::learn {

enum class LearnerKind { NaiveBayes, Tree, Forest, Svm };

inline constexpr LearnerKind kAllLearners[] = {LearnerKind::NaiveBayes, LearnerKind::Tree,
                                               LearnerKind::Forest, LearnerKind::Svm};

/// Short name used on the command line and in files: nb, tree, forest, svm.
std::string_view to_string(LearnerKind k);
/// Long name used in reports.
std::string_view display_name(LearnerKind k);
std::optional<LearnerKind> parse_learner(std::string_view s);

struct LearnerConfig {
  NaiveBayesConfig naive_bayes;
  C45Config tree;
  ForestConfig forest;
  SvmConfig svm;
};

struct Prediction {
  int label = 1;
  std::vector<double> probabilities;  // length m, sums to 1
};

struct TrainedModel {
  LearnerKind kind = LearnerKind::NaiveBayes;
  Schema schema;
  std::variant<NaiveBayes, Tree, Forest, Svm> payload;
  // Substituted for missing values at prediction time (training-set means
  // and modes), so rows without history still get a prediction.
  std::vector<double> fill_values;

  std::uint64_t fingerprint() const { return schema.fingerprint(); }

  /// Throws SchemaMismatch if the row has the wrong width.
  Prediction predict(const std::vector<double>& values) const;
  /// As above, but first checks that the row was encoded with a schema whose
  /// fingerprint matches the model's.
  Prediction predict(const Schema& row_schema, const std::vector<double>& values) const;
};

/// Trains one learner. `fill_values` defaults to the global imputation
/// statistics of `d`.
TrainedModel train(LearnerKind kind, const Dataset& d, const LearnerConfig& cfg = {});

class DeserializeError : public DataError {
 public:
  using DataError::DataError;
};

class VersionError : public DeserializeError {
 public:
  using DeserializeError::DeserializeError;
};

inline constexpr std::string_view kModelFormat = "crickpred-model";
inline constexpr int kModelVersion = 1;

/// JSON container: format, version, learner, schema, fingerprint, fill
/// values and the learner payload. Doubles are written in shortest
/// round-trip form, so a reloaded model predicts bit-identically.
void save_model(std::ostream& out, const TrainedModel& m);
void save_model(const std::filesystem::path& path, const TrainedModel& m);
TrainedModel load_model(std::istream& in);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace crickpred::learn
