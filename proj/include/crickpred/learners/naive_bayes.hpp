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

#include <vector>

#include "crickpred/dataset.hpp"

namespace crickpred::learn {

struct NaiveBayesConfig {
  double laplace = 1.0;
  double variance_floor = 1e-9;
};

/// Priors from class frequencies; Laplace-smoothed token likelihoods for
/// categorical features (an unseen token counts as zero occurrences);
/// Gaussian likelihoods for numeric features. Scores are kept in log space.
struct NaiveBayes {
  int num_classes = 2;
  std::vector<FeatureKind> kinds;
  std::vector<double> log_prior;                        // [class]
  std::vector<std::vector<double>> mean, variance;      // [class][feature]; numeric only
  std::vector<std::vector<std::vector<double>>> log_p;  // [class][feature][token slot]
  double laplace = 1.0;

  /// Log prior plus log likelihoods; -inf for classes without training rows.
  std::vector<double> log_scores(const std::vector<double>& values) const;
  std::vector<double> predict_proba(const std::vector<double>& values) const;

  bool operator==(const NaiveBayes&) const = default;
};

NaiveBayes train_naive_bayes(const Dataset& d, const NaiveBayesConfig& cfg = {});

/// Normalized exponentials of log scores (max-shifted).
std::vector<double> softmax(const std::vector<double>& log_scores);

}  // namespace crickpred::learn
