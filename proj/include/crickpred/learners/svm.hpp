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
#include <vector>

#include "crickpred/dataset.hpp"

namespace crickpred::learn {

struct SvmConfig {
  double C = 1.0;
  double gamma = 0.0;     // 0 = 1 / (one-hot encoded width)
  double tol = 1e-3;      // stopping tolerance on the maximal violating pair
  long max_iter = 0;      // 0 = max(10^7, 100 n) per binary problem
  double cache_mb = 400;  // kernel-row cache budget shared by parallel problems
  unsigned jobs = 1;
};

/// Input scaling: numeric features min-max scaled with training statistics,
/// categorical features one-hot encoded. The one-hot vectors are never
/// materialized; squared distance adds 2 for two different known tokens and
/// 1 when exactly one side is an unknown token (an all-zero indicator).
struct SvmEncoder {
  std::vector<FeatureKind> kinds;
  std::vector<double> minimum, range;  // numeric features; range 0 maps to 0
  std::size_t encoded_width = 0;

  static SvmEncoder fit(const Dataset& d);
  std::vector<double> transform(const std::vector<double>& values) const;
  double squared_distance(const double* a, const double* b) const;

  bool operator==(const SvmEncoder&) const = default;
};

/// One binary machine of the one-versus-one ensemble. decision > 0 votes
/// for `positive`, otherwise for `negative` (both 1-based labels).
struct BinarySvm {
  int positive = 1;
  int negative = 2;
  std::vector<std::vector<double>> support;  // encoded support vectors
  std::vector<double> coef;                  // y_i * alpha_i
  double rho = 0.0;
  long iterations = 0;
  bool converged = true;

  bool operator==(const BinarySvm&) const = default;
};

struct Svm {
  int num_classes = 2;
  SvmEncoder encoder;
  double gamma = 1.0;
  double C = 1.0;
  std::vector<BinarySvm> machines;
  int single_class = 1;  // prediction when training saw only one class

  /// False if any binary problem hit max_iter.
  bool converged() const;
  double kernel(const double* a, const double* b) const;
  /// Decision values of every machine for a raw (unscaled) row.
  std::vector<double> decision_values(const std::vector<double>& values) const;
  /// Normalized vote counts.
  std::vector<double> predict_proba(const std::vector<double>& values) const;
  /// Most votes; ties go to the larger summed margin, then the lower class.
  int predict(const std::vector<double>& values) const;

  bool operator==(const Svm&) const = default;
};

/// Alphas and bias of one solved binary problem, exposed for tests.
struct BinarySolution {
  std::vector<double> alpha;
  std::vector<int> y;  // +1 / -1
  double rho = 0.0;
  long iterations = 0;
  bool converged = true;
};

/// Solves min 1/2 a'Qa - e'a s.t. 0 <= a <= C, y'a = 0 with an SMO solver
/// using second-order working-set selection. `rows` are encoded rows.
BinarySolution solve_binary(const Svm& shape, const std::vector<std::vector<double>>& rows,
                            const std::vector<int>& y, const SvmConfig& cfg);

Svm train_svm(const Dataset& d, const SvmConfig& cfg = {});

}  // namespace crickpred::learn
