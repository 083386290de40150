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

#include <span>
#include <vector>

#include "crickpred/dataset.hpp"
#include "crickpred/error.hpp"

namespace crickpred::learn {

class AllZero : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DegenerateSplit : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Shannon entropy in bits of a class-count vector; 0 log 0 = 0. Throws
/// AllZero if no count is positive.
double entropy(std::span<const double> counts);

struct SplitScore {
  double gain = 0.0;
  double split_info = 0.0;
  double gain_ratio = 0.0;
};

/// Scores a partition given each subset's class counts; the parent is their
/// sum. Throws DegenerateSplit if a subset is empty or split info is zero.
SplitScore score_partition(const std::vector<std::vector<double>>& subset_counts);

/// A candidate split of one feature: a numeric threshold (v <= threshold
/// goes left) or, for categorical features, one subset per token.
struct CandidateSplit {
  enum class Kind { Threshold, Multiway } kind = Kind::Threshold;
  double threshold = 0.0;
};

/// Gain, split info and gain ratio of splitting `rows` (all rows if empty)
/// of `d` on `feature`.
SplitScore gain_and_ratio(const Dataset& d, std::size_t feature, const CandidateSplit& split,
                          std::span<const std::size_t> rows = {});

/// Gini impurity 1 - sum p_i^2.
double gini(std::span<const double> counts);

}  // namespace crickpred::learn
