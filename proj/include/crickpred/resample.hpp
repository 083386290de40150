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
#include <span>
#include <vector>

#include "crickpred/dataset.hpp"
#include "crickpred/error.hpp"

namespace crickpred::resample {

struct SmoteConfig {
  int k = 5;
  std::uint64_t seed = 1;
};

/// A class with fewer than two rows has no segment to interpolate along.
class DegenerateClass : public DataError {
 public:
  using DataError::DataError;
};

/// How a synthetic row was made: base row, neighbour row (indices into the
/// rows given to the generator) and the interpolation factor.
struct SyntheticRecord {
  std::size_t base = 0;
  std::size_t neighbor = 0;
  double r = 0.0;
};

struct SmoteOutput {
  std::vector<Example> synthetics;
  std::vector<SyntheticRecord> records;  // parallel to synthetics
};

/// Indices of the k nearest other rows of rows[i] (ties broken by index).
/// Distance: squared differences of z-scored numeric features plus 1 per
/// categorical mismatch.
std::vector<std::vector<std::size_t>> nearest_neighbors(const Schema& schema,
                                                        std::span<const Example> rows, int k);

/// Produces amount_pct / 100 synthetics per row. Each takes a distinct
/// neighbour from the row's k nearest (cycling once all have been used).
/// Numeric features: x + r * (neighbour - x), r uniform in [0, 1), clamped
/// to the segment. Categorical features: x's token when r < 0.5, else the
/// neighbour's. k is clamped to |rows| - 1. Rows must be imputed.
SmoteOutput smote_class(const Schema& schema, std::span<const Example> rows, int amount_pct,
                        const SmoteConfig& cfg);

/// Oversamples every non-empty class up to the majority count; classes with
/// no rows at all stay empty. Originals come first in
/// their original order, then synthetics class by class. If `trace` is
/// given, it receives one record per synthetic with indices into d.rows.
Dataset balance_all(const Dataset& d, const SmoteConfig& cfg,
                    std::vector<SyntheticRecord>* trace = nullptr, unsigned jobs = 1);

}  // namespace crickpred::resample
