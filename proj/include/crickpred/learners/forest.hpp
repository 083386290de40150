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

#include "crickpred/learners/tree.hpp"

namespace crickpred::learn {

struct ForestConfig {
  int n_trees = 100;
  int mtry = 0;  // 0 = floor(log2 F) + 1
  bool bootstrap = true;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

/// Random forest of unpruned CART trees. Tree t draws its bootstrap sample
/// and feature subsets from derive_seed(seed, t), so the forest does not
/// depend on the number of threads.
struct Forest {
  std::vector<Tree> trees;
  int num_classes = 2;

  /// Vote shares of the trees' majority classes.
  std::vector<double> predict_proba(const std::vector<double>& values) const;

  bool operator==(const Forest&) const = default;
};

int default_mtry(std::size_t n_features);

Forest train_forest(const Dataset& d, const ForestConfig& cfg = {});

}  // namespace crickpred::learn
