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

struct TreeNode {
  enum class Kind { Leaf, Threshold, OneVsRest, Multiway };
  Kind kind = Kind::Leaf;
  int feature = -1;
  // Threshold: v <= threshold goes to children[0], otherwise children[1].
  // OneVsRest: v == threshold goes to children[0], otherwise children[1].
  double threshold = 0.0;
  // Multiway: children[token] for tokens 0..T-1 and children[T] for the
  // unknown token; -1 where no training row reached that branch.
  std::vector<int> children;
  // Class frequencies of the training rows at this node; sums to 1.
  std::vector<double> distribution;

  bool operator==(const TreeNode&) const = default;
};

/// A trained decision tree stored as a flat node array; node 0 is the root.
struct Tree {
  std::vector<TreeNode> nodes;
  int num_classes = 2;

  /// Class distribution of the leaf a row reaches. A multiway branch that
  /// saw no training rows stops at the splitting node.
  const std::vector<double>& distribution(const std::vector<double>& values) const;
  std::size_t depth() const;
  std::size_t leaf_count() const;

  bool operator==(const Tree&) const = default;
};

/// C4.5-style tree: gain ratio over numeric binary splits at midpoints and
/// categorical multiway splits; only splits with at least mean gain compete
/// on ratio. Unpruned.
struct C45Config {
  int min_leaf = 2;
  int max_depth = 0;  // 0 = unlimited
};

Tree train_c45(const Dataset& d, const C45Config& cfg = {});

/// CART with Gini impurity: numeric binary splits at midpoints and
/// categorical one-token-versus-rest splits. With mtry in 1..F-1 each node
/// considers mtry features sampled without replacement from `seed`.
struct CartConfig {
  int min_leaf = 1;
  int max_depth = 0;  // 0 = unlimited
  int mtry = 0;       // 0 = all features
  std::uint64_t seed = 1;
};

Tree train_cart(const Dataset& d, const CartConfig& cfg = {});

/// CART on a multiset of row indices (e.g. a bootstrap sample).
Tree train_cart(const Dataset& d, std::vector<std::size_t> rows, const CartConfig& cfg);

}  // namespace crickpred::learn
