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

#include "crickpred/learners/forest.hpp"

#include <cmath>
#include <numeric>

#include "crickpred/learners/common.hpp"
#include "crickpred/parallel.hpp"
#include "crickpred/random.hpp"

namespace crickpred::learn {

int default_mtry(std::size_t n_features) {
  if (n_features == 0) return 1;
  return static_cast<int>(std::floor(std::log2(static_cast<double>(n_features)))) + 1;
}

std::vector<double> Forest::predict_proba(const std::vector<double>& values) const {
  std::vector<double> votes(static_cast<std::size_t>(num_classes), 0.0);
  for (const auto& t : trees) votes[argmax(t.distribution(values))] += 1.0;
  for (auto& v : votes) v /= static_cast<double>(trees.size());
  return votes;
}

Forest train_forest(const Dataset& d, const ForestConfig& cfg) {
  require_trainable(d);
  if (cfg.n_trees < 1) throw PreconditionError("a forest needs at least one tree");
  Forest f;
  f.num_classes = d.schema.num_classes;
  f.trees.resize(static_cast<std::size_t>(cfg.n_trees));
  const int mtry = cfg.mtry > 0 ? cfg.mtry : default_mtry(d.schema.size());
  const std::size_t n = d.rows.size();
  parallel_for(f.trees.size(), cfg.jobs, [&](std::size_t t) {
    const std::uint64_t seed = derive_seed(cfg.seed, t);
    std::vector<std::size_t> rows(n);
    if (cfg.bootstrap) {
      Rng rng(derive_seed(seed, 0xb007));
      for (auto& r : rows) r = static_cast<std::size_t>(rng.below(n));
    } else {
      std::iota(rows.begin(), rows.end(), std::size_t{0});
    }
    CartConfig cc;
    cc.min_leaf = 1;
    cc.mtry = mtry;
    cc.seed = seed;
    f.trees[t] = train_cart(d, std::move(rows), cc);
  });
  return f;
}

}  // namespace crickpred::learn
