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

#include "crickpred/learners/entropy.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include <fmt/format.h>

namespace crickpred::learn {

double entropy(std::span<const double> counts) {
  const double n = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (!(n > 0.0)) throw AllZero("entropy of an all-zero count vector");
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) {
      const double p = c / n;
      h -= p * std::log2(p);
    }
  }
  return h;
}

double gini(std::span<const double> counts) {
  const double n = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (!(n > 0.0)) throw AllZero("gini of an all-zero count vector");
  double s = 0.0;
  for (double c : counts) s += (c / n) * (c / n);
  return 1.0 - s;
}

SplitScore score_partition(const std::vector<std::vector<double>>& subset_counts) {
  if (subset_counts.size() < 2) throw DegenerateSplit("a split needs at least two subsets");
  const std::size_t m = subset_counts.front().size();
  std::vector<double> parent(m, 0.0);
  std::vector<double> sizes;
  for (const auto& s : subset_counts) {
    if (s.size() != m) throw PreconditionError("subsets disagree on the number of classes");
    const double size = std::accumulate(s.begin(), s.end(), 0.0);
    if (!(size > 0.0)) throw DegenerateSplit("a split subset is empty");
    sizes.push_back(size);
    for (std::size_t c = 0; c < m; ++c) parent[c] += s[c];
  }
  const double n = std::accumulate(sizes.begin(), sizes.end(), 0.0);
  SplitScore out;
  double children = 0.0;
  for (std::size_t i = 0; i < subset_counts.size(); ++i) {
    const double w = sizes[i] / n;
    children += w * entropy(subset_counts[i]);
    out.split_info -= w * std::log2(w);
  }
  out.gain = entropy(parent) - children;
  if (!(out.split_info > 0.0)) throw DegenerateSplit("split information is zero");
  out.gain_ratio = out.gain / out.split_info;
  return out;
}

SplitScore gain_and_ratio(const Dataset& d, std::size_t feature, const CandidateSplit& split,
                          std::span<const std::size_t> rows) {
  const auto m = static_cast<std::size_t>(d.schema.num_classes);
  std::vector<std::size_t> all;
  if (rows.empty()) {
    all.resize(d.rows.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    rows = all;
  }
  std::map<double, std::vector<double>> groups;
  for (auto i : rows) {
    const auto& r = d.rows[i];
    const double v = r.values.at(feature);
    const double key = split.kind == CandidateSplit::Kind::Threshold
                           ? (v <= split.threshold ? 0.0 : 1.0)
                           : v;
    auto& counts = groups[key];
    if (counts.empty()) counts.assign(m, 0.0);
    counts[static_cast<std::size_t>(r.label - 1)] += 1.0;
  }
  std::vector<std::vector<double>> subsets;
  for (auto& [key, counts] : groups) subsets.push_back(std::move(counts));
  if (split.kind == CandidateSplit::Kind::Threshold && subsets.size() < 2) {
    throw DegenerateSplit(fmt::format("threshold {} leaves one side empty", split.threshold));
  }
  return score_partition(subsets);
}

}  // namespace crickpred::learn
