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

#include "crickpred/resample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "crickpred/parallel.hpp"
#include "crickpred/random.hpp"

namespace crickpred::resample {

namespace {

void require_imputed(std::span<const Example> rows) {
  for (const auto& r : rows) {
    if (std::any_of(r.values.begin(), r.values.end(), is_missing)) {
      throw PreconditionError("SMOTE needs imputed rows; found a missing value");
    }
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> nearest_neighbors(const Schema& schema,
                                                        std::span<const Example> rows, int k) {
  const std::size_t n = rows.size();
  const std::size_t f = schema.size();
  // Standardize numeric columns.
  std::vector<double> mean(f, 0.0), scale(f, 1.0);
  for (std::size_t j = 0; j < f; ++j) {
    if (schema.features[j].kind != FeatureKind::Numeric || n == 0) continue;
    double s = 0.0;
    for (const auto& r : rows) s += r.values[j];
    mean[j] = s / static_cast<double>(n);
    double ss = 0.0;
    for (const auto& r : rows) ss += (r.values[j] - mean[j]) * (r.values[j] - mean[j]);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    scale[j] = sd > 0.0 ? sd : 1.0;
  }
  std::vector<std::vector<double>> z(n, std::vector<double>(f));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < f; ++j) {
      z[i][j] = schema.features[j].kind == FeatureKind::Numeric
                    ? (rows[i].values[j] - mean[j]) / scale[j]
                    : rows[i].values[j];
    }
  }
  const auto kk = static_cast<std::size_t>(std::clamp<long>(k, 0, static_cast<long>(n) - 1));
  std::vector<std::vector<std::size_t>> out(n);
  std::vector<std::pair<double, std::size_t>> dist;
  for (std::size_t i = 0; i < n; ++i) {
    dist.clear();
    for (std::size_t o = 0; o < n; ++o) {
      if (o == i) continue;
      double d = 0.0;
      for (std::size_t j = 0; j < f; ++j) {
        if (schema.features[j].kind == FeatureKind::Numeric) {
          const double diff = z[i][j] - z[o][j];
          d += diff * diff;
        } else if (z[i][j] != z[o][j]) {
          d += 1.0;
        }
      }
      dist.emplace_back(d, o);
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(kk), dist.end());
    for (std::size_t t = 0; t < kk; ++t) out[i].push_back(dist[t].second);
  }
  return out;
}

SmoteOutput smote_class(const Schema& schema, std::span<const Example> rows, int amount_pct,
                        const SmoteConfig& cfg) {
  if (cfg.k < 1) throw PreconditionError("SMOTE k must be at least 1");
  if (amount_pct < 0 || amount_pct % 100 != 0) {
    throw PreconditionError(fmt::format("SMOTE amount {} is not a multiple of 100", amount_pct));
  }
  if (rows.size() < 2) {
    throw DegenerateClass(fmt::format("SMOTE needs at least 2 rows in a class, got {}", rows.size()));
  }
  require_imputed(rows);
  const auto neighbors = nearest_neighbors(schema, rows, cfg.k);
  const int per_row = amount_pct / 100;
  Rng rng(cfg.seed);
  SmoteOutput out;
  out.synthetics.reserve(rows.size() * static_cast<std::size_t>(per_row));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& nn = neighbors[i];
    std::vector<std::size_t> pool;
    for (int s = 0; s < per_row; ++s) {
      if (pool.empty()) {
        for (auto idx : rng.sample_without_replacement(nn.size(), nn.size())) {
          pool.push_back(nn[idx]);
        }
        std::reverse(pool.begin(), pool.end());
      }
      const std::size_t o = pool.back();
      pool.pop_back();
      const double r = rng.uniform();
      const Example& x = rows[i];
      const Example& y = rows[o];
      Example syn;
      syn.label = x.label;
      syn.provenance = x.provenance;
      syn.synthetic = true;
      syn.values.resize(x.values.size());
      for (std::size_t j = 0; j < x.values.size(); ++j) {
        if (schema.features[j].kind == FeatureKind::Numeric) {
          const double lo = std::min(x.values[j], y.values[j]);
          const double hi = std::max(x.values[j], y.values[j]);
          syn.values[j] = std::clamp(x.values[j] + r * (y.values[j] - x.values[j]), lo, hi);
        } else {
          syn.values[j] = r < 0.5 ? x.values[j] : y.values[j];
        }
      }
      out.synthetics.push_back(std::move(syn));
      out.records.push_back({i, o, r});
    }
  }
  return out;
}

Dataset balance_all(const Dataset& d, const SmoteConfig& cfg, std::vector<SyntheticRecord>* trace,
                    unsigned jobs) {
  const auto m = static_cast<std::size_t>(d.schema.num_classes);
  std::vector<std::vector<std::size_t>> members(m);
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    members[static_cast<std::size_t>(d.rows[i].label - 1)].push_back(i);
  }
  std::size_t majority = 0;
  for (const auto& v : members) majority = std::max(majority, v.size());

  std::vector<SmoteOutput> outputs(m);
  parallel_for(m, jobs, [&](std::size_t c) {
    const std::size_t have = members[c].size();
    if (have >= majority || have == 0) return;
    if (have < 2) {
      throw DegenerateClass(
          fmt::format("class {} has {} row(s); SMOTE needs at least 2", c + 1, have));
    }
    const std::size_t need = majority - have;
    const std::size_t rounds = (need + have - 1) / have;
    std::vector<Example> rows;
    rows.reserve(have);
    for (auto i : members[c]) rows.push_back(d.rows[i]);
    const SmoteConfig class_cfg{cfg.k, cfg.seed + c};
    auto full = smote_class(d.schema, rows, static_cast<int>(rounds * 100), class_cfg);
    // Keep exactly `need` synthetics, chosen uniformly, in generation order.
    Rng rng(derive_seed(class_cfg.seed, 0x5107e));
    auto keep = rng.sample_without_replacement(full.synthetics.size(), need);
    std::sort(keep.begin(), keep.end());
    SmoteOutput& out = outputs[c];
    for (auto k : keep) {
      out.synthetics.push_back(std::move(full.synthetics[k]));
      const auto& rec = full.records[k];
      out.records.push_back({members[c][rec.base], members[c][rec.neighbor], rec.r});
    }
  });
  Dataset out = d;
  if (trace) trace->clear();
  for (auto& o : outputs) {
    for (auto& s : o.synthetics) out.rows.push_back(std::move(s));
    if (trace) trace->insert(trace->end(), o.records.begin(), o.records.end());
  }
  return out;
}

}  // namespace crickpred::resample
