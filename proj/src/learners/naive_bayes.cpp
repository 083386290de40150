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

#include "crickpred/learners/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "crickpred/learners/common.hpp"

namespace crickpred::learn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

std::vector<double> softmax(const std::vector<double>& log_scores) {
  const double top = *std::max_element(log_scores.begin(), log_scores.end());
  std::vector<double> p(log_scores.size(), 0.0);
  if (top == kNegInf) {
    std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(p.size()));
    return p;
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    p[c] = log_scores[c] == kNegInf ? 0.0 : std::exp(log_scores[c] - top);
    sum += p[c];
  }
  for (auto& x : p) x /= sum;
  return p;
}

std::vector<double> NaiveBayes::log_scores(const std::vector<double>& values) const {
  std::vector<double> s = log_prior;
  for (std::size_t c = 0; c < s.size(); ++c) {
    if (s[c] == kNegInf) continue;
    for (std::size_t j = 0; j < kinds.size(); ++j) {
      const double v = values[j];
      if (kinds[j] == FeatureKind::Numeric) {
        const double var = variance[c][j];
        const double diff = v - mean[c][j];
        s[c] += -0.5 * std::log(2.0 * std::numbers::pi * var) - diff * diff / (2.0 * var);
      } else {
        const auto& table = log_p[c][j];
        const std::size_t unknown = table.size() - 1;
        const std::size_t slot = v >= 0.0 && v < static_cast<double>(unknown)
                                     ? static_cast<std::size_t>(v)
                                     : unknown;
        s[c] += table[slot];
      }
    }
  }
  return s;
}

std::vector<double> NaiveBayes::predict_proba(const std::vector<double>& values) const {
  return softmax(log_scores(values));
}

NaiveBayes train_naive_bayes(const Dataset& d, const NaiveBayesConfig& cfg) {
  require_trainable(d);
  if (!(cfg.laplace > 0.0)) throw PreconditionError("Laplace smoothing must be positive");
  const auto m = static_cast<std::size_t>(d.schema.num_classes);
  const std::size_t f = d.schema.size();
  NaiveBayes nb;
  nb.num_classes = d.schema.num_classes;
  nb.laplace = cfg.laplace;
  for (const auto& spec : d.schema.features) nb.kinds.push_back(spec.kind);
  std::vector<double> n_c(m, 0.0);
  for (const auto& r : d.rows) n_c[static_cast<std::size_t>(r.label - 1)] += 1.0;
  const double n = static_cast<double>(d.rows.size());
  nb.log_prior.resize(m);
  for (std::size_t c = 0; c < m; ++c) nb.log_prior[c] = n_c[c] > 0 ? std::log(n_c[c] / n) : kNegInf;

  nb.mean.assign(m, std::vector<double>(f, 0.0));
  nb.variance.assign(m, std::vector<double>(f, cfg.variance_floor));
  nb.log_p.assign(m, std::vector<std::vector<double>>(f));
  for (std::size_t j = 0; j < f; ++j) {
    if (d.schema.features[j].kind == FeatureKind::Numeric) {
      std::vector<double> sum(m, 0.0), sq(m, 0.0);
      for (const auto& r : d.rows) sum[static_cast<std::size_t>(r.label - 1)] += r.values[j];
      for (std::size_t c = 0; c < m; ++c) nb.mean[c][j] = n_c[c] > 0 ? sum[c] / n_c[c] : 0.0;
      for (const auto& r : d.rows) {
        const auto c = static_cast<std::size_t>(r.label - 1);
        const double diff = r.values[j] - nb.mean[c][j];
        sq[c] += diff * diff;
      }
      for (std::size_t c = 0; c < m; ++c) {
        const double var = n_c[c] > 0 ? sq[c] / n_c[c] : 0.0;
        nb.variance[c][j] = std::max(var, cfg.variance_floor);
      }
    } else {
      const std::size_t t = d.schema.features[j].tokens.size();
      std::vector<std::vector<double>> counts(m, std::vector<double>(t + 1, 0.0));
      for (const auto& r : d.rows) {
        const double v = r.values[j];
        const std::size_t slot = v >= 0.0 && v < static_cast<double>(t) ? static_cast<std::size_t>(v) : t;
        counts[static_cast<std::size_t>(r.label - 1)][slot] += 1.0;
      }
      for (std::size_t c = 0; c < m; ++c) {
        // Known tokens share the smoothing mass; the unknown slot gets the
        // probability of a token seen zero times.
        auto& table = nb.log_p[c][j];
        table.assign(t + 1, 0.0);
        if (n_c[c] == 0.0) continue;  // class never scored
        const double denom = n_c[c] + cfg.laplace * static_cast<double>(t);
        for (std::size_t k = 0; k < t; ++k) table[k] = std::log((counts[c][k] + cfg.laplace) / denom);
        table[t] = std::log(cfg.laplace / denom);
      }
    }
  }
  return nb;
}

}  // namespace crickpred::learn
