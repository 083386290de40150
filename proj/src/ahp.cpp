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

#include "crickpred/ahp.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include <fmt/format.h>

#include "crickpred/csv.hpp"

namespace crickpred::ahp {

PairwiseMatrix::PairwiseMatrix(std::vector<std::vector<double>> entries)
    : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  if (n == 0) throw DataError("pairwise matrix is empty");
  for (std::size_t i = 0; i < n; ++i) {
    if (entries_[i].size() != n) {
      throw DataError(fmt::format("pairwise matrix row {} has {} entries, expected {}", i + 1,
                                  entries_[i].size(), n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double a = entries_[i][j];
      if (!(a > 0.0) || !std::isfinite(a)) {
        throw NonPositiveEntry(fmt::format("entry ({}, {}) = {} is not positive", i + 1, j + 1, a));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double product = entries_[i][j] * entries_[j][i];
      if (std::abs(product - 1.0) > 1e-9) {
        throw NotReciprocal(fmt::format("entries ({0}, {1}) and ({1}, {0}) are not reciprocal",
                                        i + 1, j + 1));
      }
    }
  }
}

PairwiseMatrix PairwiseMatrix::from_ratios(const std::vector<double>& v) {
  std::vector<std::vector<double>> a(v.size(), std::vector<double>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) a[i][j] = i == j ? 1.0 : v[i] / v[j];
  }
  return PairwiseMatrix(std::move(a));
}

namespace {

double parse_entry(const std::string& token, int line) {
  const auto slash = token.find('/');
  if (slash == std::string::npos) {
    if (auto v = csv::parse_double(token)) return *v;
  } else {
    auto num = csv::parse_double(std::string_view(token).substr(0, slash));
    auto den = csv::parse_double(std::string_view(token).substr(slash + 1));
    if (num && den && *den != 0.0) return *num / *den;
  }
  throw DataError(fmt::format("matrix line {}: cannot read '{}'", line, token));
}

}  // namespace

PairwiseMatrix PairwiseMatrix::parse(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream tokens(line);
    std::vector<double> row;
    for (std::string tok; tokens >> tok;) row.push_back(parse_entry(tok, line_no));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return PairwiseMatrix(std::move(rows));
}

double random_index(std::size_t n) {
  static constexpr double kRi[] = {0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49};
  if (n == 0 || n > std::size(kRi)) {
    throw PreconditionError(fmt::format("no random index for n = {}", n));
  }
  return kRi[n - 1];
}

Eigenpair principal_eigenpair(const std::vector<std::vector<double>>& a, double tolerance,
                              int max_iterations) {
  const std::size_t n = a.size();
  if (n == 0) throw PreconditionError("empty matrix");
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (int it = 1; it <= max_iterations; ++it) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a[i][j] * v[j];
      next[i] = s;
      sum += s;
    }
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      next[i] /= sum;
      change = std::max(change, std::abs(next[i] - v[i]) / next[i]);
    }
    v.swap(next);
    if (change < tolerance) {
      // Rayleigh-style estimate: (A v)_i / v_i averaged over components.
      double lambda = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += a[i][j] * v[j];
        lambda += s / v[i];
      }
      return {v, lambda / static_cast<double>(n), it};
    }
  }
  throw NoConvergence(
      fmt::format("power iteration did not converge in {} iterations", max_iterations));
}

PriorityVector weights_from_matrix(const PairwiseMatrix& m) {
  const auto e = principal_eigenpair(m.entries());
  PriorityVector p;
  p.weights = e.vector;
  p.lambda_max = e.value;
  p.iterations = e.iterations;
  const auto n = static_cast<double>(m.size());
  if (m.size() > 1) p.consistency_index = (e.value - n) / (n - 1.0);
  const double ri = m.size() <= 10 ? random_index(m.size()) : 1.49;
  p.consistency_ratio = ri > 0.0 ? p.consistency_index / ri : 0.0;
  return p;
}

std::vector<VectorAudit> validate_weight_vectors(const features::WeightVectors& w,
                                                 double tolerance) {
  std::vector<VectorAudit> out;
  for (auto facet : {features::Facet::Batting, features::Facet::Bowling}) {
    for (auto kind : features::kAllDerivedKinds) {
      VectorAudit a{facet, kind};
      for (const auto& t : w.terms(facet, kind)) a.abs_sum += std::abs(t.weight);
      a.deviation = a.abs_sum - 1.0;
      a.flagged = std::abs(a.deviation) > tolerance;
      out.push_back(a);
    }
  }
  return out;
}

std::string format_audit(const std::vector<VectorAudit>& audit) {
  std::string out = fmt::format("{:<24}{:>10}{:>12}  {}\n", "vector", "abs_sum", "deviation",
                                "status");
  for (const auto& a : audit) {
    out += fmt::format("{:<24}{:>10.4f}{:>+12.4f}  {}\n",
                       fmt::format("{}.{}", features::to_string(a.facet),
                                   features::to_string(a.kind)),
                       a.abs_sum, a.deviation, a.flagged ? "FLAGGED" : "ok");
  }
  return out;
}

std::string format_priorities(const PriorityVector& p) {
  std::string out;
  for (std::size_t i = 0; i < p.weights.size(); ++i) {
    out += fmt::format("w{} = {:.6f}\n", i + 1, p.weights[i]);
  }
  out += fmt::format("lambda_max = {:.6f}\nCI = {:.6g}\nCR = {:.6g}\n", p.lambda_max,
                     p.consistency_index, p.consistency_ratio);
  return out;
}

}  // namespace crickpred::ahp
