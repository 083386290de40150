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

#include <iosfwd>
#include <string>
#include <vector>

#include "crickpred/error.hpp"
#include "crickpred/weights.hpp"

namespace crickpred::ahp {

class NotReciprocal : public DataError {
 public:
  using DataError::DataError;
};

class NonPositiveEntry : public DataError {
 public:
  using DataError::DataError;
};

class NoConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Square matrix of pairwise judgments: entry (i, j) says how much more
/// important criterion i is than criterion j.
class PairwiseMatrix {
 public:
  /// Throws NonPositiveEntry / NotReciprocal (relative tolerance 1e-9) and
  /// DataError if the rows are not square.
  explicit PairwiseMatrix(std::vector<std::vector<double>> entries);

  /// a_ij = v_i / v_j, which is perfectly consistent.
  static PairwiseMatrix from_ratios(const std::vector<double>& v);

  /// n lines of n numbers separated by whitespace or commas. Entries may be
  /// written as fractions ("1/3"). Blank lines and '#' comments are ignored.
  static PairwiseMatrix parse(std::istream& in);

  std::size_t size() const { return entries_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  const std::vector<std::vector<double>>& entries() const { return entries_; }

 private:
  std::vector<std::vector<double>> entries_;
};

struct PriorityVector {
  std::vector<double> weights;  // sums to 1
  double lambda_max = 0.0;
  double consistency_index = 0.0;
  double consistency_ratio = 0.0;
  int iterations = 0;
};

/// Saaty's random index for n = 1..10.
double random_index(std::size_t n);

struct Eigenpair {
  std::vector<double> vector;  // normalized to sum 1
  double value = 0.0;
  int iterations = 0;
};

/// Principal eigenpair of a positive square matrix by power iteration,
/// stopping when the largest relative change falls below `tolerance` or
/// after `max_iterations` steps (NoConvergence). No reciprocity check.
Eigenpair principal_eigenpair(const std::vector<std::vector<double>>& a,
                              double tolerance = 1e-10, int max_iterations = 10000);

PriorityVector weights_from_matrix(const PairwiseMatrix& m);

struct VectorAudit {
  features::Facet facet;
  features::DerivedKind kind;
  double abs_sum = 0.0;
  double deviation = 0.0;  // abs_sum - 1
  bool flagged = false;    // |deviation| > tolerance
};

/// Sum of absolute weights of each of the eight vectors and whether it
/// strays from 1 by more than `tolerance`.
std::vector<VectorAudit> validate_weight_vectors(const features::WeightVectors& w,
                                                 double tolerance = 0.01);

std::string format_audit(const std::vector<VectorAudit>& audit);
std::string format_priorities(const PriorityVector& p);

}  // namespace crickpred::ahp
