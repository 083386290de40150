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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "crickpred/date.hpp"
#include "crickpred/error.hpp"

namespace crickpred {

/// Missing values are stored as quiet NaN.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool is_missing(double v) { return std::isnan(v); }

/// Categorical values are stored as the token's index; a token the schema
/// does not know is stored as kUnknownToken.
inline constexpr double kUnknownToken = -1.0;

enum class FeatureKind { Numeric, Categorical };

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::Numeric;
  std::vector<std::string> tokens;  // categorical only

  bool operator==(const FeatureSpec&) const = default;
};

struct Schema {
  std::vector<FeatureSpec> features;
  int num_classes = 2;  // labels are 1..num_classes

  std::size_t size() const { return features.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Token index, or kUnknownToken.
  double encode_token(std::size_t feature, std::string_view token) const;
  /// FNV-1a over a canonical rendering of names, kinds, tokens and arity.
  std::uint64_t fingerprint() const;
  /// Throws PreconditionError if names repeat or num_classes < 2.
  void validate() const;

  bool operator==(const Schema&) const = default;
};

struct Provenance {
  std::string player_id;
  Date match_date;
  int sequence = 0;

  bool operator==(const Provenance&) const = default;
};

struct Example {
  std::vector<double> values;
  int label = 1;
  Provenance provenance;
  bool synthetic = false;

  bool operator==(const Example& o) const;
};

struct Dataset {
  Schema schema;
  std::vector<Example> rows;

  std::size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
  /// counts[c - 1] is the number of rows labelled c.
  std::vector<std::size_t> class_counts() const;
  std::size_t missing_count() const;
  Dataset subset(const std::vector<std::size_t>& indices) const;
};

class DatasetFormatError : public DataError {
 public:
  using DataError::DataError;
};

/// CSV export. The first line names each feature with its kind
/// (`name:numeric` or `name:categorical{tok|tok|...}`) followed by
/// `label:classes=<m>` and the provenance columns. Missing values are empty
/// cells; numbers use the shortest round-trip form.
void write_dataset_csv(std::ostream& out, const Dataset& d);
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::filesystem::path& path);

enum class ImputeSource { TrainingFold, Global };

/// Means (numeric) and modes (categorical) per feature, overall and per class,
/// computed from defined, non-synthetic values. Per-class statistics are kept
/// only for the class-averaged features; the rest fall back to the global
/// value.
struct ImputationStats {
  std::vector<double> global;
  std::vector<std::vector<double>> per_class;  // [class - 1][feature]; NaN if none
};

/// Features whose missing values take the average of rows with the same class
/// when imputing a labelled training fold.
inline const std::vector<std::string> kClassAveragedFeatures{"opposition", "venue"};

ImputationStats fit_imputation(const Dataset& d,
                               const std::vector<std::string>& class_averaged = kClassAveragedFeatures);

/// Fills missing values. TrainingFold uses the row's class statistic where one
/// is kept, falling back to the global one; Global ignores labels. Features with no defined
/// value anywhere become 0.
Dataset apply_imputation(const Dataset& d, const ImputationStats& stats, ImputeSource source);

inline Dataset impute(const Dataset& d, ImputeSource source) {
  return apply_imputation(d, fit_imputation(d), source);
}

}  // namespace crickpred
