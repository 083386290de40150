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

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crickpred/error.hpp"
#include "crickpred/ratings.hpp"

namespace crickpred::features {

enum class Facet { Batting, Bowling };

std::string_view to_string(Facet f);

struct WeightTerm {
  std::string attribute;  // formula-local name, e.g. "strike_rate"
  double weight = 0.0;    // magnitude as printed
  int sign = 1;           // +1 or -1

  bool operator==(const WeightTerm&) const = default;
};

class WeightConfigError : public DataError {
 public:
  using DataError::DataError;
};

/// The eight signed weight vectors (batting/bowling x four derived kinds).
class WeightVectors {
 public:
  /// The published AHP weights, including the bowling-opposition vector whose
  /// magnitudes sum to 1.0695.
  static WeightVectors defaults();

  /// Key-value format, one vector per line:
  ///   batting.consistency = average:+0.4262, innings:+0.2566, ...
  /// '#' starts a comment. All eight vectors are required and each must name
  /// exactly the attributes its formula uses.
  static WeightVectors parse(std::istream& in);
  static WeightVectors load(const std::filesystem::path& path);

  std::string serialize() const;

  const std::vector<WeightTerm>& terms(Facet f, DerivedKind k) const;
  std::vector<WeightTerm>& terms(Facet f, DerivedKind k);

  bool operator==(const WeightVectors&) const = default;

 private:
  std::array<std::vector<WeightTerm>, 8> vectors_;
};

/// The bundled config text (identical to config/weights.conf).
std::string_view default_weights_config();

/// Attribute names each formula must contain.
std::vector<std::string_view> expected_attributes(Facet f, DerivedKind k);

/// Rating used by a batting/bowling formula term, looked up by name.
Rating rating_of(const RatedBatting& r, std::string_view attribute);
Rating rating_of(const RatedBowling& r, std::string_view attribute);

/// Signed weighted sum of ratings; nullopt when any rating is missing.
std::optional<double> derived_batting(const RatedBatting& rated, DerivedKind kind,
                                      const WeightVectors& weights);
std::optional<double> derived_bowling(const RatedBowling& rated, DerivedKind kind,
                                      const WeightVectors& weights);

}  // namespace crickpred::features
