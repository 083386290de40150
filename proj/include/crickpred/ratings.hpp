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

#include <optional>
#include <span>
#include <string_view>

#include "crickpred/aggregate.hpp"
#include "crickpred/error.hpp"

namespace crickpred::features {

/// The four derived attributes; also selects which rating table applies.
enum class DerivedKind { Consistency, Form, Opposition, Venue };

inline constexpr DerivedKind kAllDerivedKinds[] = {DerivedKind::Consistency, DerivedKind::Form,
                                                   DerivedKind::Opposition, DerivedKind::Venue};

std::string_view to_string(DerivedKind k);

enum class Attribute {
  Innings,
  BattingAverage,
  BattingStrikeRate,
  Centuries,
  Fifties,
  Zeros,
  HighestScore,
  Overs,
  BowlingAverage,
  BowlingStrikeRate,
  FourFiveHaul,
};

std::string_view to_string(Attribute a);

class UnknownAttribute : public DataError {
 public:
  using DataError::DataError;
};

/// One row of a rating table: values >= lower (and below the next band's
/// lower bound) get `rating`.
struct Band {
  double lower;
  int rating;
};

/// The rating table for (attribute, kind). Throws UnknownAttribute when the
/// pair has no table (e.g. zeros are not rated for Venue).
std::span<const Band> rating_bands(Attribute a, DerivedKind kind);

struct Rating {
  int value = 1;  // 1..5
  bool missing = false;

  bool operator==(const Rating&) const = default;
};

/// Rates a raw value. An absent value (undefined average, empty window)
/// yields a missing-flagged rating. Values below the first band rate 1.
Rating rate(Attribute a, std::optional<double> value, DerivedKind kind);

struct RatedBatting {
  Rating average;
  Rating innings;
  Rating strike_rate;
  Rating centuries;
  Rating fifties;
  Rating zeros;  // not rated for Venue
  Rating highest_score;  // rated for Venue only
};

struct RatedBowling {
  Rating overs;
  Rating innings;
  Rating strike_rate;
  Rating average;
  Rating ff;
};

/// Rates every attribute the `kind` formula uses. An empty window
/// (innings == 0) flags every rating missing.
RatedBatting rate_batting(const TraditionalBattingStats& s, DerivedKind kind);
RatedBowling rate_bowling(const TraditionalBowlingStats& s, DerivedKind kind);

}  // namespace crickpred::features
