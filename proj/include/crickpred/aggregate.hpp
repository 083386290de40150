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
#include <string>

#include "crickpred/records.hpp"

namespace crickpred::features {

/// Which slice of a player's history feeds an aggregate. Every window only
/// sees innings dated strictly before the as-of date.
struct Window {
  enum class Kind { Career, Form12m, VsOpposition, AtVenue };
  Kind kind = Kind::Career;
  std::string key;  // team for VsOpposition, ground for AtVenue

  static Window career() { return {Kind::Career, {}}; }
  static Window form() { return {Kind::Form12m, {}}; }
  static Window vs_opposition(std::string team) { return {Kind::VsOpposition, std::move(team)}; }
  static Window at_venue(std::string ground) { return {Kind::AtVenue, std::move(ground)}; }
};

inline constexpr int kFormWindowDays = 365;

struct TraditionalBattingStats {
  int innings = 0;
  int runs = 0;
  int balls = 0;
  int dismissals = 0;
  std::optional<double> average;      // nullopt when dismissals == 0
  std::optional<double> strike_rate;  // nullopt when balls == 0
  int centuries = 0;
  int fifties = 0;
  int zeros = 0;
  int highest_score = 0;
};

struct TraditionalBowlingStats {
  int innings = 0;  // innings with at least one ball bowled
  int balls = 0;
  double overs = 0.0;  // balls / 6
  int runs_conceded = 0;
  int wickets = 0;
  std::optional<double> average;      // nullopt when wickets == 0
  std::optional<double> strike_rate;  // nullopt when wickets == 0
  int ff = 0;  // innings with more than four wickets
};

/// `history` must be one player's innings sorted by date.
TraditionalBattingStats aggregate_batting(std::span<const BattingInnings> history, Date as_of,
                                          const Window& window);
TraditionalBowlingStats aggregate_bowling(std::span<const BowlingInnings> history, Date as_of,
                                          const Window& window);

}  // namespace crickpred::features
