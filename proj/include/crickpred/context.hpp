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
#include <string_view>

#include "crickpred/ingest.hpp"
#include "crickpred/weights.hpp"

namespace crickpred::features {

/// Match pressure: Normal 1, QuarterFinal 3, SemiFinal 4, Final 5, plus one
/// for India v Pakistan and Australia v England. Range is 1..6.
int pressure(MatchType type, std::string_view team_a, std::string_view team_b);

class EmptyRoster : public DataError {
 public:
  using DataError::DataError;
};

/// Derived value of one kind for a player as of a date (strictly earlier
/// innings only). nullopt when any rating it needs is missing.
std::optional<double> batting_derived(const ingest::History& history, const std::string& player,
                                      Date as_of, DerivedKind kind, const Window& window,
                                      const WeightVectors& weights);
std::optional<double> bowling_derived(const ingest::History& history, const std::string& player,
                                      Date as_of, DerivedKind kind, const Window& window,
                                      const WeightVectors& weights);

std::optional<double> consistency(const ingest::History& history, const std::string& player,
                                  Date as_of, Facet facet, const WeightVectors& weights);

/// Mean Consistency of the roster players that count for `facet` (bowlers for
/// Bowling, everyone but specialist bowlers for Batting). Players without a
/// defined value take the mean of those with one, which leaves the mean
/// unchanged. nullopt when nobody has a defined value. Throws EmptyRoster.
std::optional<double> opposition_strength(const Roster& roster, const ingest::History& history,
                                          Date as_of, Facet facet, const WeightVectors& weights);

}  // namespace crickpred::features
