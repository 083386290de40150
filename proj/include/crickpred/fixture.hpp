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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "crickpred/records.hpp"

namespace crickpred::fixture {

/// Separable: each player is permanently in a strong or a weak tier, so the
///   career-consistency attribute alone decides the label once a player has
///   one innings behind them.
/// Nonlinear: the label is an exclusive-or of the player's hand (batting hand
///   for runs, bowling hand for wickets) and day/night. Hands alternate along
///   each squad so both sides field an even split, and exactly 60% of matches
///   (rounded) are day/night, so the hand carries a little marginal
///   signal (enough for a greedy tree to find the root split) while day/night
///   alone carries none.
/// Realistic: skewed run and wicket distributions in which class 1 dominates.
enum class Profile { Separable, Nonlinear, Realistic };

std::string_view to_string(Profile p);
std::optional<Profile> parse_profile(std::string_view s);

struct FixtureConfig {
  std::uint64_t seed = 1;
  int n_players = 110;
  int n_matches = 230;
  Profile profile = Profile::Realistic;
};

struct Fixture {
  std::vector<BattingInnings> batting;
  std::vector<BowlingInnings> bowling;
  std::vector<Roster> rosters;
};

/// Deterministic for a fixed config. Requires n_players >= 22 and
/// n_matches >= 10 (PreconditionError otherwise). Every player in a match's
/// playing XI bats; five of them bowl.
Fixture generate_fixture(const FixtureConfig& config);

/// Writes batting.csv, bowling.csv and rosters.csv into `dir` (created if
/// needed).
void write_fixture(const Fixture& f, const std::filesystem::path& dir);

/// Share of Nonlinear fixture matches played under lights.
inline constexpr double kNonlinearDayNightShare = 0.6;

}  // namespace crickpred::fixture
