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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crickpred/date.hpp"

namespace crickpred {

enum class MatchType { Normal, QuarterFinal, SemiFinal, Final };
enum class MatchTime { Day, DayNight };
enum class Tournament { TT, TFT, FT };
enum class VenueRelation { Home, Away, Neutral };
enum class Hand { Left, Right };
enum class Role {
  OBT,
  TOB,
  MOB,
  Batsman,
  Allrounder,
  BattingAllrounder,
  BowlingAllrounder,
  Bowler
};

// Token tables. The token strings are the file-format spelling.
template <typename E>
struct EnumTokens;

template <>
struct EnumTokens<MatchType> {
  static constexpr std::array<std::pair<MatchType, std::string_view>, 4> values{{
      {MatchType::Normal, "Normal"},
      {MatchType::QuarterFinal, "QuarterFinal"},
      {MatchType::SemiFinal, "SemiFinal"},
      {MatchType::Final, "Final"},
  }};
};
template <>
struct EnumTokens<MatchTime> {
  static constexpr std::array<std::pair<MatchTime, std::string_view>, 2> values{{
      {MatchTime::Day, "Day"},
      {MatchTime::DayNight, "DayNight"},
  }};
};
template <>
struct EnumTokens<Tournament> {
  static constexpr std::array<std::pair<Tournament, std::string_view>, 3> values{{
      {Tournament::TT, "TT"},
      {Tournament::TFT, "TFT"},
      {Tournament::FT, "FT"},
  }};
};
template <>
struct EnumTokens<VenueRelation> {
  static constexpr std::array<std::pair<VenueRelation, std::string_view>, 3> values{{
      {VenueRelation::Home, "Home"},
      {VenueRelation::Away, "Away"},
      {VenueRelation::Neutral, "Neutral"},
  }};
};
template <>
struct EnumTokens<Hand> {
  static constexpr std::array<std::pair<Hand, std::string_view>, 2> values{{
      {Hand::Left, "Left"},
      {Hand::Right, "Right"},
  }};
};
template <>
struct EnumTokens<Role> {
  static constexpr std::array<std::pair<Role, std::string_view>, 8> values{{
      {Role::OBT, "OBT"},
      {Role::TOB, "TOB"},
      {Role::MOB, "MOB"},
      {Role::Batsman, "Batsman"},
      {Role::Allrounder, "Allrounder"},
      {Role::BattingAllrounder, "BattingAllrounder"},
      {Role::BowlingAllrounder, "BowlingAllrounder"},
      {Role::Bowler, "Bowler"},
  }};
};

template <typename E>
constexpr std::string_view to_token(E e) {
  for (const auto& [value, token] : EnumTokens<E>::values) {
    if (value == e) return token;
  }
  return {};
}

template <typename E>
constexpr std::optional<E> parse_token(std::string_view s) {
  for (const auto& [value, token] : EnumTokens<E>::values) {
    if (token == s) return value;
  }
  return std::nullopt;
}

/// True for roles that are expected to bowl.
constexpr bool is_bowling_role(Role r) {
  return r == Role::Bowler || r == Role::Allrounder || r == Role::BowlingAllrounder ||
         r == Role::BattingAllrounder;
}

/// True for roles that count towards a side's batting strength.
constexpr bool is_batting_role(Role r) { return r != Role::Bowler; }

struct BattingInnings {
  std::string player_id;
  std::string player_name;
  Date match_date;
  std::string opposition;
  std::string ground;
  std::string host_country;
  int runs = 0;
  int balls_faced = 0;
  bool dismissed = false;
  int position = 1;
  int innings_no = 1;
  MatchType match_type = MatchType::Normal;
  MatchTime match_time = MatchTime::Day;
  Tournament tournament = Tournament::TT;
  bool toss_won = false;
  VenueRelation venue_relation = VenueRelation::Home;
  bool captain = false;
  bool wicketkeeper = false;
  Hand batting_hand = Hand::Right;
  Role role = Role::Batsman;
  // Position among the player's innings on the same date, in file order.
  int sequence = 0;

  bool operator==(const BattingInnings&) const = default;
};

struct BowlingInnings {
  std::string player_id;
  std::string player_name;
  Date match_date;
  std::string opposition;
  std::string ground;
  std::string host_country;
  int balls_bowled = 0;
  int runs_conceded = 0;
  int wickets = 0;
  int innings_no = 1;
  MatchType match_type = MatchType::Normal;
  MatchTime match_time = MatchTime::Day;
  Tournament tournament = Tournament::TT;
  bool toss_won = false;
  VenueRelation venue_relation = VenueRelation::Home;
  Hand bowling_hand = Hand::Right;
  int sequence = 0;

  bool operator==(const BowlingInnings&) const = default;
};

struct RosterEntry {
  std::string player_id;
  std::string player_name;
  Role role = Role::Batsman;
  Hand batting_hand = Hand::Right;
  Hand bowling_hand = Hand::Right;

  bool operator==(const RosterEntry&) const = default;
};

struct Roster {
  std::string team;
  Date as_of;
  std::vector<RosterEntry> players;

  bool operator==(const Roster&) const = default;
};

/// Cricket notation: 57 balls is "9.3" (nine overs and three balls).
std::string overs_notation(int balls);

/// Inverse of overs_notation; the ball digit must be 0-5.
std::optional<int> parse_overs(std::string_view notation);

}  // namespace crickpred
