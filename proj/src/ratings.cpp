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

#include "crickpred/ratings.hpp"

#include <array>

#include <fmt/format.h>

namespace crickpred::features {

std::string_view to_string(DerivedKind k) {
  switch (k) {
    case DerivedKind::Consistency: return "consistency";
    case DerivedKind::Form: return "form";
    case DerivedKind::Opposition: return "opposition";
    case DerivedKind::Venue: return "venue";
  }
  return "?";
}

std::string_view to_string(Attribute a) {
  switch (a) {
    case Attribute::Innings: return "innings";
    case Attribute::BattingAverage: return "batting_average";
    case Attribute::BattingStrikeRate: return "batting_strike_rate";
    case Attribute::Centuries: return "centuries";
    case Attribute::Fifties: return "fifties";
    case Attribute::Zeros: return "zeros";
    case Attribute::HighestScore: return "highest_score";
    case Attribute::Overs: return "overs";
    case Attribute::BowlingAverage: return "bowling_average";
    case Attribute::BowlingStrikeRate: return "bowling_strike_rate";
    case Attribute::FourFiveHaul: return "ff";
  }
  return "?";
}

namespace {

// Rating tables. Where a printed range and the next band share an edge
// (strike rate 100, highest score 150, overs 100 and 1000) the edge value
// belongs to the higher band; gaps such as 9.99 -> 10.00 are closed by
// treating every band as [lower, next lower).
constexpr std::array<Band, 5> kInningsConsistency{{{1, 1}, {50, 2}, {100, 3}, {125, 4}, {150, 5}}};
constexpr std::array<Band, 5> kInningsForm{{{1, 1}, {5, 2}, {10, 3}, {12, 4}, {15, 5}}};
constexpr std::array<Band, 5> kInningsOpposition{{{1, 1}, {3, 2}, {5, 3}, {7, 4}, {10, 5}}};
constexpr std::array<Band, 5> kInningsVenue{{{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}}};

constexpr std::array<Band, 5> kBattingAverage{{{0, 1}, {10, 2}, {20, 3}, {30, 4}, {40, 5}}};
constexpr std::array<Band, 5> kBattingStrikeRate{{{0, 1}, {50, 2}, {60, 3}, {80, 4}, {100, 5}}};

constexpr std::array<Band, 5> kCenturiesConsistency{{{1, 1}, {5, 2}, {10, 3}, {15, 4}, {20, 5}}};
constexpr std::array<Band, 5> kCenturiesForm{{{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}}};
constexpr std::array<Band, 3> kCenturiesOpposition{{{1, 3}, {2, 4}, {3, 5}}};
constexpr std::array<Band, 2> kCenturiesVenue{{{1, 4}, {2, 5}}};

constexpr std::array<Band, 5> kFiftiesConsistency{{{1, 1}, {10, 2}, {20, 3}, {30, 4}, {40, 5}}};
constexpr std::array<Band, 5> kFiftiesFormOpposition{{{1, 1}, {3, 2}, {5, 3}, {7, 4}, {10, 5}}};
constexpr std::array<Band, 2> kFiftiesVenue{{{1, 4}, {2, 5}}};

constexpr std::array<Band, 5> kZerosConsistency{{{1, 1}, {5, 2}, {10, 3}, {15, 4}, {20, 5}}};
constexpr std::array<Band, 5> kZerosFormOpposition{{{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}}};

constexpr std::array<Band, 5> kHighestScoreVenue{{{1, 1}, {25, 2}, {50, 3}, {100, 4}, {150, 5}}};

constexpr std::array<Band, 5> kOversConsistency{{{1, 1}, {100, 2}, {250, 3}, {500, 4}, {1000, 5}}};
constexpr std::array<Band, 5> kOversFormOpposition{{{1, 1}, {10, 2}, {25, 3}, {50, 4}, {100, 5}}};
constexpr std::array<Band, 5> kOversVenue{{{1, 1}, {10, 2}, {20, 3}, {30, 4}, {40, 5}}};

constexpr std::array<Band, 5> kBowlingAverage{{{0, 5}, {25, 4}, {30, 3}, {35, 2}, {50, 1}}};
constexpr std::array<Band, 5> kBowlingStrikeRate{{{0, 5}, {30, 4}, {40, 3}, {50, 2}, {60, 1}}};

constexpr std::array<Band, 3> kFfConsistency{{{1, 3}, {3, 4}, {5, 5}}};
constexpr std::array<Band, 2> kFfOther{{{1, 4}, {3, 5}}};

[[noreturn]] void unknown(Attribute a, DerivedKind k) {
  throw UnknownAttribute(
      fmt::format("no rating table for {} in {}", to_string(a), to_string(k)));
}

}  // namespace

std::span<const Band> rating_bands(Attribute a, DerivedKind kind) {
  using K = DerivedKind;
  switch (a) {
    case Attribute::Innings:
      switch (kind) {
        case K::Consistency: return kInningsConsistency;
        case K::Form: return kInningsForm;
        case K::Opposition: return kInningsOpposition;
        case K::Venue: return kInningsVenue;
      }
      break;
    case Attribute::BattingAverage: return kBattingAverage;
    case Attribute::BattingStrikeRate: return kBattingStrikeRate;
    case Attribute::Centuries:
      switch (kind) {
        case K::Consistency: return kCenturiesConsistency;
        case K::Form: return kCenturiesForm;
        case K::Opposition: return kCenturiesOpposition;
        case K::Venue: return kCenturiesVenue;
      }
      break;
    case Attribute::Fifties:
      switch (kind) {
        case K::Consistency: return kFiftiesConsistency;
        case K::Form:
        case K::Opposition: return kFiftiesFormOpposition;
        case K::Venue: return kFiftiesVenue;
      }
      break;
    case Attribute::Zeros:
      switch (kind) {
        case K::Consistency: return kZerosConsistency;
        case K::Form:
        case K::Opposition: return kZerosFormOpposition;
        case K::Venue: unknown(a, kind);
      }
      break;
    case Attribute::HighestScore:
      if (kind == K::Venue) return kHighestScoreVenue;
      unknown(a, kind);
    case Attribute::Overs:
      switch (kind) {
        case K::Consistency: return kOversConsistency;
        case K::Form:
        case K::Opposition: return kOversFormOpposition;
        case K::Venue: return kOversVenue;
      }
      break;
    case Attribute::BowlingAverage: return kBowlingAverage;
    case Attribute::BowlingStrikeRate: return kBowlingStrikeRate;
    case Attribute::FourFiveHaul:
      if (kind == K::Consistency) return kFfConsistency;
      return kFfOther;
  }
  unknown(a, kind);
}

Rating rate(Attribute a, std::optional<double> value, DerivedKind kind) {
  const auto bands = rating_bands(a, kind);
  if (!value) return Rating{1, true};
  int rating = 1;
  for (const Band& b : bands) {
    if (*value >= b.lower) rating = b.rating;
  }
  return Rating{rating, false};
}

namespace {

std::optional<double> count(int n) { return static_cast<double>(n); }

Rating missing() { return Rating{1, true}; }

}  // namespace

RatedBatting rate_batting(const TraditionalBattingStats& s, DerivedKind kind) {
  RatedBatting r;
  if (s.innings == 0) {
    r = RatedBatting{missing(), missing(), missing(), missing(), missing(), missing(), missing()};
    return r;
  }
  r.average = rate(Attribute::BattingAverage, s.average, kind);
  r.innings = rate(Attribute::Innings, count(s.innings), kind);
  r.strike_rate = rate(Attribute::BattingStrikeRate, s.strike_rate, kind);
  r.centuries = rate(Attribute::Centuries, count(s.centuries), kind);
  r.fifties = rate(Attribute::Fifties, count(s.fifties), kind);
  if (kind == DerivedKind::Venue) {
    r.zeros = missing();
    r.highest_score = rate(Attribute::HighestScore, count(s.highest_score), kind);
  } else {
    r.zeros = rate(Attribute::Zeros, count(s.zeros), kind);
    r.highest_score = missing();
  }
  return r;
}

RatedBowling rate_bowling(const TraditionalBowlingStats& s, DerivedKind kind) {
  if (s.innings == 0) return RatedBowling{missing(), missing(), missing(), missing(), missing()};
  RatedBowling r;
  r.overs = rate(Attribute::Overs, s.overs, kind);
  r.innings = rate(Attribute::Innings, count(s.innings), kind);
  r.strike_rate = rate(Attribute::BowlingStrikeRate, s.strike_rate, kind);
  r.average = rate(Attribute::BowlingAverage, s.average, kind);
  r.ff = rate(Attribute::FourFiveHaul, count(s.ff), kind);
  return r;
}

}  // namespace crickpred::features
