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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "crickpred/ratings.hpp"
#include "rating_tables.hpp"

using namespace crickpred;
using namespace crickpred::features;

TEST_CASE("rating examples") {
  CHECK(rate(Attribute::BattingAverage, 35.5, DerivedKind::Form).value == 4);
  CHECK(rate(Attribute::Innings, 100, DerivedKind::Consistency).value == 3);
  CHECK(rate(Attribute::BowlingStrikeRate, 29.99, DerivedKind::Venue).value == 5);
  CHECK(rate(Attribute::Centuries, 2, DerivedKind::Opposition).value == 4);
}

TEST_CASE("every printed band edge rates as printed") {
  int checked = 0;
  for (const auto& table : testing::printed_rating_tables()) {
    for (const auto& c : testing::boundary_cases(table)) {
      INFO(to_string(table.attribute), " / ", to_string(table.kind), " value ", c.value, " (", c.what, ")");
      const auto r = rate(table.attribute, c.value, table.kind);
      CHECK_FALSE(r.missing);
      CHECK(r.value == c.expected);
      ++checked;
    }
  }
  CHECK(checked > 400);
}

TEST_CASE("library tables match the printed lower bounds") {
  for (const auto& table : testing::printed_rating_tables()) {
    const auto bands = rating_bands(table.attribute, table.kind);
    REQUIRE(bands.size() == table.bands.size());
    for (std::size_t i = 0; i < bands.size(); ++i) {
      CHECK(bands[i].lower == table.bands[i].lo);
      CHECK(bands[i].rating == table.bands[i].rating);
    }
  }
}

TEST_CASE("unrated attribute and kind pairs throw") {
  for (const auto& [a, k] : testing::unrated_pairs()) {
    CHECK_THROWS_AS(rating_bands(a, k), UnknownAttribute);
    CHECK_THROWS_AS(rate(a, 1.0, k), UnknownAttribute);
  }
}

TEST_CASE("ratings are monotone in the value") {
  for (const auto& table : testing::printed_rating_tables()) {
    const bool increasing = table.bands.front().rating <= table.bands.back().rating;
    int prev = rate(table.attribute, 0.0, table.kind).value;
    for (double v = 0.0; v <= 1200.0; v += 0.25) {
      const int r = rate(table.attribute, v, table.kind).value;
      if (increasing) CHECK(r >= prev);
      else CHECK(r <= prev);
      prev = r;
    }
  }
}

TEST_CASE("absent values are missing") {
  const auto r = rate(Attribute::BattingAverage, std::nullopt, DerivedKind::Consistency);
  CHECK(r.missing);
}

TEST_CASE("rating a whole window") {
  TraditionalBattingStats s;
  s.innings = 120;
  s.average = 41.0;
  s.strike_rate = 80.0;
  s.centuries = 3;
  s.fifties = 12;
  s.zeros = 6;
  s.highest_score = 150;
  const auto c = rate_batting(s, DerivedKind::Consistency);
  CHECK(c.innings.value == 3);
  CHECK(c.average.value == 5);
  CHECK(c.strike_rate.value == 4);
  CHECK(c.centuries.value == 1);
  CHECK(c.fifties.value == 2);
  CHECK(c.zeros.value == 2);
  const auto v = rate_batting(s, DerivedKind::Venue);
  CHECK(v.highest_score.value == 5);
  CHECK(v.centuries.value == 5);

  TraditionalBattingStats empty;
  const auto e = rate_batting(empty, DerivedKind::Form);
  CHECK(e.average.missing);
  CHECK(e.innings.missing);

  TraditionalBowlingStats b;
  b.innings = 3;
  b.overs = 25.5;
  b.average = 24.0;
  b.strike_rate = 30.0;
  b.ff = 1;
  const auto bo = rate_bowling(b, DerivedKind::Opposition);
  CHECK(bo.overs.value == 3);
  CHECK(bo.innings.value == 2);
  CHECK(bo.average.value == 5);
  CHECK(bo.strike_rate.value == 4);
  CHECK(bo.ff.value == 4);
}
