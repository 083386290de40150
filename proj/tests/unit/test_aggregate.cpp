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

#include <vector>

#include "crickpred/aggregate.hpp"

using namespace crickpred;
using namespace crickpred::features;

namespace {

BattingInnings bat(Date d, int runs, int balls, bool out, std::string opp = "Pakistan",
                   std::string ground = "Lahore") {
  BattingInnings b;
  b.player_id = "p";
  b.match_date = d;
  b.runs = runs;
  b.balls_faced = balls;
  b.dismissed = out;
  b.opposition = std::move(opp);
  b.ground = std::move(ground);
  return b;
}

BowlingInnings bowl(Date d, int balls, int runs, int wickets, std::string opp = "Pakistan") {
  BowlingInnings b;
  b.player_id = "p";
  b.match_date = d;
  b.balls_bowled = balls;
  b.runs_conceded = runs;
  b.wickets = wickets;
  b.opposition = std::move(opp);
  b.ground = "Lahore";
  return b;
}

const Date kDay = Date::from_ymd(2012, 6, 1);

}  // namespace

TEST_CASE("career batting average divides runs by dismissals") {
  const std::vector<BattingInnings> h{bat(kDay - 20, 50, 60, true), bat(kDay - 10, 30, 20, false)};
  const auto s = aggregate_batting(h, kDay, Window::career());
  CHECK(s.innings == 2);
  REQUIRE(s.average);
  CHECK(*s.average == 80.0);
  CHECK(s.fifties == 1);
  CHECK(s.centuries == 0);
  CHECK(s.highest_score == 50);
  REQUIRE(s.strike_rate);
  CHECK(*s.strike_rate == 100.0);
}

TEST_CASE("an empty window has no innings and no average") {
  const auto s = aggregate_batting({}, kDay, Window::career());
  CHECK(s.innings == 0);
  CHECK_FALSE(s.average);
  CHECK_FALSE(s.strike_rate);
  const auto b = aggregate_bowling({}, kDay, Window::career());
  CHECK(b.innings == 0);
  CHECK_FALSE(b.average);
}

TEST_CASE("a hundred off a hundred balls is a strike rate of 100") {
  const std::vector<BattingInnings> h{bat(kDay - 1, 100, 100, true)};
  const auto s = aggregate_batting(h, kDay, Window::career());
  CHECK(*s.strike_rate == 100.0);
  CHECK(s.centuries == 1);
  CHECK(s.fifties == 0);
}

TEST_CASE("fifties count [50,100) and zeros count dismissed ducks") {
  const std::vector<BattingInnings> h{bat(kDay - 6, 49, 1, true), bat(kDay - 5, 50, 1, true),
                                      bat(kDay - 4, 99, 1, true), bat(kDay - 3, 100, 1, true),
                                      bat(kDay - 2, 0, 3, true),  bat(kDay - 1, 0, 0, false)};
  const auto s = aggregate_batting(h, kDay, Window::career());
  CHECK(s.fifties == 2);
  CHECK(s.centuries == 1);
  CHECK(s.zeros == 1);
  CHECK(s.highest_score == 100);
}

TEST_CASE("no dismissals leaves the average undefined") {
  const std::vector<BattingInnings> h{bat(kDay - 1, 40, 30, false)};
  CHECK_FALSE(aggregate_batting(h, kDay, Window::career()).average);
}

TEST_CASE("windows see only innings strictly before the as-of date") {
  const std::vector<BattingInnings> h{bat(kDay - 366, 10, 10, true), bat(kDay - 365, 20, 10, true),
                                      bat(kDay - 1, 30, 10, true, "India", "Delhi"),
                                      bat(kDay, 40, 10, true), bat(kDay + 1, 50, 10, true)};
  CHECK(aggregate_batting(h, kDay, Window::career()).innings == 3);
  const auto form = aggregate_batting(h, kDay, Window::form());
  CHECK(form.innings == 2);
  CHECK(*form.average == 25.0);
  CHECK(aggregate_batting(h, kDay, Window::vs_opposition("India")).innings == 1);
  CHECK(aggregate_batting(h, kDay, Window::vs_opposition("Pakistan")).innings == 2);
  CHECK(aggregate_batting(h, kDay, Window::at_venue("Delhi")).innings == 1);
  CHECK(aggregate_batting(h, kDay, Window::at_venue("Nowhere")).innings == 0);
}

TEST_CASE("bowling average and strike rate") {
  const std::vector<BowlingInnings> h{bowl(kDay - 1, 60, 50, 2)};
  const auto s = aggregate_bowling(h, kDay, Window::career());
  CHECK(*s.average == 25.0);
  CHECK(*s.strike_rate == 30.0);
  CHECK(s.overs == 10.0);
  CHECK(s.ff == 0);
}

TEST_CASE("five-wicket innings count as hauls and zero wickets leave averages undefined") {
  const std::vector<BowlingInnings> h{bowl(kDay - 3, 60, 30, 5), bowl(kDay - 2, 60, 30, 4)};
  CHECK(aggregate_bowling(h, kDay, Window::career()).ff == 1);
  const std::vector<BowlingInnings> none{bowl(kDay - 3, 60, 30, 0)};
  const auto s = aggregate_bowling(none, kDay, Window::career());
  CHECK_FALSE(s.average);
  CHECK_FALSE(s.strike_rate);
  CHECK(s.innings == 1);
}

TEST_CASE("bowling innings without a ball bowled do not count") {
  const std::vector<BowlingInnings> h{bowl(kDay - 3, 0, 0, 0), bowl(kDay - 2, 6, 4, 1)};
  const auto s = aggregate_bowling(h, kDay, Window::career());
  CHECK(s.innings == 1);
  CHECK(s.balls == 6);
}
