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

#include <algorithm>
#include <set>
#include <sstream>

#include "crickpred/context.hpp"
#include "crickpred/features.hpp"
#include "crickpred/fixture.hpp"

using namespace crickpred;
using namespace crickpred::features;

namespace {

BattingInnings bat(const std::string& id, Date d, int runs, bool out = true) {
  BattingInnings b;
  b.player_id = id;
  b.player_name = id;
  b.match_date = d;
  b.opposition = "Pakistan";
  b.ground = "Lahore";
  b.host_country = "Pakistan";
  b.runs = runs;
  b.balls_faced = std::max(1, runs);
  b.dismissed = out;
  return b;
}

BowlingInnings bowl(const std::string& id, Date d, int wickets) {
  BowlingInnings b;
  b.player_id = id;
  b.player_name = id;
  b.match_date = d;
  b.opposition = "India";
  b.ground = "Delhi";
  b.host_country = "India";
  b.balls_bowled = 60;
  b.runs_conceded = 40;
  b.wickets = wickets;
  return b;
}

Roster roster(const std::string& team, std::vector<std::pair<std::string, Role>> players) {
  Roster r;
  r.team = team;
  r.as_of = Date::from_ymd(2000, 1, 1);
  for (auto& [id, role] : players) r.players.push_back({id, id, role, Hand::Right, Hand::Right});
  return r;
}

const Date kDay = Date::from_ymd(2012, 6, 1);

bool same(std::optional<double> a, std::optional<double> b) {
  return a.has_value() == b.has_value() && (!a || *a == *b);
}

void check_same_row(const FeatureRow& a, const FeatureRow& b) {
  CHECK(same(a.derived.consistency, b.derived.consistency));
  CHECK(same(a.derived.form, b.derived.form));
  CHECK(same(a.derived.opposition, b.derived.opposition));
  CHECK(same(a.derived.venue, b.derived.venue));
  CHECK(same(a.context.opposition_strength, b.context.opposition_strength));
  CHECK(a.context.pressure == b.context.pressure);
  CHECK(a.context.opposition == b.context.opposition);
  CHECK(a.label == b.label);
  CHECK(a.provenance == b.provenance);
}

}  // namespace

TEST_CASE("runs labels follow the printed bands") {
  CHECK(encode_runs_label(0) == 1);
  CHECK(encode_runs_label(24) == 1);
  CHECK(encode_runs_label(25) == 2);
  CHECK(encode_runs_label(49) == 2);
  CHECK(encode_runs_label(50) == 3);
  CHECK(encode_runs_label(74) == 3);
  CHECK(encode_runs_label(75) == 4);
  CHECK(encode_runs_label(99) == 4);
  CHECK(encode_runs_label(100) == 5);
  std::set<int> seen;
  int prev = 1;
  for (int r = 0; r <= 200; ++r) {
    const int c = encode_runs_label(r);
    CHECK(c >= prev);
    prev = c;
    seen.insert(c);
  }
  CHECK(seen == std::set<int>{1, 2, 3, 4, 5});
}

TEST_CASE("wickets labels follow the printed bands") {
  CHECK(encode_wickets_label(0) == 1);
  CHECK(encode_wickets_label(1) == 1);
  CHECK(encode_wickets_label(2) == 2);
  CHECK(encode_wickets_label(3) == 2);
  CHECK(encode_wickets_label(4) == 3);
  std::set<int> seen;
  int prev = 1;
  for (int w = 0; w <= 10; ++w) {
    const int c = encode_wickets_label(w);
    CHECK(c >= prev);
    prev = c;
    seen.insert(c);
  }
  CHECK(seen == std::set<int>{1, 2, 3});
  CHECK(class_band(Target::Runs, 5) == "100+");
  CHECK(class_band(Target::Wickets, 2) == "2-3");
}

TEST_CASE("pressure by match type and rivalry") {
  CHECK(pressure(MatchType::Normal, "India", "Sri Lanka") == 1);
  CHECK(pressure(MatchType::QuarterFinal, "India", "Sri Lanka") == 3);
  CHECK(pressure(MatchType::SemiFinal, "India", "Sri Lanka") == 4);
  CHECK(pressure(MatchType::Final, "New Zealand", "South Africa") == 5);
  CHECK(pressure(MatchType::Final, "India", "Pakistan") == 6);
  CHECK(pressure(MatchType::Normal, "Pakistan", "India") == 2);
  CHECK(pressure(MatchType::SemiFinal, "England", "Australia") == 5);
  CHECK(pressure(MatchType::Normal, "England", "Pakistan") == 1);
}

TEST_CASE("opposition strength averages roster consistency") {
  const auto w = WeightVectors::defaults();
  std::vector<BowlingInnings> bowling;
  for (int i = 0; i < 30; ++i) bowling.push_back(bowl("a", kDay - 100 + i, 5));
  for (int i = 0; i < 3; ++i) bowling.push_back(bowl("b", kDay - 100 + i, 0));
  bowling.push_back(bowl("c", kDay + 5, 3));  // after the as-of date
  ingest::History h({}, bowling);
  const double ca = *consistency(h, "a", kDay, Facet::Bowling, w);
  const auto cb = consistency(h, "b", kDay, Facet::Bowling, w);
  CHECK_FALSE(cb);  // no wickets, so averages are undefined
  CHECK_FALSE(consistency(h, "c", kDay, Facet::Bowling, w));

  bowling.push_back(bowl("b", kDay - 50, 2));
  ingest::History h2({}, bowling);
  const double cb2 = *consistency(h2, "b", kDay, Facet::Bowling, w);

  const auto one = roster("India", {{"a", Role::Bowler}});
  CHECK(*opposition_strength(one, h2, kDay, Facet::Bowling, w) == ca);
  const auto two = roster("India", {{"a", Role::Bowler}, {"b", Role::Bowler}});
  CHECK(*opposition_strength(two, h2, kDay, Facet::Bowling, w) == doctest::Approx((ca + cb2) / 2));
  const auto with_new = roster("India", {{"a", Role::Bowler}, {"b", Role::Bowler}, {"c", Role::Bowler}});
  CHECK(*opposition_strength(with_new, h2, kDay, Facet::Bowling, w) == doctest::Approx((ca + cb2) / 2));
  const auto nobody = roster("India", {{"c", Role::Bowler}, {"z", Role::Bowler}});
  CHECK_FALSE(opposition_strength(nobody, h2, kDay, Facet::Bowling, w));
  const auto batsmen_only = roster("India", {{"a", Role::Batsman}});
  CHECK_FALSE(opposition_strength(batsmen_only, h2, kDay, Facet::Bowling, w));
  CHECK_THROWS_AS(opposition_strength(roster("India", {}), h2, kDay, Facet::Bowling, w), EmptyRoster);
}

TEST_CASE("a player's first match has every derived attribute missing") {
  const auto w = WeightVectors::defaults();
  ingest::History h({bat("p", kDay, 30), bat("p", kDay + 10, 60)}, {});
  ingest::RosterBook book({roster("India", {{"p", Role::Batsman}})});
  const auto rows = build_rows(h, book, Target::Runs, w);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].derived.all_missing());
  CHECK(rows[0].label == 2);
  CHECK(rows[1].derived.consistency);
  CHECK(rows[1].label == 3);
}

TEST_CASE("dataset schemas carry 20 runs and 10 wickets features") {
  const auto f = fixture::generate_fixture({.seed = 3, .n_players = 22, .n_matches = 20});
  ingest::History h(f.batting, f.bowling);
  ingest::RosterBook book(f.rosters);
  const auto w = WeightVectors::defaults();
  const auto runs = build_dataset(h, book, Target::Runs, w);
  CHECK(runs.schema.size() == 20);
  CHECK(runs.schema.num_classes == 5);
  CHECK(runs.size() == f.batting.size());
  const auto wk = build_dataset(h, book, Target::Wickets, w);
  CHECK(wk.schema.size() == 10);
  CHECK(wk.schema.num_classes == 3);
  for (const auto& name : {"consistency", "form", "opposition", "venue"}) {
    CHECK(runs.schema.index_of(name));
    CHECK(wk.schema.index_of(name));
  }
  for (const auto& name : {"role", "captain", "pressure", "host_country", "ground", "batting_position"}) {
    CHECK(runs.schema.index_of(name));
    CHECK_FALSE(wk.schema.index_of(name));
  }
  for (const auto& row : wk.rows) {
    CHECK(row.label >= 1);
    CHECK(row.label <= 3);
  }
}

TEST_CASE("dataset rows are ordered and independent of the job count") {
  const auto f = fixture::generate_fixture({.seed = 5, .n_players = 22, .n_matches = 25});
  ingest::History h(f.batting, f.bowling);
  ingest::RosterBook book(f.rosters);
  const auto w = WeightVectors::defaults();
  const auto a = build_dataset(h, book, Target::Runs, w, 1);
  const auto b = build_dataset(h, book, Target::Runs, w, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.rows[i] == b.rows[i]);
  for (std::size_t i = 1; i < a.size(); ++i) {
    const auto& p = a.rows[i - 1].provenance;
    const auto& q = a.rows[i].provenance;
    CHECK(std::tie(p.match_date, p.player_id, p.sequence) < std::tie(q.match_date, q.player_id, q.sequence));
  }
}

TEST_CASE("features never depend on innings dated on or after the match") {
  const auto f = fixture::generate_fixture({.seed = 6, .n_players = 22, .n_matches = 40});
  const auto w = WeightVectors::defaults();
  ingest::RosterBook book(f.rosters);
  ingest::History full(f.batting, f.bowling);
  for (const auto target : {Target::Runs, Target::Wickets}) {
    const auto rows = build_rows(full, book, target, w);
    for (const int probe : {5, 17, 33}) {
      const Date cut = rows[rows.size() * static_cast<std::size_t>(probe) / 40].provenance.match_date;
      std::vector<BattingInnings> bat;
      std::vector<BowlingInnings> bowl;
      for (const auto& b : f.batting)
        if (b.match_date <= cut) bat.push_back(b);
      for (const auto& b : f.bowling)
        if (b.match_date <= cut) bowl.push_back(b);
      ingest::History truncated(bat, bowl);
      const auto trows = build_rows(truncated, book, target, w);
      std::size_t compared = 0;
      for (const auto& r : rows) {
        if (r.provenance.match_date != cut) continue;
        const auto it = std::find_if(trows.begin(), trows.end(),
                                     [&](const FeatureRow& t) { return t.provenance == r.provenance; });
        REQUIRE(it != trows.end());
        check_same_row(r, *it);
        ++compared;
      }
      CHECK(compared > 0);
    }
  }
}

TEST_CASE("encoding maps tokens and missing values") {
  FeatureRow row;
  row.context.batting_hand = Hand::Left;
  row.context.batting_position = 4;
  row.context.opposition = "Atlantis";
  row.context.role = Role::MOB;
  row.context.captain = true;
  row.context.wicketkeeper = false;
  row.context.innings_no = 2;
  row.context.tournament = Tournament::FT;
  row.context.toss_won = true;
  row.context.pressure = 3;
  row.context.host = "India";
  row.context.ground = "Delhi";
  row.derived.form = 2.5;
  const auto schema = make_schema(Target::Runs, {"India", "Pakistan"}, {"India"}, {"Delhi"});
  const auto v = encode(row, schema, Target::Runs);
  REQUIRE(v.size() == 20);
  CHECK(is_missing(v[*schema.index_of("consistency")]));
  CHECK(v[*schema.index_of("form")] == 2.5);
  CHECK(v[*schema.index_of("opposition_team")] == kUnknownToken);
  CHECK(v[*schema.index_of("batting_hand")] == 0.0);
  CHECK(v[*schema.index_of("ground")] == 0.0);
  CHECK(v[*schema.index_of("pressure")] == 3.0);
  CHECK(is_missing(v[*schema.index_of("opposition_strength")]));
}

TEST_CASE("class-average imputation") {
  Dataset d;
  d.schema.features = {{"venue", FeatureKind::Numeric, {}},
                       {"form", FeatureKind::Numeric, {}},
                       {"hand", FeatureKind::Categorical, {"Left", "Right"}}};
  d.schema.num_classes = 3;
  auto add = [&](double venue, double form, double hand, int label) {
    d.rows.push_back({{venue, form, hand}, label, {}, false});
  };
  add(2.0, 1.0, 0, 3);
  add(3.0, 2.0, 0, 3);
  add(kMissing, 3.0, 1, 3);
  add(kMissing, kMissing, kMissing, 2);
  add(kMissing, 5.0, 1, 2);
  add(4.0, 6.0, 1, 1);

  SUBCASE("training fold uses the class mean and falls back to the global one") {
    const auto out = impute(d, ImputeSource::TrainingFold);
    CHECK(out.rows[2].values[0] == 2.5);
    CHECK(out.rows[3].values[0] == 3.0);  // no class-2 venue; global mean of 2, 3, 4
    CHECK(out.rows[4].values[0] == 3.0);
    CHECK(out.rows[3].values[1] == doctest::Approx(17.0 / 5));  // form: global mean only
    CHECK(out.rows[3].values[2] == 1.0);  // mode
    CHECK(out.missing_count() == 0);
  }
  SUBCASE("global source ignores labels") {
    const auto out = impute(d, ImputeSource::Global);
    CHECK(out.rows[2].values[0] == 3.0);
    CHECK(out.missing_count() == 0);
  }
  SUBCASE("a complete dataset is unchanged") {
    Dataset full = d;
    full.rows = {d.rows[0], d.rows[1], d.rows[5]};
    const auto out = impute(full, ImputeSource::TrainingFold);
    for (std::size_t i = 0; i < full.size(); ++i) CHECK(out.rows[i] == full.rows[i]);
  }
  SUBCASE("statistics ignore synthetic rows") {
    Dataset s = d;
    s.rows.push_back({{100.0, 100.0, 0}, 3, {}, true});
    const auto stats = fit_imputation(s);
    CHECK(stats.global[0] == 3.0);
    CHECK(stats.per_class[2][0] == 2.5);
  }
}

TEST_CASE("dataset CSV round-trips including missing and unknown values") {
  const auto f = fixture::generate_fixture({.seed = 8, .n_players = 22, .n_matches = 12});
  ingest::History h(f.batting, f.bowling);
  ingest::RosterBook book(f.rosters);
  auto d = build_dataset(h, book, Target::Runs, WeightVectors::defaults());
  d.rows.front().values[*d.schema.index_of("ground")] = kUnknownToken;
  REQUIRE(d.missing_count() > 0);
  std::stringstream ss;
  write_dataset_csv(ss, d);
  const auto back = read_dataset_csv(ss);
  CHECK(back.schema == d.schema);
  REQUIRE(back.size() == d.size());
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(back.rows[i] == d.rows[i]);

  std::istringstream bad("consistency:numeric,label:classes=5\n1.0\n");
  CHECK_THROWS_AS(read_dataset_csv(bad), DatasetFormatError);
}
