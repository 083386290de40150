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

#include "crickpred/features.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>

#include "crickpred/parallel.hpp"

namespace crickpred::features {

std::string_view to_string(Target t) { return t == Target::Runs ? "runs" : "wickets"; }

std::optional<Target> parse_target(std::string_view s) {
  if (s == "runs") return Target::Runs;
  if (s == "wickets") return Target::Wickets;
  return std::nullopt;
}

int encode_runs_label(int runs) {
  if (runs < 25) return 1;
  if (runs < 50) return 2;
  if (runs < 75) return 3;
  if (runs < 100) return 4;
  return 5;
}

int encode_wickets_label(int wickets) {
  if (wickets <= 1) return 1;
  if (wickets <= 3) return 2;
  return 3;
}

std::string class_band(Target t, int label) {
  if (t == Target::Runs) {
    static constexpr const char* kBands[] = {"0-24", "25-49", "50-74", "75-99", "100+"};
    return kBands[std::clamp(label, 1, 5) - 1];
  }
  static constexpr const char* kBands[] = {"0-1", "2-3", "4+"};
  return kBands[std::clamp(label, 1, 3) - 1];
}

std::vector<std::string> feature_names(Target t) {
  if (t == Target::Runs) {
    return {"consistency",   "form",        "opposition",   "venue",
            "batting_hand",  "batting_position", "match_type", "match_time",
            "opposition_strength", "venue_relation", "opposition_team", "role",
            "captain",       "wicketkeeper", "innings_no",  "tournament",
            "toss_won",      "pressure",    "host_country", "ground"};
  }
  return {"consistency", "form",       "opposition",          "venue",
          "bowling_hand", "match_type", "match_time", "opposition_strength",
          "venue_relation", "opposition_team"};
}

namespace {

template <typename E>
std::vector<std::string> enum_tokens() {
  std::vector<std::string> out;
  for (const auto& [value, token] : EnumTokens<E>::values) out.emplace_back(token);
  return out;
}

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

FeatureSpec numeric(std::string name) { return {std::move(name), FeatureKind::Numeric, {}}; }
FeatureSpec categorical(std::string name, std::vector<std::string> tokens) {
  return {std::move(name), FeatureKind::Categorical, std::move(tokens)};
}

}  // namespace

Schema make_schema(Target t, std::vector<std::string> teams, std::vector<std::string> hosts,
                   std::vector<std::string> grounds) {
  Schema s;
  s.num_classes = num_classes(t);
  for (auto k : kAllDerivedKinds) s.features.push_back(numeric(std::string(to_string(k))));
  const std::vector<std::string> flags{"0", "1"};
  if (t == Target::Runs) {
    s.features.push_back(categorical("batting_hand", enum_tokens<Hand>()));
    s.features.push_back(numeric("batting_position"));
    s.features.push_back(categorical("match_type", enum_tokens<MatchType>()));
    s.features.push_back(categorical("match_time", enum_tokens<MatchTime>()));
    s.features.push_back(numeric("opposition_strength"));
    s.features.push_back(categorical("venue_relation", enum_tokens<VenueRelation>()));
    s.features.push_back(categorical("opposition_team", sorted_unique(std::move(teams))));
    s.features.push_back(categorical("role", enum_tokens<Role>()));
    s.features.push_back(categorical("captain", flags));
    s.features.push_back(categorical("wicketkeeper", flags));
    s.features.push_back(categorical("innings_no", {"1", "2"}));
    s.features.push_back(categorical("tournament", enum_tokens<Tournament>()));
    s.features.push_back(categorical("toss_won", flags));
    s.features.push_back(numeric("pressure"));
    s.features.push_back(categorical("host_country", sorted_unique(std::move(hosts))));
    s.features.push_back(categorical("ground", sorted_unique(std::move(grounds))));
  } else {
    s.features.push_back(categorical("bowling_hand", enum_tokens<Hand>()));
    s.features.push_back(categorical("match_type", enum_tokens<MatchType>()));
    s.features.push_back(categorical("match_time", enum_tokens<MatchTime>()));
    s.features.push_back(numeric("opposition_strength"));
    s.features.push_back(categorical("venue_relation", enum_tokens<VenueRelation>()));
    s.features.push_back(categorical("opposition_team", sorted_unique(std::move(teams))));
  }
  return s;
}

namespace {

double opt(const std::optional<double>& v) { return v ? *v : kMissing; }

const char* flag(bool b) { return b ? "1" : "0"; }

}  // namespace

std::vector<double> encode(const FeatureRow& row, const Schema& s, Target t) {
  const auto& c = row.context;
  std::vector<double> v;
  v.reserve(s.size());
  v.push_back(opt(row.derived.consistency));
  v.push_back(opt(row.derived.form));
  v.push_back(opt(row.derived.opposition));
  v.push_back(opt(row.derived.venue));
  auto token = [&](std::string_view tok) { v.push_back(s.encode_token(v.size(), tok)); };
  if (t == Target::Runs) {
    token(to_token(c.batting_hand.value_or(Hand::Right)));
    v.push_back(c.batting_position ? static_cast<double>(*c.batting_position) : kMissing);
    token(to_token(c.match_type));
    token(to_token(c.match_time));
    v.push_back(opt(c.opposition_strength));
    token(to_token(c.venue_relation));
    token(c.opposition);
    token(to_token(c.role.value_or(Role::Batsman)));
    token(flag(c.captain.value_or(false)));
    token(flag(c.wicketkeeper.value_or(false)));
    token(c.innings_no.value_or(1) == 2 ? "2" : "1");
    token(to_token(c.tournament.value_or(Tournament::TT)));
    token(flag(c.toss_won.value_or(false)));
    v.push_back(c.pressure ? static_cast<double>(*c.pressure) : kMissing);
    token(c.host.value_or(""));
    token(c.ground.value_or(""));
  } else {
    token(to_token(c.bowling_hand.value_or(Hand::Right)));
    token(to_token(c.match_type));
    token(to_token(c.match_time));
    v.push_back(opt(c.opposition_strength));
    token(to_token(c.venue_relation));
    token(c.opposition);
  }
  return v;
}

DerivedAttributes FeatureBuilder::batting_derived(const std::string& player, Date as_of,
                                                  const std::string& opposition,
                                                  const std::string& ground) const {
  DerivedAttributes d;
  d.consistency = features::batting_derived(history_, player, as_of, DerivedKind::Consistency,
                                            Window::career(), weights_);
  d.form = features::batting_derived(history_, player, as_of, DerivedKind::Form, Window::form(),
                                     weights_);
  d.opposition = features::batting_derived(history_, player, as_of, DerivedKind::Opposition,
                                           Window::vs_opposition(opposition), weights_);
  d.venue = features::batting_derived(history_, player, as_of, DerivedKind::Venue,
                                      Window::at_venue(ground), weights_);
  return d;
}

DerivedAttributes FeatureBuilder::bowling_derived(const std::string& player, Date as_of,
                                                  const std::string& opposition,
                                                  const std::string& ground) const {
  DerivedAttributes d;
  d.consistency = features::bowling_derived(history_, player, as_of, DerivedKind::Consistency,
                                            Window::career(), weights_);
  d.form = features::bowling_derived(history_, player, as_of, DerivedKind::Form, Window::form(),
                                     weights_);
  d.opposition = features::bowling_derived(history_, player, as_of, DerivedKind::Opposition,
                                           Window::vs_opposition(opposition), weights_);
  d.venue = features::bowling_derived(history_, player, as_of, DerivedKind::Venue,
                                      Window::at_venue(ground), weights_);
  return d;
}

std::optional<double> FeatureBuilder::strength(const std::string& team, Date as_of,
                                               Target t) const {
  const Roster* roster = rosters_.find(team, as_of);
  if (!roster || roster->players.empty()) return std::nullopt;
  // A batsman faces the opposing bowlers; a bowler faces the opposing batsmen.
  const Facet facet = t == Target::Runs ? Facet::Bowling : Facet::Batting;
  return opposition_strength(*roster, history_, as_of, facet, weights_);
}

FeatureRow FeatureBuilder::batting_row(const BattingInnings& b) const {
  FeatureRow row;
  row.derived = batting_derived(b.player_id, b.match_date, b.opposition, b.ground);
  auto& c = row.context;
  c.batting_hand = b.batting_hand;
  c.batting_position = b.position;
  c.match_type = b.match_type;
  c.match_time = b.match_time;
  c.opposition_strength = strength(b.opposition, b.match_date, Target::Runs);
  c.venue_relation = b.venue_relation;
  c.opposition = b.opposition;
  c.role = b.role;
  c.captain = b.captain;
  c.wicketkeeper = b.wicketkeeper;
  c.innings_no = b.innings_no;
  c.tournament = b.tournament;
  c.toss_won = b.toss_won;
  c.pressure = pressure(b.match_type, rosters_.team_of(b.player_id, b.match_date), b.opposition);
  c.host = b.host_country;
  c.ground = b.ground;
  row.label = encode_runs_label(b.runs);
  row.provenance = Provenance{b.player_id, b.match_date, b.sequence};
  return row;
}

FeatureRow FeatureBuilder::bowling_row(const BowlingInnings& b) const {
  FeatureRow row;
  row.derived = bowling_derived(b.player_id, b.match_date, b.opposition, b.ground);
  auto& c = row.context;
  c.bowling_hand = b.bowling_hand;
  c.match_type = b.match_type;
  c.match_time = b.match_time;
  c.opposition_strength = strength(b.opposition, b.match_date, Target::Wickets);
  c.venue_relation = b.venue_relation;
  c.opposition = b.opposition;
  row.label = encode_wickets_label(b.wickets);
  row.provenance = Provenance{b.player_id, b.match_date, b.sequence};
  return row;
}

std::vector<FeatureRow> build_rows(const ingest::History& history,
                                   const ingest::RosterBook& rosters, Target t,
                                   const WeightVectors& weights, unsigned jobs) {
  const FeatureBuilder builder(history, rosters, weights);
  // Strength is shared by every player facing the same team on the same day,
  // so compute it once per (team, date).
  std::vector<std::pair<std::string, Date>> keys;
  auto collect = [&](const auto& records) {
    for (const auto& r : records) keys.emplace_back(r.opposition, r.match_date);
  };
  if (t == Target::Runs) {
    collect(history.all_batting());
  } else {
    collect(history.all_bowling());
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<std::optional<double>> strengths(keys.size());
  parallel_for(keys.size(), jobs, [&](std::size_t i) {
    strengths[i] = builder.strength(keys[i].first, keys[i].second, t);
  });
  auto lookup = [&](const std::string& team, Date d) {
    auto it = std::lower_bound(keys.begin(), keys.end(), std::pair{team, d});
    return strengths[static_cast<std::size_t>(it - keys.begin())];
  };

  std::vector<FeatureRow> rows;
  if (t == Target::Runs) {
    const auto& src = history.all_batting();
    rows.resize(src.size());
    parallel_for(src.size(), jobs, [&](std::size_t i) {
      FeatureRow row;
      row.derived = builder.batting_derived(src[i].player_id, src[i].match_date,
                                            src[i].opposition, src[i].ground);
      const auto& b = src[i];
      auto& c = row.context;
      c.batting_hand = b.batting_hand;
      c.batting_position = b.position;
      c.match_type = b.match_type;
      c.match_time = b.match_time;
      c.opposition_strength = lookup(b.opposition, b.match_date);
      c.venue_relation = b.venue_relation;
      c.opposition = b.opposition;
      c.role = b.role;
      c.captain = b.captain;
      c.wicketkeeper = b.wicketkeeper;
      c.innings_no = b.innings_no;
      c.tournament = b.tournament;
      c.toss_won = b.toss_won;
      c.pressure =
          pressure(b.match_type, rosters.team_of(b.player_id, b.match_date), b.opposition);
      c.host = b.host_country;
      c.ground = b.ground;
      row.label = encode_runs_label(b.runs);
      row.provenance = Provenance{b.player_id, b.match_date, b.sequence};
      rows[i] = std::move(row);
    });
  } else {
    std::vector<const BowlingInnings*> src;
    for (const auto& b : history.all_bowling()) {
      if (b.balls_bowled > 0) src.push_back(&b);
    }
    rows.resize(src.size());
    parallel_for(src.size(), jobs, [&](std::size_t i) {
      const auto& b = *src[i];
      FeatureRow row;
      row.derived = builder.bowling_derived(b.player_id, b.match_date, b.opposition, b.ground);
      auto& c = row.context;
      c.bowling_hand = b.bowling_hand;
      c.match_type = b.match_type;
      c.match_time = b.match_time;
      c.opposition_strength = lookup(b.opposition, b.match_date);
      c.venue_relation = b.venue_relation;
      c.opposition = b.opposition;
      row.label = encode_wickets_label(b.wickets);
      row.provenance = Provenance{b.player_id, b.match_date, b.sequence};
      rows[i] = std::move(row);
    });
  }
  std::stable_sort(rows.begin(), rows.end(), [](const FeatureRow& a, const FeatureRow& b) {
    const auto& pa = a.provenance;
    const auto& pb = b.provenance;
    if (pa.match_date != pb.match_date) return pa.match_date < pb.match_date;
    if (pa.player_id != pb.player_id) return pa.player_id < pb.player_id;
    return pa.sequence < pb.sequence;
  });
  return rows;
}

Dataset assemble(const std::vector<FeatureRow>& rows, Target t) {
  std::vector<std::string> teams, hosts, grounds;
  for (const auto& r : rows) {
    teams.push_back(r.context.opposition);
    if (r.context.host) hosts.push_back(*r.context.host);
    if (r.context.ground) grounds.push_back(*r.context.ground);
  }
  Dataset d;
  d.schema = make_schema(t, std::move(teams), std::move(hosts), std::move(grounds));
  d.rows.reserve(rows.size());
  for (const auto& r : rows) {
    Example e;
    e.values = encode(r, d.schema, t);
    e.label = r.label;
    e.provenance = r.provenance;
    d.rows.push_back(std::move(e));
  }
  return d;
}

}  // namespace crickpred::features
