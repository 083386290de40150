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

#include "crickpred/predictor.hpp"

#include <fmt/format.h>

namespace crickpred::predict {

bool Predictor::knows_player(const std::string& player_id) const {
  if (history_.has_player(player_id)) return true;
  for (const auto& roster : rosters_.all()) {
    for (const auto& p : roster.players) {
      if (p.player_id == player_id) return true;
    }
  }
  return false;
}

VenueRelation Predictor::relation_of(const MatchRequest& req) const {
  if (req.venue_relation) return *req.venue_relation;
  const std::string team = rosters_.team_of(req.player_id, req.date);
  if (!team.empty() && req.host == team) return VenueRelation::Home;
  if (req.host == req.opposition) return VenueRelation::Away;
  return VenueRelation::Neutral;
}

features::FeatureRow Predictor::row_for(const MatchRequest& req) const {
  if (!knows_player(req.player_id)) {
    throw UnknownPlayer(fmt::format("unknown player '{}'", req.player_id));
  }
  const RosterEntry* entry = rosters_.entry(req.player_id, req.date);
  const auto batting = history_.batting(req.player_id);
  const auto bowling = history_.bowling(req.player_id);

  if (req.target == features::Target::Runs) {
    BattingInnings b;
    b.player_id = req.player_id;
    b.match_date = req.date;
    b.opposition = req.opposition;
    b.ground = req.ground;
    b.host_country = req.host;
    b.position = req.position;
    b.innings_no = req.innings_no;
    b.match_type = req.match_type;
    b.match_time = req.match_time;
    b.tournament = req.tournament;
    b.toss_won = req.toss_won;
    b.venue_relation = relation_of(req);
    b.captain = req.captain;
    b.wicketkeeper = req.wicketkeeper;
    if (entry) {
      b.player_name = entry->player_name;
      b.batting_hand = entry->batting_hand;
      b.role = entry->role;
    } else if (!batting.empty()) {
      b.player_name = batting.back().player_name;
      b.batting_hand = batting.back().batting_hand;
      b.role = batting.back().role;
    }
    return builder_.batting_row(b);
  }

  BowlingInnings w;
  w.player_id = req.player_id;
  w.match_date = req.date;
  w.opposition = req.opposition;
  w.ground = req.ground;
  w.host_country = req.host;
  w.innings_no = req.innings_no;
  w.match_type = req.match_type;
  w.match_time = req.match_time;
  w.tournament = req.tournament;
  w.toss_won = req.toss_won;
  w.venue_relation = relation_of(req);
  if (entry) {
    w.player_name = entry->player_name;
    w.bowling_hand = entry->bowling_hand;
  } else if (!bowling.empty()) {
    w.player_name = bowling.back().player_name;
    w.bowling_hand = bowling.back().bowling_hand;
  }
  return builder_.bowling_row(w);
}

PredictionResult Predictor::predict(const learn::TrainedModel& model,
                                    const MatchRequest& req) const {
  const int m = features::num_classes(req.target);
  if (model.schema.num_classes != m) {
    throw PreconditionError(fmt::format("model has {} classes but target {} needs {}",
                                        model.schema.num_classes,
                                        features::to_string(req.target), m));
  }
  const features::FeatureRow row = row_for(req);
  const auto values = features::encode(row, model.schema, req.target);
  const learn::Prediction p = model.predict(values);

  PredictionResult r;
  r.player_id = req.player_id;
  r.target = req.target;
  r.predicted_class = p.label;
  r.band = features::class_band(req.target, p.label);
  r.probabilities = p.probabilities;
  r.derived = row.derived;
  r.opposition_strength = row.context.opposition_strength;
  r.cold_start = row.derived.all_missing();
  return r;
}

}  // namespace crickpred::predict
