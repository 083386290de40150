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
#include <string>
#include <vector>

#include "crickpred/features.hpp"
#include "crickpred/ingest.hpp"
#include "crickpred/learners/model.hpp"
#include "crickpred/weights.hpp"

namespace crickpred::predict {

class UnknownPlayer : public DataError {
 public:
  using DataError::DataError;
};

/// The match a prediction is asked for. Unset optional fields take the
/// defaults documented per field.
struct MatchRequest {
  std::string player_id;
  features::Target target = features::Target::Runs;
  std::string opposition;
  std::string ground;
  std::string host;
  Date date;
  MatchType match_type = MatchType::Normal;
  MatchTime match_time = MatchTime::Day;
  Tournament tournament = Tournament::TT;
  bool toss_won = false;
  // Derived from host against the player's team and the opposition if unset.
  std::optional<VenueRelation> venue_relation;
  int innings_no = 1;
  int position = 1;  // batting position, runs only
  bool captain = false;
  bool wicketkeeper = false;
};

struct PredictionResult {
  std::string player_id;
  features::Target target = features::Target::Runs;
  int predicted_class = 1;
  std::string band;
  std::vector<double> probabilities;
  features::DerivedAttributes derived;
  std::optional<double> opposition_strength;
  // No innings of this facet before the date: every derived value was
  // missing and the prediction rests on imputed values.
  bool cold_start = false;
};

/// Builds feature rows for hypothetical matches from immutable histories and
/// rosters, using the same row builders as the training dataset.
class Predictor {
 public:
  Predictor(const ingest::History& history, const ingest::RosterBook& rosters,
            const features::WeightVectors& weights)
      : history_(history), rosters_(rosters), builder_(history, rosters, weights) {}

  bool knows_player(const std::string& player_id) const;

  /// Throws UnknownPlayer if the player has no history and no roster entry.
  features::FeatureRow row_for(const MatchRequest& req) const;

  /// Throws UnknownPlayer, or PreconditionError if the model was trained for
  /// a different number of classes than the request's target has.
  PredictionResult predict(const learn::TrainedModel& model, const MatchRequest& req) const;

 private:
  VenueRelation relation_of(const MatchRequest& req) const;

  const ingest::History& history_;
  const ingest::RosterBook& rosters_;
  features::FeatureBuilder builder_;
};

}  // namespace crickpred::predict
