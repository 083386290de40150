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

#include "crickpred/context.hpp"
#include "crickpred/dataset.hpp"
#include "crickpred/ingest.hpp"
#include "crickpred/weights.hpp"

namespace crickpred::features {

enum class Target { Runs, Wickets };

std::string_view to_string(Target t);
std::optional<Target> parse_target(std::string_view s);

/// 0-24 -> 1, 25-49 -> 2, 50-74 -> 3, 75-99 -> 4, 100+ -> 5.
int encode_runs_label(int runs);
/// 0-1 -> 1, 2-3 -> 2, 4+ -> 3.
int encode_wickets_label(int wickets);

inline int num_classes(Target t) { return t == Target::Runs ? 5 : 3; }

/// Human-readable band of a class, e.g. "50-74" or "100+".
std::string class_band(Target t, int label);

struct DerivedAttributes {
  std::optional<double> consistency;
  std::optional<double> form;
  std::optional<double> opposition;
  std::optional<double> venue;

  bool all_missing() const { return !consistency && !form && !opposition && !venue; }
};

/// Context attributes. Fields marked "runs only" are populated for batting
/// rows and left empty for bowling rows.
struct MatchContext {
  std::optional<Hand> batting_hand;
  std::optional<Hand> bowling_hand;
  std::optional<int> batting_position;  // runs only
  MatchType match_type = MatchType::Normal;
  MatchTime match_time = MatchTime::Day;
  std::optional<double> opposition_strength;
  VenueRelation venue_relation = VenueRelation::Home;
  std::string opposition;
  std::optional<Role> role;             // runs only
  std::optional<bool> captain;          // runs only
  std::optional<bool> wicketkeeper;     // runs only
  std::optional<int> innings_no;        // runs only
  std::optional<Tournament> tournament; // runs only
  std::optional<bool> toss_won;         // runs only
  std::optional<int> pressure;          // runs only, 1..6
  std::optional<std::string> host;      // runs only
  std::optional<std::string> ground;    // runs only
};

struct FeatureRow {
  DerivedAttributes derived;
  MatchContext context;
  int label = 1;
  Provenance provenance;
};

/// Feature names in schema order for a target.
std::vector<std::string> feature_names(Target t);

/// Schema for a target. Enum-valued features list every token in declaration
/// order; team, host and ground tokens come from the arguments (sorted).
Schema make_schema(Target t, std::vector<std::string> teams, std::vector<std::string> hosts,
                   std::vector<std::string> grounds);

/// Encodes a row's attributes in schema order. Missing derived values and
/// missing strength become kMissing; unseen tokens become kUnknownToken.
std::vector<double> encode(const FeatureRow& row, const Schema& schema, Target t);

/// Computes derived and context attributes from histories as of each
/// innings' date. Only innings strictly before that date are consulted.
class FeatureBuilder {
 public:
  FeatureBuilder(const ingest::History& history, const ingest::RosterBook& rosters,
                 const WeightVectors& weights)
      : history_(history), rosters_(rosters), weights_(weights) {}

  DerivedAttributes batting_derived(const std::string& player, Date as_of,
                                    const std::string& opposition,
                                    const std::string& ground) const;
  DerivedAttributes bowling_derived(const std::string& player, Date as_of,
                                    const std::string& opposition,
                                    const std::string& ground) const;

  /// Strength of `team` as faced by a batsman (its bowlers) or by a bowler
  /// (its batsmen). nullopt if the team has no roster or nobody has history.
  std::optional<double> strength(const std::string& team, Date as_of, Target t) const;

  FeatureRow batting_row(const BattingInnings& b) const;
  FeatureRow bowling_row(const BowlingInnings& b) const;

  const WeightVectors& weights() const { return weights_; }

 private:
  const ingest::History& history_;
  const ingest::RosterBook& rosters_;
  const WeightVectors& weights_;
};

/// One row per batting innings (Runs) or per bowling innings with at least
/// one ball bowled (Wickets), ordered by (match_date, player_id, sequence).
std::vector<FeatureRow> build_rows(const ingest::History& history,
                                   const ingest::RosterBook& rosters, Target t,
                                   const WeightVectors& weights, unsigned jobs = 1);

Dataset assemble(const std::vector<FeatureRow>& rows, Target t);

inline Dataset build_dataset(const ingest::History& history, const ingest::RosterBook& rosters,
                             Target t, const WeightVectors& weights, unsigned jobs = 1) {
  return assemble(build_rows(history, rosters, t, weights, jobs), t);
}

}  // namespace crickpred::features
