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

#include "crickpred/context.hpp"

#include <fmt/format.h>

namespace crickpred::features {

namespace {

bool pair_is(std::string_view a, std::string_view b, std::string_view x, std::string_view y) {
  return (a == x && b == y) || (a == y && b == x);
}

}  // namespace

int pressure(MatchType type, std::string_view team_a, std::string_view team_b) {
  int p = 1;
  switch (type) {
    case MatchType::Normal: p = 1; break;
    case MatchType::QuarterFinal: p = 3; break;
    case MatchType::SemiFinal: p = 4; break;
    case MatchType::Final: p = 5; break;
  }
  if (pair_is(team_a, team_b, "India", "Pakistan") ||
      pair_is(team_a, team_b, "Australia", "England")) {
    ++p;
  }
  return p;
}

std::optional<double> batting_derived(const ingest::History& history, const std::string& player,
                                      Date as_of, DerivedKind kind, const Window& window,
                                      const WeightVectors& weights) {
  const auto stats = aggregate_batting(history.batting(player), as_of, window);
  return derived_batting(rate_batting(stats, kind), kind, weights);
}

std::optional<double> bowling_derived(const ingest::History& history, const std::string& player,
                                      Date as_of, DerivedKind kind, const Window& window,
                                      const WeightVectors& weights) {
  const auto stats = aggregate_bowling(history.bowling(player), as_of, window);
  return derived_bowling(rate_bowling(stats, kind), kind, weights);
}

std::optional<double> consistency(const ingest::History& history, const std::string& player,
                                  Date as_of, Facet facet, const WeightVectors& weights) {
  if (facet == Facet::Batting) {
    return batting_derived(history, player, as_of, DerivedKind::Consistency, Window::career(),
                           weights);
  }
  return bowling_derived(history, player, as_of, DerivedKind::Consistency, Window::career(),
                         weights);
}

std::optional<double> opposition_strength(const Roster& roster, const ingest::History& history,
                                          Date as_of, Facet facet, const WeightVectors& weights) {
  if (roster.players.empty()) {
    throw EmptyRoster(fmt::format("roster of '{}' has no players", roster.team));
  }
  double sum = 0.0;
  int defined = 0;
  for (const auto& p : roster.players) {
    const bool counts = facet == Facet::Bowling ? is_bowling_role(p.role) : is_batting_role(p.role);
    if (!counts) continue;
    if (auto c = consistency(history, p.player_id, as_of, facet, weights)) {
      sum += *c;
      ++defined;
    }
  }
  if (defined == 0) return std::nullopt;
  return sum / defined;
}

}  // namespace crickpred::features
