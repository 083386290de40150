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

#include "crickpred/aggregate.hpp"

#include <algorithm>

namespace crickpred::features {

namespace {

template <typename Record>
std::span<const Record> before(std::span<const Record> history, Date as_of) {
  auto end = std::lower_bound(history.begin(), history.end(), as_of,
                              [](const Record& r, Date d) { return r.match_date < d; });
  return history.first(static_cast<std::size_t>(end - history.begin()));
}

template <typename Record>
bool in_window(const Record& r, Date as_of, const Window& w) {
  switch (w.kind) {
    case Window::Kind::Career:
      return true;
    case Window::Kind::Form12m:
      return r.match_date >= as_of - kFormWindowDays;
    case Window::Kind::VsOpposition:
      return r.opposition == w.key;
    case Window::Kind::AtVenue:
      return r.ground == w.key;
  }
  return false;
}

}  // namespace

TraditionalBattingStats aggregate_batting(std::span<const BattingInnings> history, Date as_of,
                                          const Window& window) {
  TraditionalBattingStats s;
  for (const auto& b : before(history, as_of)) {
    if (!in_window(b, as_of, window)) continue;
    ++s.innings;
    s.runs += b.runs;
    s.balls += b.balls_faced;
    if (b.dismissed) ++s.dismissals;
    if (b.runs >= 100) {
      ++s.centuries;
    } else if (b.runs >= 50) {
      ++s.fifties;
    }
    if (b.runs == 0 && b.dismissed) ++s.zeros;
    s.highest_score = std::max(s.highest_score, b.runs);
  }
  if (s.dismissals > 0) s.average = static_cast<double>(s.runs) / s.dismissals;
  if (s.balls > 0) s.strike_rate = 100.0 * s.runs / s.balls;
  return s;
}

TraditionalBowlingStats aggregate_bowling(std::span<const BowlingInnings> history, Date as_of,
                                          const Window& window) {
  TraditionalBowlingStats s;
  for (const auto& b : before(history, as_of)) {
    if (!in_window(b, as_of, window)) continue;
    if (b.balls_bowled > 0) ++s.innings;
    s.balls += b.balls_bowled;
    s.runs_conceded += b.runs_conceded;
    s.wickets += b.wickets;
    if (b.wickets > 4) ++s.ff;
  }
  s.overs = s.balls / 6.0;
  if (s.wickets > 0) {
    s.average = static_cast<double>(s.runs_conceded) / s.wickets;
    s.strike_rate = static_cast<double>(s.balls) / s.wickets;
  }
  return s;
}

}  // namespace crickpred::features
