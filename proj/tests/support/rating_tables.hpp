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

// Hand transcription of the printed rating tables, kept separate from the
// library's own tables so the two can be compared. Each band is written the
// way it is printed: an inclusive [lo, hi] range, or an open-ended ">= lo".

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "crickpred/ratings.hpp"

namespace crickpred::testing {

struct PrintedBand {
  double lo;
  std::optional<double> hi;  // nullopt for ">= lo"
  int rating;
};

struct PrintedTable {
  features::Attribute attribute;
  features::DerivedKind kind;
  std::vector<PrintedBand> bands;
};

inline std::vector<PrintedTable> printed_rating_tables() {
  using features::Attribute;
  using features::DerivedKind;
  using B = std::vector<PrintedBand>;
  constexpr DerivedKind C = DerivedKind::Consistency, F = DerivedKind::Form,
                        O = DerivedKind::Opposition, V = DerivedKind::Venue;
  const B innings_c{{1, 49, 1}, {50, 99, 2}, {100, 124, 3}, {125, 149, 4}, {150, {}, 5}};
  const B innings_f{{1, 4, 1}, {5, 9, 2}, {10, 11, 3}, {12, 14, 4}, {15, {}, 5}};
  const B innings_o{{1, 2, 1}, {3, 4, 2}, {5, 6, 3}, {7, 9, 4}, {10, {}, 5}};
  const B innings_v{{1, 1, 1}, {2, 2, 2}, {3, 3, 3}, {4, 4, 4}, {5, {}, 5}};
  const B bat_avg{{0.0, 9.99, 1}, {10.00, 19.99, 2}, {20.00, 29.99, 3}, {30.00, 39.99, 4}, {40, {}, 5}};
  const B bat_sr{{0.0, 49.99, 1}, {50.00, 59.99, 2}, {60.00, 79.99, 3}, {80.00, 100.00, 4}, {100.00, {}, 5}};
  const B cent_c{{1, 4, 1}, {5, 9, 2}, {10, 14, 3}, {15, 19, 4}, {20, {}, 5}};
  const B cent_f{{1, 1, 1}, {2, 2, 2}, {3, 3, 3}, {4, 4, 4}, {5, {}, 5}};
  const B cent_o{{1, 1, 3}, {2, 2, 4}, {3, {}, 5}};
  const B cent_v{{1, 1, 4}, {2, {}, 5}};
  const B fifty_c{{1, 9, 1}, {10, 19, 2}, {20, 29, 3}, {30, 39, 4}, {40, {}, 5}};
  const B fifty_fo{{1, 2, 1}, {3, 4, 2}, {5, 6, 3}, {7, 9, 4}, {10, {}, 5}};
  const B fifty_v{{1, 1, 4}, {2, {}, 5}};
  const B zero_c{{1, 4, 1}, {5, 9, 2}, {10, 14, 3}, {15, 19, 4}, {20, {}, 5}};
  const B zero_fo{{1, 1, 1}, {2, 2, 2}, {3, 3, 3}, {4, 4, 4}, {5, {}, 5}};
  const B hs_v{{1, 24, 1}, {25, 49, 2}, {50, 99, 3}, {100, 150, 4}, {150, {}, 5}};
  const B overs_c{{1, 99, 1}, {100, 249, 2}, {250, 499, 3}, {500, 1000, 4}, {1000, {}, 5}};
  const B overs_fo{{1, 9, 1}, {10, 24, 2}, {25, 49, 3}, {50, 100, 4}, {100, {}, 5}};
  const B overs_v{{1, 9, 1}, {10, 19, 2}, {20, 29, 3}, {30, 39, 4}, {40, {}, 5}};
  const B bowl_avg{{0.00, 24.99, 5}, {25.00, 29.99, 4}, {30.00, 34.99, 3}, {35.00, 49.99, 2}, {50.00, {}, 1}};
  const B bowl_sr{{0.00, 29.99, 5}, {30.00, 39.99, 4}, {40.00, 49.99, 3}, {50.00, 59.99, 2}, {60.00, {}, 1}};
  const B ff_c{{1, 2, 3}, {3, 4, 4}, {5, {}, 5}};
  const B ff_fov{{1, 2, 4}, {3, {}, 5}};

  std::vector<PrintedTable> t;
  for (auto [k, b] : {std::pair{C, innings_c}, {F, innings_f}, {O, innings_o}, {V, innings_v}})
    t.push_back({Attribute::Innings, k, b});
  for (auto k : {C, F, O, V}) {
    t.push_back({Attribute::BattingAverage, k, bat_avg});
    t.push_back({Attribute::BattingStrikeRate, k, bat_sr});
    t.push_back({Attribute::BowlingAverage, k, bowl_avg});
    t.push_back({Attribute::BowlingStrikeRate, k, bowl_sr});
  }
  for (auto [k, b] : {std::pair{C, cent_c}, {F, cent_f}, {O, cent_o}, {V, cent_v}})
    t.push_back({Attribute::Centuries, k, b});
  for (auto [k, b] : {std::pair{C, fifty_c}, {F, fifty_fo}, {O, fifty_fo}, {V, fifty_v}})
    t.push_back({Attribute::Fifties, k, b});
  for (auto [k, b] : {std::pair{C, zero_c}, {F, zero_fo}, {O, zero_fo}})
    t.push_back({Attribute::Zeros, k, b});
  t.push_back({Attribute::HighestScore, V, hs_v});
  for (auto [k, b] : {std::pair{C, overs_c}, {F, overs_fo}, {O, overs_fo}, {V, overs_v}})
    t.push_back({Attribute::Overs, k, b});
  for (auto [k, b] : {std::pair{C, ff_c}, {F, ff_fov}, {O, ff_fov}, {V, ff_fov}})
    t.push_back({Attribute::FourFiveHaul, k, b});
  return t;
}

/// Attribute and kind combinations with no printed table.
inline std::vector<std::pair<features::Attribute, features::DerivedKind>> unrated_pairs() {
  using features::Attribute;
  using features::DerivedKind;
  return {{Attribute::Zeros, DerivedKind::Venue},
          {Attribute::HighestScore, DerivedKind::Consistency},
          {Attribute::HighestScore, DerivedKind::Form},
          {Attribute::HighestScore, DerivedKind::Opposition}};
}

struct BoundaryCase {
  double value;
  int expected;
  std::string what;
};

/// Both sides of every printed edge. The expected rating follows the printed
/// ranges directly; where two printed ranges share a value the higher range
/// wins, and a value falling in a printed gap (e.g. 9.995 between 9.99 and
/// 10.00) belongs to the range below. Values under the first band rate 1.
inline std::vector<BoundaryCase> boundary_cases(const PrintedTable& table) {
  std::vector<BoundaryCase> out;
  const auto& b = table.bands;
  const double below_first = std::nextafter(b.front().lo, -std::numeric_limits<double>::infinity());
  if (below_first >= 0.0) out.push_back({below_first, 1, "below first band"});
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& band = b[i];
    out.push_back({band.lo, band.rating, "lower edge"});
    const double above_lo = std::nextafter(band.lo, std::numeric_limits<double>::infinity());
    if (!band.hi || above_lo <= *band.hi)
      out.push_back({above_lo, band.rating, "just above lower edge"});
    if (i > 0) {
      const double below_lo = std::nextafter(band.lo, -std::numeric_limits<double>::infinity());
      out.push_back({below_lo, b[i - 1].rating, "just below lower edge"});
    }
    if (band.hi) {
      const bool shared = i + 1 < b.size() && b[i + 1].lo == *band.hi;
      out.push_back({*band.hi, shared ? b[i + 1].rating : band.rating, "upper edge"});
      const double below_hi = std::nextafter(*band.hi, -std::numeric_limits<double>::infinity());
      if (below_hi >= band.lo) out.push_back({below_hi, band.rating, "just below upper edge"});
      if (!shared && i + 1 < b.size()) {
        const double gap = (*band.hi + b[i + 1].lo) / 2.0;
        out.push_back({gap, band.rating, "inside printed gap"});
      }
    } else {
      out.push_back({band.lo * 10.0 + 1.0, band.rating, "far above open band"});
    }
  }
  return out;
}

}  // namespace crickpred::testing
