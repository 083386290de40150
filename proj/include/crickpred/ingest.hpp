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

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "crickpred/error.hpp"
#include "crickpred/records.hpp"

namespace crickpred::ingest {

inline constexpr std::string_view kBattingHeader =
    "player_id,player_name,match_date,opposition,ground,host_country,runs,balls_faced,"
    "dismissed,position,innings_no,match_type,match_time,tournament,toss_won,venue_"
    "relation,captain,wicketkeeper,batting_hand,role";
inline constexpr std::string_view kBowlingHeader =
    "player_id,player_name,match_date,opposition,ground,host_country,balls_bowled,runs_"
    "conceded,wickets,innings_no,match_type,match_time,tournament,toss_won,venue_"
    "relation,bowling_hand";
inline constexpr std::string_view kRosterHeader =
    "team,as_of,player_id,player_name,role,batting_hand,bowling_hand";

class MalformedRow : public DataError {
 public:
  MalformedRow(int line, std::string reason);
  int line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  int line_;
  std::string reason_;
};

class SchemaMismatch : public DataError {
 public:
  using DataError::DataError;
};

class OrderViolation : public DataError {
 public:
  OrderViolation(int line, const std::string& player_id);
  int line() const { return line_; }

 private:
  int line_;
};

struct Diagnostic {
  enum class Kind { Malformed, OrderViolation };
  Kind kind;
  int line;  // 1-based; the header is line 1
  std::string reason;
};

/// Every data row ends up either in `records` or as a diagnostic.
template <typename Record>
struct ParseOutcome {
  std::vector<Record> records;
  std::vector<Diagnostic> diagnostics;
};

// Lenient readers: collect diagnostics for all bad rows. A wrong header
// still throws SchemaMismatch since no row can be interpreted.
ParseOutcome<BattingInnings> read_batting(std::istream& in);
ParseOutcome<BowlingInnings> read_bowling(std::istream& in);

// Strict parsers: throw the first diagnostic as MalformedRow/OrderViolation.
std::vector<BattingInnings> parse_batting_csv(const std::filesystem::path& path);
std::vector<BowlingInnings> parse_bowling_csv(const std::filesystem::path& path);
std::vector<BattingInnings> parse_batting_csv(std::istream& in);
std::vector<BowlingInnings> parse_bowling_csv(std::istream& in);

void write_batting_csv(std::ostream& out, std::span<const BattingInnings> rows);
void write_bowling_csv(std::ostream& out, std::span<const BowlingInnings> rows);

std::vector<Roster> parse_rosters_csv(std::istream& in);
std::vector<Roster> parse_rosters_csv(const std::filesystem::path& path);
void write_rosters_csv(std::ostream& out, std::span<const Roster> rosters);

/// Per-player innings histories, each sorted by (match_date, sequence).
/// Immutable after construction.
class History {
 public:
  History() = default;
  History(std::vector<BattingInnings> batting, std::vector<BowlingInnings> bowling);

  std::span<const BattingInnings> batting(const std::string& player_id) const;
  std::span<const BowlingInnings> bowling(const std::string& player_id) const;

  const std::vector<BattingInnings>& all_batting() const { return batting_; }
  const std::vector<BowlingInnings>& all_bowling() const { return bowling_; }

  bool has_player(const std::string& player_id) const;
  std::vector<std::string> teams() const;

 private:
  struct Range {
    std::size_t begin = 0;
    std::size_t end = 0;
  };
  // Stored sorted by (player_id, date, sequence) so each player is a range.
  std::vector<BattingInnings> batting_;
  std::vector<BowlingInnings> bowling_;
  std::map<std::string, Range, std::less<>> batting_index_;
  std::map<std::string, Range, std::less<>> bowling_index_;
};

/// Roster lookups by team and date.
class RosterBook {
 public:
  RosterBook() = default;
  explicit RosterBook(std::vector<Roster> rosters);

  /// Latest roster of `team` with as_of <= date; if none, the earliest one.
  const Roster* find(const std::string& team, Date date) const;

  /// Team the player belongs to as of `date`, or empty.
  std::string team_of(const std::string& player_id, Date date) const;

  const RosterEntry* entry(const std::string& player_id, Date date) const;

  std::vector<std::string> teams() const;
  const std::vector<Roster>& all() const { return rosters_; }

 private:
  std::vector<Roster> rosters_;  // sorted by (team, as_of)
};

}  // namespace crickpred::ingest
