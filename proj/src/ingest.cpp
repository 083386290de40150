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

#include "crickpred/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "crickpred/csv.hpp"

namespace crickpred {

std::string overs_notation(int balls) { return fmt::format("{}.{}", balls / 6, balls % 6); }

std::optional<int> parse_overs(std::string_view notation) {
  const auto dot = notation.find('.');
  if (dot == std::string_view::npos) {
    auto whole = csv::parse_int(notation);
    if (!whole || *whole < 0) return std::nullopt;
    return static_cast<int>(*whole * 6);
  }
  auto whole = csv::parse_int(notation.substr(0, dot));
  auto part = notation.substr(dot + 1);
  if (!whole || *whole < 0 || part.size() != 1 || part[0] < '0' || part[0] > '5') {
    return std::nullopt;
  }
  return static_cast<int>(*whole * 6 + (part[0] - '0'));
}

namespace ingest {

MalformedRow::MalformedRow(int line, std::string reason)
    : DataError(fmt::format("line {}: {}", line, reason)), line_(line), reason_(std::move(reason)) {}

OrderViolation::OrderViolation(int line, const std::string& player_id)
    : DataError(fmt::format("line {}: innings for player '{}' are not sorted by date", line,
                            player_id)),
      line_(line) {}

namespace {

// Pulls typed values out of one split record, remembering the first problem.
class FieldReader {
 public:
  FieldReader(const std::vector<std::string>& fields, std::span<const std::string_view> names)
      : fields_(fields), names_(names) {}

  const std::string& text(std::size_t i) {
    if (fields_[i].empty()) fail(i, "empty value");
    return fields_[i];
  }

  int integer(std::size_t i, long long lo, long long hi) {
    auto v = csv::parse_int(fields_[i]);
    if (!v) {
      fail(i, fmt::format("'{}' is not an integer", fields_[i]));
      return 0;
    }
    if (*v < lo || *v > hi) {
      fail(i, fmt::format("{} is outside [{}, {}]", *v, lo, hi));
      return 0;
    }
    return static_cast<int>(*v);
  }

  bool boolean(std::size_t i) {
    if (fields_[i] == "1") return true;
    if (fields_[i] != "0") fail(i, fmt::format("'{}' is not 0 or 1", fields_[i]));
    return false;
  }

  Date date(std::size_t i) {
    auto d = Date::parse(fields_[i]);
    if (!d) {
      fail(i, fmt::format("'{}' is not an ISO-8601 date", fields_[i]));
      return Date{};
    }
    return *d;
  }

  template <typename E>
  E token(std::size_t i) {
    auto e = parse_token<E>(fields_[i]);
    if (!e) {
      fail(i, fmt::format("unknown token '{}'", fields_[i]));
      return EnumTokens<E>::values[0].first;
    }
    return *e;
  }

  const std::optional<std::string>& error() const { return error_; }

 private:
  void fail(std::size_t i, const std::string& why) {
    if (!error_) error_ = fmt::format("{}: {}", names_[i], why);
  }

  const std::vector<std::string>& fields_;
  std::span<const std::string_view> names_;
  std::optional<std::string> error_;
};

std::vector<std::string_view> header_names(std::string_view header) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto comma = header.find(',', start);
    out.push_back(header.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void check_header(std::istream& in, std::string_view expected) {
  std::string line;
  if (!csv::read_line(in, line)) throw SchemaMismatch("missing header row");
  if (!line.empty() && static_cast<unsigned char>(line[0]) == 0xEF && line.size() >= 3) {
    line.erase(0, 3);  // UTF-8 BOM
  }
  if (line != expected) {
    throw SchemaMismatch(fmt::format("header mismatch: expected '{}', got '{}'", expected, line));
  }
}

std::optional<BattingInnings> batting_from_fields(const std::vector<std::string>& f,
                                                  std::span<const std::string_view> names,
                                                  std::string& error) {
  FieldReader r(f, names);
  BattingInnings b;
  b.player_id = r.text(0);
  b.player_name = f[1];
  b.match_date = r.date(2);
  b.opposition = r.text(3);
  b.ground = r.text(4);
  b.host_country = r.text(5);
  b.runs = r.integer(6, 0, 100000);
  b.balls_faced = r.integer(7, 0, 100000);
  b.dismissed = r.boolean(8);
  b.position = r.integer(9, 1, 11);
  b.innings_no = r.integer(10, 1, 2);
  b.match_type = r.token<MatchType>(11);
  b.match_time = r.token<MatchTime>(12);
  b.tournament = r.token<Tournament>(13);
  b.toss_won = r.boolean(14);
  b.venue_relation = r.token<VenueRelation>(15);
  b.captain = r.boolean(16);
  b.wicketkeeper = r.boolean(17);
  b.batting_hand = r.token<Hand>(18);
  b.role = r.token<Role>(19);
  if (r.error()) {
    error = *r.error();
    return std::nullopt;
  }
  return b;
}

std::optional<BowlingInnings> bowling_from_fields(const std::vector<std::string>& f,
                                                  std::span<const std::string_view> names,
                                                  std::string& error) {
  FieldReader r(f, names);
  BowlingInnings b;
  b.player_id = r.text(0);
  b.player_name = f[1];
  b.match_date = r.date(2);
  b.opposition = r.text(3);
  b.ground = r.text(4);
  b.host_country = r.text(5);
  b.balls_bowled = r.integer(6, 0, 100000);
  b.runs_conceded = r.integer(7, 0, 100000);
  b.wickets = r.integer(8, 0, 10);
  b.innings_no = r.integer(9, 1, 2);
  b.match_type = r.token<MatchType>(10);
  b.match_time = r.token<MatchTime>(11);
  b.tournament = r.token<Tournament>(12);
  b.toss_won = r.boolean(13);
  b.venue_relation = r.token<VenueRelation>(14);
  b.bowling_hand = r.token<Hand>(15);
  if (r.error()) {
    error = *r.error();
    return std::nullopt;
  }
  return b;
}

template <typename Record, typename Convert>
ParseOutcome<Record> read_records(std::istream& in, std::string_view header, Convert convert) {
  check_header(in, header);
  const auto names = header_names(header);
  ParseOutcome<Record> out;
  struct LastSeen {
    Date date;
    int sequence = 0;
  };
  std::unordered_map<std::string, LastSeen> last;
  std::string line;
  int line_no = 1;
  while (csv::read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = csv::split(line);
    if (!fields) {
      out.diagnostics.push_back({Diagnostic::Kind::Malformed, line_no, "unterminated quote"});
      continue;
    }
    if (fields->size() != names.size()) {
      out.diagnostics.push_back(
          {Diagnostic::Kind::Malformed, line_no,
           fmt::format("expected {} fields, found {}", names.size(), fields->size())});
      continue;
    }
    std::string error;
    auto rec = convert(*fields, names, error);
    if (!rec) {
      out.diagnostics.push_back({Diagnostic::Kind::Malformed, line_no, error});
      continue;
    }
    auto [it, fresh] = last.try_emplace(rec->player_id, LastSeen{rec->match_date, 0});
    if (!fresh) {
      if (rec->match_date < it->second.date) {
        out.diagnostics.push_back(
            {Diagnostic::Kind::OrderViolation, line_no,
             fmt::format("player '{}' dated {} after {}", rec->player_id, rec->match_date.iso(),
                         it->second.date.iso())});
        continue;
      }
      if (rec->match_date == it->second.date) {
        ++it->second.sequence;
      } else {
        it->second = LastSeen{rec->match_date, 0};
      }
    }
    rec->sequence = it->second.sequence;
    out.records.push_back(std::move(*rec));
  }
  return out;
}

template <typename Record>
std::vector<Record> strict(ParseOutcome<Record> outcome) {
  if (!outcome.diagnostics.empty()) {
    const auto& d = outcome.diagnostics.front();
    if (d.kind == Diagnostic::Kind::OrderViolation) {
      // Recover the player id from the reason for the exception message.
      auto start = d.reason.find('\'') + 1;
      auto end = d.reason.find('\'', start);
      throw OrderViolation(d.line, d.reason.substr(start, end - start));
    }
    throw MalformedRow(d.line, d.reason);
  }
  return std::move(outcome.records);
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  return in;
}

const char* b01(bool b) { return b ? "1" : "0"; }

}  // namespace

ParseOutcome<BattingInnings> read_batting(std::istream& in) {
  return read_records<BattingInnings>(in, kBattingHeader, batting_from_fields);
}

ParseOutcome<BowlingInnings> read_bowling(std::istream& in) {
  return read_records<BowlingInnings>(in, kBowlingHeader, bowling_from_fields);
}

std::vector<BattingInnings> parse_batting_csv(std::istream& in) { return strict(read_batting(in)); }
std::vector<BowlingInnings> parse_bowling_csv(std::istream& in) { return strict(read_bowling(in)); }

std::vector<BattingInnings> parse_batting_csv(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_batting_csv(in);
}

std::vector<BowlingInnings> parse_bowling_csv(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_bowling_csv(in);
}

void write_batting_csv(std::ostream& out, std::span<const BattingInnings> rows) {
  out << kBattingHeader << '\n';
  for (const auto& b : rows) {
    out << csv::join({b.player_id, b.player_name, b.match_date.iso(), b.opposition, b.ground,
                      b.host_country, std::to_string(b.runs), std::to_string(b.balls_faced),
                      b01(b.dismissed), std::to_string(b.position), std::to_string(b.innings_no),
                      std::string(to_token(b.match_type)), std::string(to_token(b.match_time)),
                      std::string(to_token(b.tournament)), b01(b.toss_won),
                      std::string(to_token(b.venue_relation)), b01(b.captain),
                      b01(b.wicketkeeper), std::string(to_token(b.batting_hand)),
                      std::string(to_token(b.role))})
        << '\n';
  }
}

void write_bowling_csv(std::ostream& out, std::span<const BowlingInnings> rows) {
  out << kBowlingHeader << '\n';
  for (const auto& b : rows) {
    out << csv::join({b.player_id, b.player_name, b.match_date.iso(), b.opposition, b.ground,
                      b.host_country, std::to_string(b.balls_bowled),
                      std::to_string(b.runs_conceded), std::to_string(b.wickets),
                      std::to_string(b.innings_no), std::string(to_token(b.match_type)),
                      std::string(to_token(b.match_time)), std::string(to_token(b.tournament)),
                      b01(b.toss_won), std::string(to_token(b.venue_relation)),
                      std::string(to_token(b.bowling_hand))})
        << '\n';
  }
}

std::vector<Roster> parse_rosters_csv(std::istream& in) {
  check_header(in, kRosterHeader);
  const auto names = header_names(kRosterHeader);
  std::vector<Roster> rosters;
  std::string line;
  int line_no = 1;
  while (csv::read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = csv::split(line);
    if (!fields || fields->size() != names.size()) {
      throw MalformedRow(line_no, fmt::format("expected {} fields", names.size()));
    }
    FieldReader r(*fields, names);
    const std::string team = r.text(0);
    const Date as_of = r.date(1);
    RosterEntry e;
    e.player_id = r.text(2);
    e.player_name = (*fields)[3];
    e.role = r.token<Role>(4);
    e.batting_hand = r.token<Hand>(5);
    e.bowling_hand = r.token<Hand>(6);
    if (r.error()) throw MalformedRow(line_no, *r.error());
    auto it = std::find_if(rosters.begin(), rosters.end(), [&](const Roster& ro) {
      return ro.team == team && ro.as_of == as_of;
    });
    if (it == rosters.end()) {
      rosters.push_back(Roster{team, as_of, {}});
      it = std::prev(rosters.end());
    }
    for (const auto& p : it->players) {
      if (p.player_id == e.player_id) {
        throw MalformedRow(line_no, fmt::format("duplicate player '{}' in roster of {}",
                                                e.player_id, team));
      }
    }
    it->players.push_back(std::move(e));
  }
  return rosters;
}

std::vector<Roster> parse_rosters_csv(const std::filesystem::path& path) {
  auto in = open(path);
  return parse_rosters_csv(in);
}

void write_rosters_csv(std::ostream& out, std::span<const Roster> rosters) {
  out << kRosterHeader << '\n';
  for (const auto& r : rosters) {
    for (const auto& p : r.players) {
      out << csv::join({r.team, r.as_of.iso(), p.player_id, p.player_name,
                        std::string(to_token(p.role)), std::string(to_token(p.batting_hand)),
                        std::string(to_token(p.bowling_hand))})
          << '\n';
    }
  }
}

namespace {

template <typename Record, typename Range>
std::map<std::string, Range, std::less<>> build_index(std::vector<Record>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const Record& a, const Record& b) {
    if (a.player_id != b.player_id) return a.player_id < b.player_id;
    if (a.match_date != b.match_date) return a.match_date < b.match_date;
    return a.sequence < b.sequence;
  });
  std::map<std::string, Range, std::less<>> index;
  for (std::size_t i = 0; i < rows.size();) {
    std::size_t j = i;
    while (j < rows.size() && rows[j].player_id == rows[i].player_id) ++j;
    index.emplace(rows[i].player_id, Range{i, j});
    i = j;
  }
  return index;
}

}  // namespace

History::History(std::vector<BattingInnings> batting, std::vector<BowlingInnings> bowling)
    : batting_(std::move(batting)), bowling_(std::move(bowling)) {
  batting_index_ = build_index<BattingInnings, Range>(batting_);
  bowling_index_ = build_index<BowlingInnings, Range>(bowling_);
}

std::span<const BattingInnings> History::batting(const std::string& player_id) const {
  auto it = batting_index_.find(player_id);
  if (it == batting_index_.end()) return {};
  return std::span(batting_).subspan(it->second.begin, it->second.end - it->second.begin);
}

std::span<const BowlingInnings> History::bowling(const std::string& player_id) const {
  auto it = bowling_index_.find(player_id);
  if (it == bowling_index_.end()) return {};
  return std::span(bowling_).subspan(it->second.begin, it->second.end - it->second.begin);
}

bool History::has_player(const std::string& player_id) const {
  return batting_index_.contains(player_id) || bowling_index_.contains(player_id);
}

std::vector<std::string> History::teams() const {
  std::set<std::string> teams;
  for (const auto& b : batting_) teams.insert(b.opposition);
  for (const auto& b : bowling_) teams.insert(b.opposition);
  return {teams.begin(), teams.end()};
}

RosterBook::RosterBook(std::vector<Roster> rosters) : rosters_(std::move(rosters)) {
  std::stable_sort(rosters_.begin(), rosters_.end(), [](const Roster& a, const Roster& b) {
    if (a.team != b.team) return a.team < b.team;
    return a.as_of < b.as_of;
  });
}

const Roster* RosterBook::find(const std::string& team, Date date) const {
  const Roster* earliest = nullptr;
  const Roster* best = nullptr;
  for (const auto& r : rosters_) {
    if (r.team != team) continue;
    if (!earliest) earliest = &r;
    if (r.as_of <= date) best = &r;
  }
  return best ? best : earliest;
}

std::string RosterBook::team_of(const std::string& player_id, Date date) const {
  std::string team;
  Date chosen;
  bool have_current = false;
  for (const auto& r : rosters_) {
    for (const auto& p : r.players) {
      if (p.player_id != player_id) continue;
      const bool current = r.as_of <= date;
      // Prefer the latest roster at or before the date, else the earliest one.
      if (team.empty() || (current && (!have_current || r.as_of > chosen)) ||
          (!current && !have_current && r.as_of < chosen)) {
        team = r.team;
        chosen = r.as_of;
        have_current = current;
      }
    }
  }
  return team;
}

const RosterEntry* RosterBook::entry(const std::string& player_id, Date date) const {
  const std::string team = team_of(player_id, date);
  if (team.empty()) return nullptr;
  const Roster* r = find(team, date);
  if (!r) return nullptr;
  for (const auto& p : r->players) {
    if (p.player_id == player_id) return &p;
  }
  return nullptr;
}

std::vector<std::string> RosterBook::teams() const {
  std::set<std::string> teams;
  for (const auto& r : rosters_) teams.insert(r.team);
  return {teams.begin(), teams.end()};
}

}  // namespace ingest
}  // namespace crickpred
