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

#include "crickpred/fixture.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>

#include <fmt/format.h>

#include "crickpred/error.hpp"
#include "crickpred/ingest.hpp"
#include "crickpred/random.hpp"

namespace crickpred::fixture {

std::string_view to_string(Profile p) {
  switch (p) {
    case Profile::Separable: return "separable";
    case Profile::Nonlinear: return "nonlinear";
    case Profile::Realistic: return "realistic";
  }
  return {};
}

std::optional<Profile> parse_profile(std::string_view s) {
  for (auto p : {Profile::Separable, Profile::Nonlinear, Profile::Realistic}) {
    if (s == to_string(p)) return p;
  }
  return std::nullopt;
}

namespace {

constexpr std::array<std::string_view, 10> kCountries{
    "India",       "Pakistan",     "Australia",   "England",    "Sri Lanka",
    "New Zealand", "South Africa", "West Indies", "Bangladesh", "Zimbabwe"};

constexpr std::array<std::string_view, 2> kGroundSuffixes{"Oval", "Park"};

// Role by squad slot (modulo 11).
constexpr std::array<Role, 11> kSlotRoles{
    Role::OBT,       Role::OBT,        Role::TOB,
    Role::TOB,       Role::MOB,        Role::BattingAllrounder,
    Role::Batsman,   Role::Allrounder, Role::BowlingAllrounder,
    Role::Bowler,    Role::Bowler};

constexpr int kWicketkeeperSlot = 6;

// Mean runs by batting position for an average player (Realistic profile).
constexpr std::array<double, 11> kPositionMeans{38, 36, 35, 33, 30, 26, 22, 16, 11, 8, 5};

struct Player {
  std::string id;
  std::string name;
  int slot = 0;
  Role role = Role::Batsman;
  Hand batting_hand = Hand::Right;
  Hand bowling_hand = Hand::Right;
  bool strong = false;        // Separable tier
  double batting_skill = 1.0;  // Realistic
  double bowling_skill = 1.0;  // Realistic
};

struct Team {
  std::string name;
  std::vector<Player> squad;
};

std::string team_name(std::size_t i) {
  if (i < kCountries.size()) return std::string(kCountries[i]);
  return fmt::format("Team {:02}", i + 1);
}

std::string ground_name(const std::string& country, int which) {
  return fmt::format("{} {}", country, kGroundSuffixes[static_cast<std::size_t>(which)]);
}

int balls_for(int runs, double strike_rate) {
  return std::max(1, static_cast<int>(std::lround(runs * 100.0 / strike_rate)));
}

struct MatchSetup {
  Date date;
  std::size_t team[2];
  std::string host;
  std::string ground;
  MatchType type = MatchType::Normal;
  MatchTime time = MatchTime::Day;
  Tournament tournament = Tournament::TT;
  int toss_winner = 0;      // 0 or 1
  int batting_first = 0;    // 0 or 1
};

class Generator {
 public:
  explicit Generator(const FixtureConfig& c)
      : config_(c), rng_(derive_seed(c.seed, static_cast<std::uint64_t>(c.profile))) {}

  Fixture run() {
    make_teams();
    plan_day_night();
    for (int m = 0; m < config_.n_matches; ++m) play(setup(m));
    return std::move(out_);
  }

 private:
  void make_teams() {
    const auto n_teams = static_cast<std::size_t>(config_.n_players / 11);
    teams_.resize(n_teams);
    int next_id = 1;
    for (std::size_t t = 0; t < n_teams; ++t) teams_[t].name = team_name(t);
    for (int p = 0; p < config_.n_players; ++p) {
      auto& team = teams_[static_cast<std::size_t>(p) % n_teams];
      Player pl;
      pl.id = fmt::format("P{:04}", next_id++);
      pl.slot = static_cast<int>(team.squad.size());
      pl.name = fmt::format("{} Player {}", team.name, pl.slot + 1);
      pl.role = kSlotRoles[static_cast<std::size_t>(pl.slot % 11)];
      if (config_.profile == Profile::Nonlinear) {
        // Alternate hands so every match has an even left/right split.
        const bool even = (pl.slot + p % static_cast<int>(n_teams)) % 2 == 0;
        pl.batting_hand = even ? Hand::Left : Hand::Right;
        pl.bowling_hand = even ? Hand::Right : Hand::Left;
      } else {
        pl.batting_hand = rng_.bernoulli(0.3) ? Hand::Left : Hand::Right;
        pl.bowling_hand = rng_.bernoulli(0.3) ? Hand::Left : Hand::Right;
      }
      pl.strong = rng_.bernoulli(0.5);
      pl.batting_skill = std::exp(rng_.normal(0.0, 0.35));
      pl.bowling_skill = std::exp(rng_.normal(0.0, 0.35));
      team.squad.push_back(std::move(pl));
    }
    const Date first = Date::from_ymd(2010, 1, 1);
    for (const auto& team : teams_) {
      Roster r{team.name, first, {}};
      for (const auto& p : team.squad) {
        r.players.push_back({p.id, p.name, p.role, p.batting_hand, p.bowling_hand});
      }
      out_.rosters.push_back(std::move(r));
    }
  }

  // Exactly round(share * n) day/night matches, in shuffled order.
  void plan_day_night() {
    const double share =
        config_.profile == Profile::Nonlinear ? kNonlinearDayNightShare : 0.5;
    const auto n = static_cast<std::size_t>(config_.n_matches);
    const auto k = static_cast<std::size_t>(std::lround(share * static_cast<double>(n)));
    day_night_.assign(n, false);
    for (std::size_t i = 0; i < k; ++i) day_night_[i] = true;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng_.shuffle(order);
    std::vector<bool> shuffled(n);
    for (std::size_t i = 0; i < n; ++i) shuffled[i] = day_night_[order[i]];
    day_night_ = std::move(shuffled);
  }

  MatchSetup setup(int m) {
    MatchSetup s;
    s.date = Date::from_ymd(2010, 1, 1) + 4 * m;
    s.team[0] = rng_.below(teams_.size());
    s.team[1] = rng_.below(teams_.size() - 1);
    if (s.team[1] >= s.team[0]) ++s.team[1];
    const double u = rng_.uniform();
    if (u < 0.4) {
      s.host = teams_[s.team[0]].name;
    } else if (u < 0.8) {
      s.host = teams_[s.team[1]].name;
    } else {
      s.host = team_name(teams_.size());  // a neutral country
    }
    s.ground = ground_name(s.host, rng_.between(0, 1));
    const double v = rng_.uniform();
    s.type = v < 0.85   ? MatchType::Normal
             : v < 0.90 ? MatchType::QuarterFinal
             : v < 0.95 ? MatchType::SemiFinal
                        : MatchType::Final;
    s.time = day_night_[static_cast<std::size_t>(m)] ? MatchTime::DayNight : MatchTime::Day;
    s.tournament = static_cast<Tournament>(rng_.below(3));
    s.toss_winner = static_cast<int>(rng_.below(2));
    s.batting_first = rng_.bernoulli(0.5) ? s.toss_winner : 1 - s.toss_winner;
    return s;
  }

  std::vector<const Player*> playing_xi(const Team& team) {
    std::vector<const Player*> xi;
    if (team.squad.size() <= 11) {
      for (const auto& p : team.squad) xi.push_back(&p);
      return xi;
    }
    auto picks = rng_.sample_without_replacement(team.squad.size(), 11);
    std::sort(picks.begin(), picks.end());
    for (auto i : picks) xi.push_back(&team.squad[i]);
    return xi;
  }

  void play(const MatchSetup& s) {
    for (int side = 0; side < 2; ++side) {
      const Team& team = teams_[s.team[side]];
      const Team& opp = teams_[s.team[1 - side]];
      const auto xi = playing_xi(team);
      const VenueRelation rel = s.host == team.name  ? VenueRelation::Home
                                : s.host == opp.name ? VenueRelation::Away
                                                     : VenueRelation::Neutral;
      const bool toss = s.toss_winner == side;
      const int innings_no = s.batting_first == side ? 1 : 2;
      bool have_keeper = false;
      for (std::size_t pos = 0; pos < xi.size(); ++pos) {
        const Player& p = *xi[pos];
        BattingInnings b;
        b.player_id = p.id;
        b.player_name = p.name;
        b.match_date = s.date;
        b.opposition = opp.name;
        b.ground = s.ground;
        b.host_country = s.host;
        b.position = static_cast<int>(pos) + 1;
        b.innings_no = innings_no;
        b.match_type = s.type;
        b.match_time = s.time;
        b.tournament = s.tournament;
        b.toss_won = toss;
        b.venue_relation = rel;
        b.captain = pos == 0;
        b.wicketkeeper = !have_keeper && p.slot % 11 == kWicketkeeperSlot;
        have_keeper = have_keeper || b.wicketkeeper;
        b.batting_hand = p.batting_hand;
        b.role = p.role;
        bat(p, b);
        out_.batting.push_back(std::move(b));
      }
      for (const Player* p : bowlers(xi)) {
        // Separable weak bowlers get the ball every other match, which keeps
        // their career counts (and so their count-based ratings) low.
        const bool weak_separable = config_.profile == Profile::Separable && !p->strong;
        if (weak_separable && appearances_[p->id]++ % 2 == 1) continue;
        BowlingInnings w;
        w.player_id = p->id;
        w.player_name = p->name;
        w.match_date = s.date;
        w.opposition = opp.name;
        w.ground = s.ground;
        w.host_country = s.host;
        w.innings_no = 3 - innings_no;
        w.match_type = s.type;
        w.match_time = s.time;
        w.tournament = s.tournament;
        w.toss_won = toss;
        w.venue_relation = rel;
        w.bowling_hand = p->bowling_hand;
        bowl(*p, w);
        out_.bowling.push_back(std::move(w));
      }
    }
  }

  // Bowling-role players first, topped up from the bottom of the order.
  static std::vector<const Player*> bowlers(const std::vector<const Player*>& xi) {
    std::vector<const Player*> out;
    for (auto it = xi.rbegin(); it != xi.rend() && out.size() < 5; ++it) {
      if (is_bowling_role((*it)->role)) out.push_back(*it);
    }
    for (auto it = xi.rbegin(); it != xi.rend() && out.size() < 5; ++it) {
      if (std::find(out.begin(), out.end(), *it) == out.end()) out.push_back(*it);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  void bat(const Player& p, BattingInnings& b) {
    switch (config_.profile) {
      case Profile::Separable:
        b.dismissed = true;
        if (p.strong) {
          b.runs = rng_.between(100, 150);
          b.balls_faced = balls_for(b.runs, 125.0);
        } else {
          b.runs = rng_.between(0, 19);
          b.balls_faced = std::max(10, balls_for(b.runs, 30.0));
        }
        break;
      case Profile::Nonlinear: {
        const bool hit =
            (b.batting_hand == Hand::Left) != (b.match_time == MatchTime::DayNight);
        b.runs = hit ? rng_.between(50, 74) : rng_.between(0, 24);
        b.balls_faced = balls_for(std::max(b.runs, 1), rng_.uniform(60.0, 100.0));
        b.dismissed = true;
        break;
      }
      case Profile::Realistic: {
        const double mean = kPositionMeans[static_cast<std::size_t>(b.position - 1)] *
                            p.batting_skill;
        b.runs = std::min(200, static_cast<int>(rng_.exponential(mean)));
        const double sr = std::clamp(rng_.normal(80.0, 15.0), 30.0, 150.0);
        b.balls_faced = balls_for(std::max(b.runs, 1), sr);
        b.dismissed = rng_.bernoulli(0.85);
        break;
      }
    }
  }

  void bowl(const Player& p, BowlingInnings& w) {
    switch (config_.profile) {
      case Profile::Separable:
        if (p.strong) {
          w.balls_bowled = 60;
          w.wickets = 5;
          w.runs_conceded = rng_.between(15, 25);
        } else {
          // A wicket on the first spell at each ground and against each
          // opposition keeps every window's strike rate and average defined;
          // none otherwise drives both towards the worst band.
          w.balls_bowled = 6;
          const bool new_ground = spells_[p.id + "@" + w.ground]++ == 0;
          const bool new_opposition = spells_[p.id + "#" + w.opposition]++ == 0;
          w.wickets = new_ground || new_opposition ? 1 : 0;
          w.runs_conceded = rng_.between(25, 35);
        }
        break;
      case Profile::Nonlinear: {
        const bool hit =
            (w.bowling_hand == Hand::Left) != (w.match_time == MatchTime::DayNight);
        w.balls_bowled = 60;
        w.wickets = hit ? rng_.between(2, 3) : rng_.between(0, 1);
        w.runs_conceded = rng_.between(30, 60);
        break;
      }
      case Profile::Realistic: {
        w.balls_bowled = 6 * rng_.between(4, 10);
        w.wickets = std::min(10, rng_.poisson(1.1 * p.bowling_skill));
        const double per_ball = std::max(0.3, rng_.normal(0.85, 0.15));
        w.runs_conceded = static_cast<int>(std::lround(w.balls_bowled * per_ball));
        break;
      }
    }
  }

  FixtureConfig config_;
  Rng rng_;
  std::vector<Team> teams_;
  std::vector<bool> day_night_;
  std::map<std::string, int> appearances_;
  std::map<std::string, int> spells_;
  Fixture out_;
};

}  // namespace

Fixture generate_fixture(const FixtureConfig& config) {
  if (config.n_players < 22) throw PreconditionError("fixture needs at least 22 players");
  if (config.n_matches < 10) throw PreconditionError("fixture needs at least 10 matches");
  return Generator(config).run();
}

void write_fixture(const Fixture& f, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw DataError(fmt::format("cannot write '{}'", (dir / name).string()));
    return out;
  };
  {
    auto out = open("batting.csv");
    ingest::write_batting_csv(out, f.batting);
  }
  {
    auto out = open("bowling.csv");
    ingest::write_bowling_csv(out, f.bowling);
  }
  {
    auto out = open("rosters.csv");
    ingest::write_rosters_csv(out, f.rosters);
  }
}

}  // namespace crickpred::fixture
