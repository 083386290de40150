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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "crickpred/features.hpp"
#include "crickpred/fixture.hpp"
#include "crickpred/learners/model.hpp"

using namespace crickpred;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name)
      : path(std::filesystem::temp_directory_path() / ("crickpred_" + name + "_" + std::to_string(::getpid()))) {
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("the same seed writes byte-identical files") {
  TempDir a("fixture_a"), b("fixture_b");
  const fixture::FixtureConfig cfg{.seed = 9, .n_players = 22, .n_matches = 30};
  fixture::write_fixture(fixture::generate_fixture(cfg), a.path);
  fixture::write_fixture(fixture::generate_fixture(cfg), b.path);
  for (const char* name : {"batting.csv", "bowling.csv", "rosters.csv"}) {
    const auto x = slurp(a.path / name);
    CHECK_FALSE(x.empty());
    CHECK(x == slurp(b.path / name));
  }
  auto other = cfg;
  other.seed = 10;
  TempDir c("fixture_c");
  fixture::write_fixture(fixture::generate_fixture(other), c.path);
  CHECK(slurp(a.path / "batting.csv") != slurp(c.path / "batting.csv"));
}

TEST_CASE("fixture preconditions") {
  CHECK_THROWS_AS(fixture::generate_fixture({.n_players = 21}), PreconditionError);
  CHECK_THROWS_AS(fixture::generate_fixture({.n_players = 22, .n_matches = 9}), PreconditionError);
}

TEST_CASE("every fixture profile yields valid records") {
  for (const auto profile : {fixture::Profile::Separable, fixture::Profile::Nonlinear, fixture::Profile::Realistic}) {
    const auto f = fixture::generate_fixture({.seed = 2, .n_players = 44, .n_matches = 20, .profile = profile});
    CHECK(f.batting.size() == 20u * 22u);
    for (const auto& b : f.batting) {
      CHECK(b.position >= 1);
      CHECK(b.position <= 11);
      CHECK(b.runs >= 0);
    }
    for (const auto& b : f.bowling) {
      CHECK(b.wickets >= 0);
      CHECK(b.wickets <= 10);
    }
    CHECK(fixture::parse_profile(fixture::to_string(profile)) == profile);
  }
}

TEST_CASE("realistic runs labels are dominated by class 1") {
  const auto f = fixture::generate_fixture({.seed = 1, .n_players = 110, .n_matches = 230});
  REQUIRE(f.batting.size() >= 5000);
  std::size_t class1 = 0;
  for (const auto& b : f.batting) class1 += features::encode_runs_label(b.runs) == 1;
  CHECK(static_cast<double>(class1) / f.batting.size() > 0.5);
}

TEST_CASE("a depth-3 tree fits the separable fixture exactly") {
  for (const auto target : {features::Target::Runs, features::Target::Wickets}) {
    const auto f = fixture::generate_fixture(
        {.seed = 1, .n_players = 22, .n_matches = 230, .profile = fixture::Profile::Separable});
    ingest::History h(f.batting, f.bowling);
    ingest::RosterBook book(f.rosters);
    const auto d = impute(features::build_dataset(h, book, target, features::WeightVectors::defaults()),
                          ImputeSource::TrainingFold);
    learn::LearnerConfig cfg;
    cfg.tree.max_depth = 3;
    const auto model = learn::train(learn::LearnerKind::Tree, d, cfg);
    CHECK(std::get<learn::Tree>(model.payload).depth() <= 3);
    std::size_t correct = 0;
    for (const auto& r : d.rows) correct += model.predict(r.values).label == r.label;
    CHECK(correct == d.size());
  }
}

TEST_CASE("the nonlinear label is the exclusive-or of hand and day/night") {
  const auto f = fixture::generate_fixture(
      {.seed = 4, .n_players = 22, .n_matches = 50, .profile = fixture::Profile::Nonlinear});
  for (const auto& b : f.batting) {
    const bool xor_bit = (b.batting_hand == Hand::Left) != (b.match_time == MatchTime::DayNight);
    CHECK(features::encode_runs_label(b.runs) == (xor_bit ? 3 : 1));
  }
  std::size_t dn = 0;
  std::set<std::string> dates;
  for (const auto& b : f.batting)
    if (dates.insert(b.match_date.iso() + b.ground).second) dn += b.match_time == MatchTime::DayNight;
  CHECK(dn == 30);
}
