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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "crickpred/evaluate.hpp"
#include "crickpred/features.hpp"
#include "crickpred/fixture.hpp"
#include "crickpred/random.hpp"

using namespace crickpred;
using namespace crickpred::eval;

namespace {

Dataset labelled(const std::vector<std::size_t>& counts) {
  Dataset d;
  d.schema.num_classes = static_cast<int>(counts.size());
  d.schema.features = {{"x", FeatureKind::Numeric, {}}};
  int day = 0;
  for (std::size_t c = 0; c < counts.size(); ++c)
    for (std::size_t i = 0; i < counts[c]; ++i) {
      Example e{{static_cast<double>(day)}, static_cast<int>(c + 1), {}, false};
      e.provenance = {"p" + std::to_string(day % 7), Date::from_days(15000 + (day * 37) % 500), 0};
      d.rows.push_back(e);
      ++day;
    }
  return d;
}

Dataset small_fixture_dataset(features::Target t) {
  const auto f = fixture::generate_fixture({.seed = 3, .n_players = 22, .n_matches = 60});
  ingest::History h(f.batting, f.bowling);
  ingest::RosterBook book(f.rosters);
  return features::build_dataset(h, book, t, features::WeightVectors::defaults());
}

}  // namespace

TEST_CASE("stratified split keeps class proportions") {
  const auto d = labelled({60, 40});
  const auto s = split_indices(d, {0.6, SplitStrategy::Stratified, 1});
  std::size_t c1 = 0, c2 = 0;
  for (auto i : s.train) (d.rows[i].label == 1 ? c1 : c2)++;
  CHECK(std::abs(static_cast<long>(c1) - 36) <= 1);
  CHECK(std::abs(static_cast<long>(c2) - 24) <= 1);
  std::vector<std::size_t> all = s.train;
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> expected(d.size());
  std::iota(expected.begin(), expected.end(), std::size_t{0});
  CHECK(all == expected);
  CHECK(std::is_sorted(s.train.begin(), s.train.end()));
  const auto again = split_indices(d, {0.6, SplitStrategy::Stratified, 1});
  CHECK(again.train == s.train);
  const auto other = split_indices(d, {0.6, SplitStrategy::Stratified, 2});
  CHECK(other.train != s.train);
}

TEST_CASE("stratified split needs two rows per present class") {
  CHECK_THROWS_AS(split_indices(labelled({10, 1}), {0.9, SplitStrategy::Stratified, 1}), TooFewRows);
  const auto s = split_indices(labelled({10, 0, 2}), {0.9, SplitStrategy::Stratified, 1});
  CHECK(s.train.size() + s.test.size() == 12);
  CHECK_THROWS_AS(split_indices(labelled({10, 10}), {1.0, SplitStrategy::Stratified, 1}), PreconditionError);
}

TEST_CASE("chronological split puts later matches in the test fold") {
  const auto d = labelled({50, 50});
  const auto s = split_indices(d, {0.9, SplitStrategy::Chronological, 1});
  CHECK(s.train.size() == 90);
  Date latest_train = Date::from_days(0);
  for (auto i : s.train) latest_train = std::max(latest_train, d.rows[i].provenance.match_date);
  for (auto i : s.test) CHECK(d.rows[i].provenance.match_date >= latest_train);
}

TEST_CASE("confusion matrix counts") {
  const std::vector<int> truth{1, 1, 2, 3, 3, 3};
  const auto perfect = confusion(3, truth, truth);
  CHECK(perfect.total() == 6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) CHECK(perfect.counts[i][j] == 0);
  const auto constant = confusion(3, truth, std::vector<int>(6, 2));
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(constant.counts[i][0] == 0);
    CHECK(constant.counts[i][2] == 0);
  }
  CHECK(constant.counts[2][1] == 3);
  CHECK_THROWS_AS(confusion(3, truth, {1, 2}), ShapeMismatch);
}

TEST_CASE("hand-counted auroc") {
  CHECK(auroc_binary({0.9, 0.8, 0.7, 0.6}, {true, false, true, false}) == 0.75);
  CHECK(auroc_binary({0.9, 0.8, 0.7, 0.6}, {true, true, false, false}) == 1.0);
  CHECK(auroc_binary({0.5, 0.5}, {true, false}) == 0.5);
  CHECK_THROWS_AS(auroc_binary({0.5, 0.4}, {true, true}), PreconditionError);
}

TEST_CASE("auroc is invariant under increasing score transforms") {
  Rng rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> s(40), t(40);
    std::vector<bool> y(40);
    for (std::size_t i = 0; i < 40; ++i) {
      s[i] = std::round(rng.uniform() * 10) / 10;
      t[i] = std::exp(3 * s[i]) - 7;
      y[i] = i % 3 == 0;
    }
    CHECK(auroc_binary(s, y) == auroc_binary(t, y));
  }
}

TEST_CASE("single-row rmse") {
  const std::vector<int> truth{1};
  const auto m = metrics(confusion(2, truth, {1}), {{0.6, 0.4}}, truth);
  CHECK(m.rmse == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("perfect predictions") {
  const std::vector<int> truth{1, 2, 3, 2, 1, 3};
  std::vector<std::vector<double>> proba;
  for (int t : truth) {
    std::vector<double> p(3, 0.0);
    p[static_cast<std::size_t>(t - 1)] = 1.0;
    proba.push_back(p);
  }
  const auto m = metrics(confusion(3, truth, truth), proba, truth);
  CHECK(m.accuracy == 1.0);
  CHECK(m.f1 == 1.0);
  CHECK(m.auroc == 1.0);
  CHECK(m.rmse == 0.0);
  CHECK_THROWS_AS(metrics(confusion(3, truth, truth), {{1, 0, 0}}, truth), ShapeMismatch);
}

TEST_CASE("weighted metrics match an independent computation") {
  Rng rng(72);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = rng.between(2, 5);
    const std::size_t n = static_cast<std::size_t>(rng.between(5, 80));
    std::vector<int> truth(n), pred(n);
    std::vector<std::vector<double>> proba(n, std::vector<double>(static_cast<std::size_t>(m)));
    for (std::size_t i = 0; i < n; ++i) {
      truth[i] = rng.between(1, m);
      for (auto& p : proba[i]) p = rng.uniform();
      const double s = std::accumulate(proba[i].begin(), proba[i].end(), 0.0);
      for (auto& p : proba[i]) p /= s;
      pred[i] = static_cast<int>(std::max_element(proba[i].begin(), proba[i].end()) - proba[i].begin()) + 1;
    }
    const auto got = metrics(confusion(m, truth, pred), proba, truth);
    double precision = 0, recall = 0, f1 = 0, correct = 0, sq = 0;
    for (int c = 1; c <= m; ++c) {
      double tp = 0, fp = 0, fn = 0;
      for (std::size_t i = 0; i < n; ++i) {
        tp += truth[i] == c && pred[i] == c;
        fp += truth[i] != c && pred[i] == c;
        fn += truth[i] == c && pred[i] != c;
      }
      const double support = tp + fn;
      const double p = tp + fp > 0 ? tp / (tp + fp) : 0.0;
      const double r = support > 0 ? tp / support : 0.0;
      const double f = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
      precision += support * p / n;
      recall += support * r / n;
      f1 += support * f / n;
    }
    for (std::size_t i = 0; i < n; ++i) {
      correct += truth[i] == pred[i];
      for (int c = 1; c <= m; ++c) {
        const double e = proba[i][static_cast<std::size_t>(c - 1)] - (truth[i] == c ? 1.0 : 0.0);
        sq += e * e;
      }
    }
    CHECK(got.accuracy == doctest::Approx(correct / n).epsilon(1e-12));
    CHECK(got.recall == doctest::Approx(got.accuracy).epsilon(1e-12));
    CHECK(got.precision == doctest::Approx(precision).epsilon(1e-12));
    CHECK(got.recall == doctest::Approx(recall).epsilon(1e-12));
    CHECK(got.f1 == doctest::Approx(f1).epsilon(1e-12));
    CHECK(got.rmse == doctest::Approx(std::sqrt(sq / (n * m))).epsilon(1e-12));
    for (double v : {got.accuracy, got.precision, got.recall, got.f1, got.auroc, got.rmse}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("a uniform random predictor scores about 1/m") {
  Rng rng(73);
  const std::size_t n = 10000;
  std::vector<int> truth(n), pred(n);
  std::vector<std::vector<double>> proba(n, std::vector<double>(5, 0.2));
  for (std::size_t i = 0; i < n; ++i) {
    truth[i] = static_cast<int>(i % 5) + 1;
    pred[i] = rng.between(1, 5);
  }
  const auto m = metrics(confusion(5, truth, pred), proba, truth);
  CHECK(std::abs(m.accuracy - 0.2) <= 0.03);
  CHECK(m.auroc == doctest::Approx(0.5));
}

TEST_CASE("split cells impute and oversample the training fold only") {
  const auto d = small_fixture_dataset(features::Target::Runs);
  REQUIRE(d.missing_count() > 0);
  const auto p = prepare_split(d, {0.8, SplitStrategy::Stratified, 4}, true, {.k = 5, .seed = 4});
  const auto train_fold = d.subset(p.indices.train);
  const auto stats = fit_imputation(train_fold);
  CHECK(p.stats.global.size() == stats.global.size());
  for (std::size_t f = 0; f < stats.global.size(); ++f) CHECK(p.stats.global[f] == stats.global[f]);
  CHECK(p.test.size() == p.indices.test.size());
  CHECK(p.test.missing_count() == 0);
  CHECK(p.train.missing_count() == 0);
  for (const auto& r : p.test.rows) CHECK_FALSE(r.synthetic);
  std::size_t synthetic = 0;
  for (const auto& r : p.train.rows) synthetic += r.synthetic;
  CHECK(synthetic == p.synthetic_trace.size());
  for (const auto& rec : p.synthetic_trace) {
    CHECK(rec.base < p.indices.train.size());
    CHECK(rec.neighbor < p.indices.train.size());
  }
  const auto model = learn::train(learn::LearnerKind::NaiveBayes, p.train);
  const auto ev = evaluate_model(model, p.test);
  const auto test_counts = p.test.class_counts();
  for (std::size_t t = 0; t < test_counts.size(); ++t) {
    long row = 0;
    for (long v : ev.confusion.counts[t]) row += v;
    CHECK(row == static_cast<long>(test_counts[t]));
  }
  const auto counts = p.train.class_counts();
  const auto top = *std::max_element(counts.begin(), counts.end());
  for (auto c : counts) CHECK((c == 0 || c == top));
}

TEST_CASE("experiments fill the learner by split grid and round-trip") {
  const auto d = small_fixture_dataset(features::Target::Wickets);
  ExperimentConfig cfg;
  cfg.learner_cfg.forest.n_trees = 10;
  std::size_t progress_calls = 0;
  const auto r = run_experiment(d, cfg, [&](const CellResult&) { ++progress_calls; });
  CHECK(r.cells.size() == 16);
  CHECK(progress_calls == 16);
  CHECK(r.learners().size() == 4);
  CHECK(r.splits() == std::vector<double>{0.6, 0.7, 0.8, 0.9});
  for (const auto& c : r.cells) CHECK(c.confusion.total() == c.test_rows);
  CHECK(r.best(learn::LearnerKind::Forest) != nullptr);
  CHECK(r.find(learn::LearnerKind::Svm, 0.7) != nullptr);

  std::stringstream ss;
  write_report_csv(ss, r);
  const auto back = read_report_csv(ss);
  REQUIRE(back.cells.size() == r.cells.size());
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    CHECK(back.cells[i].learner == r.cells[i].learner);
    CHECK(back.cells[i].train_fraction == r.cells[i].train_fraction);
    CHECK(back.cells[i].metrics == r.cells[i].metrics);
    CHECK(back.cells[i].confusion == r.cells[i].confusion);
    CHECK(back.cells[i].synthetic_rows == r.cells[i].synthetic_rows);
  }
  const auto text = format_report(r, {"0-1", "2-3", "4+"});
  for (const char* s : {"Naive Bayes", "Random Forest", "SVM", "60/40", "90/10", "AUROC", "RMSE"})
    CHECK(text.find(s) != std::string::npos);
  const auto again = run_experiment(d, cfg);
  std::stringstream s2;
  write_report_csv(s2, again);
  CHECK(s2.str() == ss.str());
}

TEST_CASE("experiment options select learners and splits") {
  const auto d = small_fixture_dataset(features::Target::Wickets);
  ExperimentConfig cfg;
  cfg.learners = {learn::LearnerKind::Forest, learn::LearnerKind::NaiveBayes};
  cfg.splits = {0.9};
  cfg.smote = false;
  cfg.learner_cfg.forest.n_trees = 5;
  const auto r = run_experiment(d, cfg);
  CHECK(r.cells.size() == 2);
  for (const auto& c : r.cells) CHECK(c.synthetic_rows == 0);
  CHECK(split_label(0.6) == "60/40");
  CHECK(parse_strategy("chronological") == SplitStrategy::Chronological);
  CHECK_FALSE(parse_strategy("random-ish"));
}
