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

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "crickpred/learners/entropy.hpp"
#include "crickpred/learners/model.hpp"
#include "crickpred/random.hpp"

using namespace crickpred;
using namespace crickpred::learn;

namespace {

// Entropy recomputed from raw labels, independently of the library.
double entropy_of_labels(const std::vector<int>& labels) {
  std::map<int, int> counts;
  for (int l : labels) counts[l]++;
  double h = 0.0;
  for (auto [l, c] : counts) {
    const double p = static_cast<double>(c) / labels.size();
    h -= p * std::log2(p);
  }
  return h;
}

Dataset random_mixed(std::size_t n, int classes, std::uint64_t seed, bool categorical = true) {
  Dataset d;
  d.schema.num_classes = classes;
  d.schema.features = {{"a", FeatureKind::Numeric, {}}, {"b", FeatureKind::Numeric, {}}};
  if (categorical) d.schema.features.push_back({"c", FeatureKind::Categorical, {"x", "y", "z"}});
  d.schema.features.push_back({"d", FeatureKind::Numeric, {}});
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = rng.between(1, classes);
    std::vector<double> v{rng.normal(label, 1.0), std::floor(rng.uniform(0, 6))};
    if (categorical) v.push_back(static_cast<double>(rng.below(3)));
    v.push_back(rng.uniform(-1, 1));
    d.rows.push_back({v, label, {}, false});
  }
  return d;
}

Dataset xor_grid(std::uint64_t seed, std::size_t n) {
  Dataset d;
  d.schema.num_classes = 2;
  d.schema.features = {{"u", FeatureKind::Numeric, {}}, {"v", FeatureKind::Numeric, {}}};
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.between(0, 9), v = rng.between(0, 9);
    d.rows.push_back({{u, v}, ((u < 5) != (v < 5)) ? 2 : 1, {}, false});
  }
  return d;
}

double accuracy(const TrainedModel& m, const Dataset& d) {
  std::size_t ok = 0;
  for (const auto& r : d.rows) ok += m.predict(r.values).label == r.label;
  return static_cast<double>(ok) / d.size();
}

}  // namespace

TEST_CASE("entropy examples and bounds") {
  const std::vector<double> even{5, 5}, pure{10, 0}, nine_five{9, 5};
  CHECK(entropy(even) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(entropy(pure) == 0.0);
  CHECK(std::abs(entropy(nine_five) - 0.9403) <= 1e-4);
  const std::vector<double> zero{0, 0};
  CHECK_THROWS_AS(entropy(zero), AllZero);
  Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    const std::size_t m = static_cast<std::size_t>(rng.between(2, 6));
    std::vector<double> c(m);
    for (auto& x : c) x = rng.between(0, 20);
    c[0] += 1;
    const double h = entropy(c);
    CHECK(h >= 0.0);
    CHECK(h <= std::log2(static_cast<double>(m)) + 1e-12);
  }
  const std::vector<double> uniform{3, 3, 3, 3};
  CHECK(entropy(uniform) == doctest::Approx(2.0));
}

TEST_CASE("partition scores") {
  const auto halves = score_partition({{3, 1}, {1, 3}});
  CHECK(halves.split_info == doctest::Approx(1.0));
  const auto perfect = score_partition({{4, 0}, {0, 6}});
  CHECK(perfect.gain == doctest::Approx(entropy(std::vector<double>{4, 6})));
  CHECK(perfect.gain_ratio == doctest::Approx(perfect.gain / perfect.split_info));
  CHECK_THROWS_AS(score_partition({{4, 0}, {0, 0}}), DegenerateSplit);
  CHECK_THROWS_AS(score_partition({{4, 2}}), DegenerateSplit);
}

TEST_CASE("gain and gain ratio match a brute-force recount") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = random_mixed(static_cast<std::size_t>(rng.between(4, 60)), rng.between(2, 5), rng.next());
    for (std::size_t f = 0; f < d.schema.size(); ++f) {
      const bool cat = d.schema.features[f].kind == FeatureKind::Categorical;
      std::vector<double> cuts;
      if (cat) {
        cuts.push_back(0.0);
      } else {
        std::vector<double> vals;
        for (const auto& r : d.rows) vals.push_back(r.values[f]);
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        for (std::size_t i = 1; i < vals.size(); ++i) cuts.push_back((vals[i - 1] + vals[i]) / 2);
      }
      for (double cut : cuts) {
        std::map<double, std::vector<int>> parts;
        std::vector<int> all;
        for (const auto& r : d.rows) {
          const double key = cat ? r.values[f] : (r.values[f] <= cut ? 0.0 : 1.0);
          parts[key].push_back(r.label);
          all.push_back(r.label);
        }
        if (parts.size() < 2) {
          if (!cat) CHECK_THROWS_AS(gain_and_ratio(d, f, {CandidateSplit::Kind::Threshold, cut}), DegenerateSplit);
          continue;
        }
        double child = 0.0, split_info = 0.0;
        for (const auto& [k, labels] : parts) {
          const double w = static_cast<double>(labels.size()) / all.size();
          child += w * entropy_of_labels(labels);
          split_info -= w * std::log2(w);
        }
        const double gain = entropy_of_labels(all) - child;
        const auto s = gain_and_ratio(
            d, f, {cat ? CandidateSplit::Kind::Multiway : CandidateSplit::Kind::Threshold, cut});
        CHECK(std::abs(s.gain - gain) <= 1e-9);
        CHECK(std::abs(s.split_info - split_info) <= 1e-9);
        CHECK(std::abs(s.gain_ratio - gain / split_info) <= 1e-9);
        CHECK(s.gain >= -1e-12);
      }
    }
  }
}

TEST_CASE("gini impurity") {
  CHECK(gini(std::vector<double>{5, 5}) == doctest::Approx(0.5));
  CHECK(gini(std::vector<double>{7, 0}) == 0.0);
}

TEST_CASE("a pure dataset trains a single leaf") {
  auto d = random_mixed(30, 3, 43);
  for (auto& r : d.rows) r.label = 2;
  const auto t = train_c45(d);
  REQUIRE(t.nodes.size() == 1);
  CHECK(t.distribution(d.rows[0].values) == std::vector<double>{0, 1, 0});
  const auto m = train(LearnerKind::Tree, d);
  const auto p = m.predict(d.rows[3].values);
  CHECK(p.label == 2);
  CHECK(p.probabilities[1] == 1.0);
}

TEST_CASE("a constant feature is never chosen") {
  auto d = random_mixed(200, 3, 44, false);
  for (auto& r : d.rows) r.values[1] = 4.0;
  const auto t = train_c45(d);
  CHECK(t.nodes.size() > 1);
  for (const auto& n : t.nodes)
    if (n.kind != TreeNode::Kind::Leaf) CHECK(n.feature != 1);
}

TEST_CASE("tree nodes are well formed") {
  const auto d = random_mixed(300, 4, 45);
  for (const auto& t : {train_c45(d), train_cart(d)}) {
    for (const auto& n : t.nodes) {
      CHECK(std::accumulate(n.distribution.begin(), n.distribution.end(), 0.0) == doctest::Approx(1.0));
      if (n.kind != TreeNode::Kind::Leaf) {
        std::size_t live = 0;
        for (int c : n.children) live += c >= 0;
        CHECK(live >= 2);
      }
    }
  }
  C45Config shallow;
  shallow.max_depth = 2;
  CHECK(train_c45(d, shallow).depth() <= 2);
}

TEST_CASE("trees learn an interaction on a grid") {
  const auto train_set = xor_grid(46, 400), test_set = xor_grid(47, 200);
  CHECK(accuracy(train(LearnerKind::Tree, train_set), test_set) == 1.0);
  CHECK(accuracy(train(LearnerKind::Forest, train_set), test_set) >= 0.98);
}

TEST_CASE("tree predictions are invariant under increasing transforms") {
  const auto base = random_mixed(300, 3, 48);
  auto transformed = base;
  auto f = [](double x) { return std::exp(x / 3.0) * 10.0 - 4.0; };
  for (auto& r : transformed.rows) {
    r.values[0] = f(r.values[0]);
    r.values[1] = f(r.values[1]);
  }
  const auto a = train(LearnerKind::Tree, base), b = train(LearnerKind::Tree, transformed);
  for (std::size_t i = 0; i < base.size(); ++i) {
    CHECK(a.predict(base.rows[i].values).probabilities ==
          b.predict(transformed.rows[i].values).probabilities);
  }
}

TEST_CASE("a one-tree forest without bootstrap is CART") {
  const auto d = random_mixed(250, 3, 49);
  ForestConfig fc;
  fc.n_trees = 1;
  fc.mtry = static_cast<int>(d.schema.size());
  fc.bootstrap = false;
  const auto forest = train_forest(d, fc);
  const auto cart = train_cart(d);
  const auto probe = random_mixed(500, 3, 50);
  for (const auto& r : probe.rows)
    CHECK(argmax(forest.predict_proba(r.values)) == argmax(cart.distribution(r.values)));
}

TEST_CASE("forest votes become probabilities") {
  auto leaf = [](std::vector<double> dist) {
    Tree t;
    t.num_classes = 2;
    TreeNode n;
    n.distribution = std::move(dist);
    t.nodes.push_back(n);
    return t;
  };
  Forest f;
  f.trees = {leaf({0.9, 0.1}), leaf({0.6, 0.4}), leaf({0.2, 0.8})};
  const auto p = f.predict_proba({0.0});
  CHECK(p[0] == doctest::Approx(2.0 / 3));
  CHECK(p[1] == doctest::Approx(1.0 / 3));
  CHECK(argmax(p) == 0);
}

TEST_CASE("forests are independent of the thread count") {
  const auto d = random_mixed(300, 3, 51);
  ForestConfig a;
  a.n_trees = 20;
  a.seed = 5;
  auto b = a;
  b.jobs = 4;
  CHECK(train_forest(d, a) == train_forest(d, b));
  auto c = a;
  c.seed = 6;
  CHECK_FALSE(train_forest(d, a) == train_forest(d, c));
  CHECK(default_mtry(20) == 5);
  CHECK(default_mtry(10) == 4);
}

TEST_CASE("naive bayes without features predicts the prior") {
  Dataset d;
  d.schema.num_classes = 2;
  for (int i = 0; i < 6; ++i) d.rows.push_back({{}, i < 4 ? 1 : 2, {}, false});
  const auto m = train(LearnerKind::NaiveBayes, d);
  const auto p = m.predict({});
  CHECK(p.label == 1);
  CHECK(p.probabilities[0] == doctest::Approx(2.0 / 3).epsilon(1e-12));
}

TEST_CASE("naive bayes on a six-row categorical dataset") {
  auto make = [](int per_class) {
    Dataset d;
    d.schema.num_classes = 2;
    d.schema.features = {{"t", FeatureKind::Categorical, {"a", "b"}}};
    for (int i = 0; i < per_class; ++i) {
      d.rows.push_back({{0.0}, 1, {}, false});
      d.rows.push_back({{1.0}, 2, {}, false});
    }
    return d;
  };
  // P(a|1) = (3+1)/(3+2) = 0.8 and P(a|2) = (0+1)/(3+2) = 0.2 with equal
  // priors, so P(1|a) = 0.8 / (0.8 + 0.2).
  const auto nb = train_naive_bayes(make(3));
  const auto p = nb.predict_proba({0.0});
  CHECK(std::abs(p[0] - 0.8) <= 1e-12);
  CHECK(std::abs(p[1] - 0.2) <= 1e-12);
  // An unseen token scores 1/5 in both classes.
  const auto u = nb.predict_proba({kUnknownToken});
  CHECK(u[0] == doctest::Approx(0.5));
  double prev = 0.8;
  for (int n : {10, 100, 1000}) {
    const double q = train_naive_bayes(make(n)).predict_proba({0.0})[0];
    CHECK(q > prev);
    CHECK(q == doctest::Approx((n + 1.0) / (n + 2.0)));
    prev = q;
  }
  CHECK(prev > 0.99);
}

TEST_CASE("naive bayes gaussian likelihoods match a hand computation") {
  Dataset d;
  d.schema.num_classes = 2;
  d.schema.features = {{"x", FeatureKind::Numeric, {}}};
  for (double x : {1.0, 2.0, 3.0}) d.rows.push_back({{x}, 1, {}, false});
  for (double x : {5.0, 7.0}) d.rows.push_back({{x}, 2, {}, false});
  const auto nb = train_naive_bayes(d);
  auto log_normal = [](double x, double mu, double var) {
    return -0.5 * std::log(2 * M_PI * var) - (x - mu) * (x - mu) / (2 * var);
  };
  const double x = 4.0;
  const double s1 = std::log(3.0 / 5) + log_normal(x, 2.0, 2.0 / 3);
  const double s2 = std::log(2.0 / 5) + log_normal(x, 6.0, 1.0);
  const auto p = nb.predict_proba({x});
  CHECK(p[0] == doctest::Approx(std::exp(s1) / (std::exp(s1) + std::exp(s2))).epsilon(1e-12));
}

TEST_CASE("naive bayes posteriors sum to one and the argmax ignores a common factor") {
  const auto d = random_mixed(400, 4, 52);
  const auto nb = train_naive_bayes(d);
  const auto probe = random_mixed(300, 4, 53);
  for (const auto& r : probe.rows) {
    const auto p = nb.predict_proba(r.values);
    CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) <= 1e-9);
    auto scores = nb.log_scores(r.values);
    for (auto& s : scores) s += std::log(1e-30);
    CHECK(argmax(softmax(scores)) == argmax(p));
  }
}

TEST_CASE("svm separates separable data with feasible multipliers") {
  Dataset d;
  d.schema.num_classes = 2;
  d.schema.features = {{"x", FeatureKind::Numeric, {}}, {"y", FeatureKind::Numeric, {}}};
  Rng rng(54);
  for (int i = 0; i < 80; ++i) {
    const int label = i % 2 + 1;
    const double off = label == 1 ? -2.0 : 2.0;
    d.rows.push_back({{off + rng.normal(0, 0.5), off + rng.normal(0, 0.5)}, label, {}, false});
  }
  SvmConfig cfg;
  cfg.C = 10.0;
  const auto svm = train_svm(d, cfg);
  CHECK(svm.converged());
  for (const auto& r : d.rows) CHECK(svm.predict(r.values) == r.label);

  Svm shape;
  shape.encoder = SvmEncoder::fit(d);
  shape.gamma = 1.0 / static_cast<double>(shape.encoder.encoded_width);
  std::vector<std::vector<double>> rows;
  std::vector<int> y;
  for (const auto& r : d.rows) {
    rows.push_back(shape.encoder.transform(r.values));
    y.push_back(r.label == 1 ? 1 : -1);
  }
  const auto sol = solve_binary(shape, rows, y, cfg);
  CHECK(sol.converged);
  double balance = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(sol.alpha[i] >= 0.0);
    CHECK(sol.alpha[i] <= cfg.C);
    balance += sol.alpha[i] * y[i];
  }
  CHECK(std::abs(balance) <= 1e-6);
  // KKT conditions within the stopping tolerance.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double f = -sol.rho;
    for (std::size_t j = 0; j < rows.size(); ++j)
      f += sol.alpha[j] * y[j] * shape.kernel(rows[i].data(), rows[j].data());
    const double margin = y[i] * f;
    if (sol.alpha[i] <= 0.0) CHECK(margin >= 1.0 - cfg.tol);
    else if (sol.alpha[i] >= cfg.C) CHECK(margin <= 1.0 + cfg.tol);
    else CHECK(std::abs(margin - 1.0) <= cfg.tol);
  }
}

TEST_CASE("duplicating every row leaves a hard-margin svm unchanged") {
  const auto d = xor_grid(55, 60);
  auto doubled = d;
  doubled.rows.insert(doubled.rows.end(), d.rows.begin(), d.rows.end());
  SvmConfig cfg;
  cfg.C = 1e6;
  cfg.gamma = 2.0;
  cfg.tol = 1e-9;
  const auto a = train_svm(d, cfg), b = train_svm(doubled, cfg);
  for (const auto& r : d.rows) CHECK(a.predict(r.values) == r.label);
  for (double u = -1; u <= 10; u += 0.5)
    for (double v = -1; v <= 10; v += 0.5) {
      const auto da = a.decision_values({u, v}), db = b.decision_values({u, v});
      CHECK(std::abs(da[0] - db[0]) <= 1e-6);
    }
}

TEST_CASE("svm handles three classes and categorical inputs") {
  const auto d = random_mixed(300, 3, 56);
  const auto m = train(LearnerKind::Svm, d);
  const auto& svm = std::get<Svm>(m.payload);
  CHECK(svm.machines.size() == 3);
  CHECK(svm.encoder.encoded_width == 6);
  CHECK(svm.gamma == doctest::Approx(1.0 / 6));
  for (const auto& r : random_mixed(50, 3, 57).rows) {
    const auto p = m.predict(r.values);
    CHECK(std::abs(std::accumulate(p.probabilities.begin(), p.probabilities.end(), 0.0) - 1.0) <= 1e-9);
    CHECK(p.probabilities[static_cast<std::size_t>(p.label - 1)] ==
          *std::max_element(p.probabilities.begin(), p.probabilities.end()));
  }
}

TEST_CASE("learners reject missing values and empty data") {
  auto d = random_mixed(20, 2, 58);
  for (const auto kind : kAllLearners) {
    CHECK_THROWS_AS(train(kind, Dataset{d.schema, {}}), EmptyDataset);
    auto bad = d;
    bad.rows[3].values[0] = kMissing;
    CHECK_THROWS_AS(train(kind, bad), PreconditionError);
  }
  const auto m = train(LearnerKind::Tree, d);
  CHECK_THROWS_AS(m.predict({1.0}), SchemaMismatch);
  auto other = d.schema;
  other.features[0].name = "renamed";
  CHECK_THROWS_AS(m.predict(other, d.rows[0].values), SchemaMismatch);
}

TEST_CASE("models fill missing inputs from training statistics") {
  const auto d = random_mixed(200, 3, 59);
  const auto m = train(LearnerKind::NaiveBayes, d);
  std::vector<double> row(d.schema.size(), kMissing);
  const auto p = m.predict(row);
  CHECK(m.predict(m.fill_values).probabilities == p.probabilities);
}

TEST_CASE("saved models reload and predict bit-identically") {
  const auto d = random_mixed(300, 3, 60);
  const auto probe = random_mixed(1000, 3, 61);
  for (const auto kind : kAllLearners) {
    LearnerConfig cfg;
    cfg.forest.n_trees = 15;
    const auto m = train(kind, d, cfg);
    std::stringstream ss;
    save_model(ss, m);
    const auto back = load_model(ss);
    CHECK(back.kind == kind);
    CHECK(back.schema == m.schema);
    for (const auto& r : probe.rows) {
      const auto a = m.predict(r.values), b = back.predict(r.values);
      CHECK(a.label == b.label);
      CHECK(a.probabilities == b.probabilities);
    }
  }
}

TEST_CASE("corrupt and mismatched model files are rejected") {
  const auto m = train(LearnerKind::Tree, random_mixed(50, 2, 62));
  std::stringstream ss;
  save_model(ss, m);
  const std::string text = ss.str();
  {
    std::istringstream in(text.substr(0, text.size() / 2));
    CHECK_THROWS_AS(load_model(in), DeserializeError);
  }
  {
    std::istringstream in("not json");
    CHECK_THROWS_AS(load_model(in), DeserializeError);
  }
  auto doc = nlohmann::json::parse(text);
  {
    auto v = doc;
    v["version"] = kModelVersion + 1;
    std::istringstream in(v.dump());
    CHECK_THROWS_AS(load_model(in), VersionError);
  }
  {
    auto v = doc;
    v["fingerprint"] = "0000000000000000";
    std::istringstream in(v.dump());
    CHECK_THROWS_AS(load_model(in), DeserializeError);
  }
  {
    auto v = doc;
    v["format"] = "something-else";
    std::istringstream in(v.dump());
    CHECK_THROWS_AS(load_model(in), DeserializeError);
  }
}
