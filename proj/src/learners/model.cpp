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

#include "crickpred/learners/model.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>
#include <json.hpp>

namespace crickpred::learn {

using nlohmann::json;

std::string_view to_string(LearnerKind k) {
  switch (k) {
    case LearnerKind::NaiveBayes: return "nb";
    case LearnerKind::Tree: return "tree";
    case LearnerKind::Forest: return "forest";
    case LearnerKind::Svm: return "svm";
  }
  return {};
}

std::string_view display_name(LearnerKind k) {
  switch (k) {
    case LearnerKind::NaiveBayes: return "Naive Bayes";
    case LearnerKind::Tree: return "Decision Tree";
    case LearnerKind::Forest: return "Random Forest";
    case LearnerKind::Svm: return "SVM";
  }
  return {};
}

std::optional<LearnerKind> parse_learner(std::string_view s) {
  for (auto k : kAllLearners) {
    if (s == to_string(k)) return k;
  }
  if (s == "naive_bayes") return LearnerKind::NaiveBayes;
  if (s == "random_forest") return LearnerKind::Forest;
  return std::nullopt;
}

Prediction TrainedModel::predict(const std::vector<double>& values) const {
  require_row(schema, values);
  std::vector<double> row = values;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (is_missing(row[j])) row[j] = j < fill_values.size() ? fill_values[j] : 0.0;
  }
  Prediction p;
  std::visit(
      [&](const auto& model) {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, Tree>) {
          p.probabilities = model.distribution(row);
        } else {
          p.probabilities = model.predict_proba(row);
        }
        if constexpr (std::is_same_v<T, Svm>) {
          p.label = model.predict(row);
        } else {
          p.label = static_cast<int>(argmax(p.probabilities)) + 1;
        }
      },
      payload);
  return p;
}

Prediction TrainedModel::predict(const Schema& row_schema,
                                 const std::vector<double>& values) const {
  if (row_schema.fingerprint() != fingerprint()) {
    throw SchemaMismatch("row schema does not match the model's schema");
  }
  return predict(values);
}

TrainedModel train(LearnerKind kind, const Dataset& d, const LearnerConfig& cfg) {
  TrainedModel m;
  m.kind = kind;
  m.schema = d.schema;
  switch (kind) {
    case LearnerKind::NaiveBayes: m.payload = train_naive_bayes(d, cfg.naive_bayes); break;
    case LearnerKind::Tree: m.payload = train_c45(d, cfg.tree); break;
    case LearnerKind::Forest: m.payload = train_forest(d, cfg.forest); break;
    case LearnerKind::Svm: m.payload = train_svm(d, cfg.svm); break;
  }
  m.fill_values = fit_imputation(d).global;
  for (auto& v : m.fill_values) {
    if (is_missing(v)) v = 0.0;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double num(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw DeserializeError("expected a number");
}

json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::vector<double> nums(const json& j) {
  std::vector<double> v;
  for (const auto& x : j) v.push_back(num(x));
  return v;
}

json matrix(const std::vector<std::vector<double>>& m) {
  json a = json::array();
  for (const auto& r : m) a.push_back(nums(r));
  return a;
}

std::vector<std::vector<double>> matrix(const json& j) {
  std::vector<std::vector<double>> m;
  for (const auto& r : j) m.push_back(nums(r));
  return m;
}

json kinds_json(const std::vector<FeatureKind>& k) {
  json a = json::array();
  for (auto x : k) a.push_back(x == FeatureKind::Numeric ? "numeric" : "categorical");
  return a;
}

std::vector<FeatureKind> kinds_from(const json& j) {
  std::vector<FeatureKind> k;
  for (const auto& x : j) {
    const auto s = x.get<std::string>();
    if (s == "numeric") k.push_back(FeatureKind::Numeric);
    else if (s == "categorical") k.push_back(FeatureKind::Categorical);
    else throw DeserializeError(fmt::format("unknown feature kind '{}'", s));
  }
  return k;
}

json to_json(const Schema& s) {
  json f = json::array();
  for (const auto& spec : s.features) {
    f.push_back({{"name", spec.name},
                 {"kind", spec.kind == FeatureKind::Numeric ? "numeric" : "categorical"},
                 {"tokens", spec.tokens}});
  }
  return {{"features", f}, {"num_classes", s.num_classes}};
}

Schema schema_from(const json& j) {
  Schema s;
  s.num_classes = j.at("num_classes").get<int>();
  for (const auto& f : j.at("features")) {
    FeatureSpec spec;
    spec.name = f.at("name").get<std::string>();
    spec.kind = kinds_from(json::array({f.at("kind")})).front();
    spec.tokens = f.at("tokens").get<std::vector<std::string>>();
    s.features.push_back(std::move(spec));
  }
  s.validate();
  return s;
}

json to_json(const Tree& t) {
  json nodes = json::array();
  for (const auto& n : t.nodes) {
    nodes.push_back({{"k", static_cast<int>(n.kind)},
                     {"f", n.feature},
                     {"t", num(n.threshold)},
                     {"c", n.children},
                     {"d", nums(n.distribution)}});
  }
  return {{"num_classes", t.num_classes}, {"nodes", nodes}};
}

Tree tree_from(const json& j) {
  Tree t;
  t.num_classes = j.at("num_classes").get<int>();
  for (const auto& n : j.at("nodes")) {
    TreeNode node;
    const int k = n.at("k").get<int>();
    if (k < 0 || k > 3) throw DeserializeError("bad tree node kind");
    node.kind = static_cast<TreeNode::Kind>(k);
    node.feature = n.at("f").get<int>();
    node.threshold = num(n.at("t"));
    node.children = n.at("c").get<std::vector<int>>();
    node.distribution = nums(n.at("d"));
    t.nodes.push_back(std::move(node));
  }
  for (const auto& n : t.nodes) {
    for (int c : n.children) {
      if (c >= static_cast<int>(t.nodes.size())) throw DeserializeError("tree child out of range");
    }
    if (n.kind != TreeNode::Kind::Leaf && n.children.size() < 2) {
      throw DeserializeError("split node with fewer than two children");
    }
  }
  if (t.nodes.empty()) throw DeserializeError("tree has no nodes");
  return t;
}

json to_json(const Forest& f) {
  json trees = json::array();
  for (const auto& t : f.trees) trees.push_back(to_json(t));
  return {{"num_classes", f.num_classes}, {"trees", trees}};
}

json to_json(const NaiveBayes& nb) {
  json log_p = json::array();
  for (const auto& per_class : nb.log_p) log_p.push_back(matrix(per_class));
  return {{"num_classes", nb.num_classes}, {"kinds", kinds_json(nb.kinds)},
          {"log_prior", nums(nb.log_prior)}, {"mean", matrix(nb.mean)},
          {"variance", matrix(nb.variance)}, {"log_p", log_p},
          {"laplace", num(nb.laplace)}};
}

NaiveBayes naive_bayes_from(const json& j) {
  NaiveBayes nb;
  nb.num_classes = j.at("num_classes").get<int>();
  nb.kinds = kinds_from(j.at("kinds"));
  nb.log_prior = nums(j.at("log_prior"));
  nb.mean = matrix(j.at("mean"));
  nb.variance = matrix(j.at("variance"));
  for (const auto& per_class : j.at("log_p")) nb.log_p.push_back(matrix(per_class));
  nb.laplace = num(j.at("laplace"));
  return nb;
}

json to_json(const Svm& s) {
  json machines = json::array();
  for (const auto& m : s.machines) {
    machines.push_back({{"positive", m.positive}, {"negative", m.negative},
                        {"support", matrix(m.support)}, {"coef", nums(m.coef)},
                        {"rho", num(m.rho)}, {"iterations", m.iterations},
                        {"converged", m.converged}});
  }
  return {{"num_classes", s.num_classes},
          {"encoder",
           {{"kinds", kinds_json(s.encoder.kinds)},
            {"minimum", nums(s.encoder.minimum)},
            {"range", nums(s.encoder.range)},
            {"encoded_width", s.encoder.encoded_width}}},
          {"gamma", num(s.gamma)},
          {"C", num(s.C)},
          {"single_class", s.single_class},
          {"machines", machines}};
}

Svm svm_from(const json& j) {
  Svm s;
  s.num_classes = j.at("num_classes").get<int>();
  const auto& e = j.at("encoder");
  s.encoder.kinds = kinds_from(e.at("kinds"));
  s.encoder.minimum = nums(e.at("minimum"));
  s.encoder.range = nums(e.at("range"));
  s.encoder.encoded_width = e.at("encoded_width").get<std::size_t>();
  s.gamma = num(j.at("gamma"));
  s.C = num(j.at("C"));
  s.single_class = j.at("single_class").get<int>();
  for (const auto& m : j.at("machines")) {
    BinarySvm b;
    b.positive = m.at("positive").get<int>();
    b.negative = m.at("negative").get<int>();
    b.support = matrix(m.at("support"));
    b.coef = nums(m.at("coef"));
    b.rho = num(m.at("rho"));
    b.iterations = m.at("iterations").get<long>();
    b.converged = m.at("converged").get<bool>();
    if (b.coef.size() != b.support.size()) throw DeserializeError("SVM coefficient count mismatch");
    s.machines.push_back(std::move(b));
  }
  return s;
}

}  // namespace

void save_model(std::ostream& out, const TrainedModel& m) {
  json payload = std::visit([](const auto& p) { return to_json(p); }, m.payload);
  json doc = {{"format", kModelFormat},
              {"version", kModelVersion},
              {"learner", to_string(m.kind)},
              {"schema", to_json(m.schema)},
              {"fingerprint", fmt::format("{:016x}", m.fingerprint())},
              {"fill_values", nums(m.fill_values)},
              {"payload", payload}};
  out << doc.dump() << '\n';
  if (!out) throw DataError("failed to write model");
}

void save_model(const std::filesystem::path& path, const TrainedModel& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  save_model(out, m);
}

TrainedModel load_model(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw DeserializeError(fmt::format("model file is not valid JSON: {}", e.what()));
  }
  try {
    if (!doc.is_object() || doc.value("format", "") != kModelFormat) {
      throw DeserializeError("not a crickpred model file");
    }
    const int version = doc.at("version").get<int>();
    if (version != kModelVersion) {
      throw VersionError(fmt::format("model version {} is not supported (expected {})", version,
                                     kModelVersion));
    }
    TrainedModel m;
    const auto kind = parse_learner(doc.at("learner").get<std::string>());
    if (!kind) throw DeserializeError("unknown learner in model file");
    m.kind = *kind;
    m.schema = schema_from(doc.at("schema"));
    if (doc.at("fingerprint").get<std::string>() != fmt::format("{:016x}", m.fingerprint())) {
      throw DeserializeError("schema fingerprint does not match the stored schema");
    }
    m.fill_values = nums(doc.at("fill_values"));
    if (m.fill_values.size() != m.schema.size()) throw DeserializeError("fill value count mismatch");
    const auto& p = doc.at("payload");
    switch (m.kind) {
      case LearnerKind::NaiveBayes: m.payload = naive_bayes_from(p); break;
      case LearnerKind::Tree: m.payload = tree_from(p); break;
      case LearnerKind::Forest: {
        Forest f;
        f.num_classes = p.at("num_classes").get<int>();
        for (const auto& t : p.at("trees")) f.trees.push_back(tree_from(t));
        if (f.trees.empty()) throw DeserializeError("forest has no trees");
        m.payload = std::move(f);
        break;
      }
      case LearnerKind::Svm: m.payload = svm_from(p); break;
    }
    return m;
  } catch (const json::exception& e) {
    throw DeserializeError(fmt::format("malformed model file: {}", e.what()));
  }
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  return load_model(in);
}

}  // namespace crickpred::learn
