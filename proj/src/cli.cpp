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

#include "crickpred/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "crickpred/ahp.hpp"
#include "crickpred/evaluate.hpp"
#include "crickpred/features.hpp"
#include "crickpred/fixture.hpp"
#include "crickpred/parallel.hpp"
#include "crickpred/predictor.hpp"
#include "crickpred/serve.hpp"

namespace crickpred::cli {

namespace fs = std::filesystem;
using nlohmann::json;

InputPaths InputPaths::in_directory(const fs::path& dir) {
  return {dir / "batting.csv", dir / "bowling.csv", dir / "rosters.csv"};
}

LoadedData load_data(const InputPaths& paths) {
  LoadedData d;
  d.history = ingest::History(ingest::parse_batting_csv(paths.batting),
                              ingest::parse_bowling_csv(paths.bowling));
  d.rosters = ingest::RosterBook(ingest::parse_rosters_csv(paths.rosters));
  return d;
}

features::WeightVectors load_weights(const std::optional<fs::path>& explicit_path) {
  if (explicit_path) return features::WeightVectors::load(*explicit_path);
  if (const char* env = std::getenv(kConfigEnv); env && *env) {
    return features::WeightVectors::load(env);
  }
  return features::WeightVectors::defaults();
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::optional<fs::path> weights;
  unsigned jobs = default_jobs();
  std::uint64_t seed = 1;
  std::string format = "text";
};

struct InputOptions {
  std::optional<fs::path> data;
  std::optional<fs::path> batting;
  std::optional<fs::path> bowling;
  std::optional<fs::path> rosters;

  bool given() const { return data || batting || bowling || rosters; }

  InputPaths resolve() const {
    InputPaths p = data ? InputPaths::in_directory(*data) : InputPaths{};
    if (batting) p.batting = *batting;
    if (bowling) p.bowling = *bowling;
    if (rosters) p.rosters = *rosters;
    for (const auto* path : {&p.batting, &p.bowling, &p.rosters}) {
      if (path->empty()) throw UsageError("input files not given; use --data or --batting/--bowling/--rosters");
      if (!fs::is_regular_file(*path)) {
        throw UsageError(fmt::format("input file not found: {}", path->string()));
      }
    }
    return p;
  }
};

void add_inputs(CLI::App* app, InputOptions& in) {
  app->add_option("--data", in.data, "Directory holding batting.csv, bowling.csv, rosters.csv");
  app->add_option("--batting", in.batting, "Batting innings CSV");
  app->add_option("--bowling", in.bowling, "Bowling innings CSV");
  app->add_option("--rosters", in.rosters, "Rosters CSV");
}

void add_common(CLI::App* app, CommonOptions& c, bool with_format) {
  app->add_option("--weights", c.weights,
                  fmt::format("Weight-vector config (default: ${} or the published weights)", kConfigEnv));
  app->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
  app->add_option("--seed", c.seed, "Seed for every stochastic step");
  if (with_format) {
    app->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
  }
}

features::Target require_target(const std::string& s) {
  const auto t = features::parse_target(s);
  if (!t) throw UsageError(fmt::format("unknown target '{}'", s));
  return *t;
}

features::Target target_of(const Schema& s) {
  if (s.num_classes == features::num_classes(features::Target::Runs)) return features::Target::Runs;
  if (s.num_classes == features::num_classes(features::Target::Wickets)) return features::Target::Wickets;
  throw DataError(fmt::format("dataset has {} classes; expected 5 (runs) or 3 (wickets)", s.num_classes));
}

std::vector<std::string> class_names(features::Target t) {
  std::vector<std::string> names;
  for (int c = 1; c <= features::num_classes(t); ++c) names.push_back(features::class_band(t, c));
  return names;
}

json audit_json(const std::vector<ahp::VectorAudit>& audit) {
  json a = json::array();
  for (const auto& v : audit) {
    a.push_back({{"facet", std::string(features::to_string(v.facet))},
                 {"kind", std::string(features::to_string(v.kind))},
                 {"abs_sum", v.abs_sum},
                 {"deviation", v.deviation},
                 {"flagged", v.flagged}});
  }
  return a;
}

json report_json(const eval::EvalReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"learner", std::string(learn::to_string(c.learner))},
                     {"split", eval::split_label(c.train_fraction)},
                     {"train_fraction", c.train_fraction},
                     {"accuracy", c.metrics.accuracy},
                     {"precision", c.metrics.precision},
                     {"recall", c.metrics.recall},
                     {"f1", c.metrics.f1},
                     {"auroc", c.metrics.auroc},
                     {"rmse", c.metrics.rmse},
                     {"confusion", c.confusion.counts},
                     {"train_rows", c.train_rows},
                     {"synthetic_rows", c.synthetic_rows},
                     {"test_rows", c.test_rows},
                     {"converged", c.converged}});
  }
  return {{"title", r.title}, {"num_classes", r.num_classes}, {"cells", std::move(cells)}};
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError(fmt::format("cannot write {}", path.string()));
  f << content;
  if (!f) throw DataError(fmt::format("failed writing {}", path.string()));
}

// --- fixture ---------------------------------------------------------------

struct FixtureOptions {
  CommonOptions common;
  std::string profile = "realistic";
  int players = fixture::FixtureConfig{}.n_players;
  int matches = fixture::FixtureConfig{}.n_matches;
  fs::path out;
};

int cmd_fixture(const FixtureOptions& o, std::ostream& out) {
  const auto profile = fixture::parse_profile(o.profile);
  if (!profile) throw UsageError(fmt::format("unknown profile '{}'", o.profile));
  if (o.players < 22 || o.matches < 10) {
    throw UsageError("a fixture needs at least 22 players and 10 matches");
  }
  const auto f = fixture::generate_fixture({o.common.seed, o.players, o.matches, *profile});
  fixture::write_fixture(f, o.out);
  out << fmt::format("wrote {} batting, {} bowling innings and {} rosters to {}\n",
                     f.batting.size(), f.bowling.size(), f.rosters.size(), o.out.string());
  return kOk;
}

// --- build -----------------------------------------------------------------

struct BuildOptions {
  CommonOptions common;
  InputOptions inputs;
  std::string target = "runs";
  fs::path out;
};

fs::path dataset_path(const fs::path& dir, features::Target t) {
  return dir / fmt::format("dataset_{}.csv", features::to_string(t));
}

int cmd_build(const BuildOptions& o, std::ostream& out) {
  const auto target = require_target(o.target);
  const auto paths = o.inputs.resolve();
  const auto weights = load_weights(o.common.weights);
  const auto data = load_data(paths);
  const Dataset d = features::build_dataset(data.history, data.rosters, target, weights, o.common.jobs);
  const auto path = dataset_path(o.out, target);
  std::ostringstream csv;
  write_dataset_csv(csv, d);
  write_file(path, csv.str());

  const auto counts = d.class_counts();
  const auto audit = ahp::validate_weight_vectors(weights);
  if (o.common.format == "json") {
    out << json{{"target", std::string(features::to_string(target))},
                {"rows", d.size()},
                {"features", d.schema.size()},
                {"missing_values", d.missing_count()},
                {"class_counts", counts},
                {"weight_audit", audit_json(audit)},
                {"output", path.string()}}
               .dump(2)
        << "\n";
    return kOk;
  }
  out << fmt::format("target: {}\nrows: {}\nfeatures: {}\nmissing values: {}\n",
                     features::to_string(target), d.size(), d.schema.size(), d.missing_count());
  out << "class counts:\n";
  for (std::size_t c = 0; c < counts.size(); ++c) {
    out << fmt::format("  {} ({}): {}\n", c + 1,
                       features::class_band(target, static_cast<int>(c) + 1), counts[c]);
  }
  out << "\n" << ahp::format_audit(audit) << "\nwrote " << path.string() << "\n";
  return kOk;
}

// --- experiment / train shared -----------------------------------------------

struct ModelOptions {
  CommonOptions common;
  InputOptions inputs;
  std::optional<fs::path> dataset;
  std::string target = "runs";
  int smote_k = resample::SmoteConfig{}.k;
  std::optional<std::uint64_t> smote_seed;
  bool no_smote = false;
  int trees = learn::ForestConfig{}.n_trees;
  double svm_c = learn::SvmConfig{}.C;
  double svm_gamma = learn::SvmConfig{}.gamma;
};

void add_model_options(CLI::App* app, ModelOptions& m) {
  add_common(app, m.common, true);
  add_inputs(app, m.inputs);
  app->add_option("--dataset", m.dataset, "Dataset CSV written by 'build' (instead of raw inputs)");
  app->add_option("--target", m.target, "runs or wickets (raw inputs only)")
      ->check(CLI::IsMember({"runs", "wickets"}));
  app->add_option("--smote-k", m.smote_k, "SMOTE neighbours")->check(CLI::Range(1, 1000));
  app->add_option("--smote-seed", m.smote_seed, "SMOTE seed (default: --seed)");
  app->add_flag("--no-smote", m.no_smote, "Train on the imbalanced fold");
  app->add_option("--trees", m.trees, "Random forest size")->check(CLI::Range(1, 100000));
  app->add_option("--svm-c", m.svm_c, "SVM box constraint")->check(CLI::PositiveNumber);
  app->add_option("--svm-gamma", m.svm_gamma, "RBF gamma (0: 1 / encoded width)")
      ->check(CLI::NonNegativeNumber);
}

Dataset load_dataset(const ModelOptions& m) {
  if (m.dataset) {
    if (m.inputs.given()) throw UsageError("give either --dataset or raw inputs, not both");
    if (!fs::is_regular_file(*m.dataset)) {
      throw UsageError(fmt::format("dataset not found: {}", m.dataset->string()));
    }
    return read_dataset_csv(*m.dataset);
  }
  const auto paths = m.inputs.resolve();
  const auto weights = load_weights(m.common.weights);
  const auto data = load_data(paths);
  return features::build_dataset(data.history, data.rosters, require_target(m.target), weights,
                                 m.common.jobs);
}

resample::SmoteConfig smote_config(const ModelOptions& m) {
  return {m.smote_k, m.smote_seed.value_or(m.common.seed)};
}

learn::LearnerConfig learner_config(const ModelOptions& m) {
  learn::LearnerConfig lc;
  lc.forest.n_trees = m.trees;
  lc.forest.seed = m.common.seed;
  lc.forest.jobs = m.common.jobs;
  lc.svm.C = m.svm_c;
  lc.svm.gamma = m.svm_gamma;
  lc.svm.jobs = m.common.jobs;
  return lc;
}

// --- experiment ----------------------------------------------------------------

struct ExperimentOptions {
  ModelOptions model;
  std::vector<double> splits{0.6, 0.7, 0.8, 0.9};
  std::vector<std::string> learners{"nb", "tree", "forest", "svm"};
  std::string strategy = "stratified";
  std::optional<fs::path> out;
  bool quiet = false;
};

int cmd_experiment(const ExperimentOptions& o, std::ostream& out, std::ostream& err) {
  eval::ExperimentConfig cfg;
  cfg.learners.clear();
  for (const auto& name : o.learners) {
    const auto k = learn::parse_learner(name);
    if (!k) throw UsageError(fmt::format("unknown learner '{}'", name));
    if (std::find(cfg.learners.begin(), cfg.learners.end(), *k) == cfg.learners.end()) {
      cfg.learners.push_back(*k);
    }
  }
  for (double f : o.splits) {
    if (!(f > 0.0 && f < 1.0)) throw UsageError(fmt::format("split {} is not in (0, 1)", f));
  }
  const auto strategy = eval::parse_strategy(o.strategy);
  if (!strategy) throw UsageError(fmt::format("unknown split strategy '{}'", o.strategy));
  cfg.splits = o.splits;
  cfg.strategy = *strategy;
  cfg.seed = o.model.common.seed;
  cfg.smote = !o.model.no_smote;
  cfg.smote_cfg = smote_config(o.model);
  cfg.learner_cfg = learner_config(o.model);
  cfg.jobs = o.model.common.jobs;

  const Dataset d = load_dataset(o.model);
  const auto target = target_of(d.schema);
  auto progress = [&](const eval::CellResult& c) {
    if (!o.quiet) {
      err << fmt::format("{:<14} {:>6}  accuracy {:.4f}  ({:.1f}s)\n", learn::display_name(c.learner),
                         eval::split_label(c.train_fraction), c.metrics.accuracy, c.seconds);
    }
  };
  eval::EvalReport report = eval::run_experiment(d, cfg, progress);
  report.title = fmt::format("{} prediction ({} rows, {} split, SMOTE {})",
                             target == features::Target::Runs ? "Runs" : "Wickets", d.size(),
                             eval::to_string(cfg.strategy), cfg.smote ? "on" : "off");
  const std::string text = eval::format_report(report, class_names(target));
  std::ostringstream csv;
  eval::write_report_csv(csv, report);

  if (o.out) {
    const std::string stem(features::to_string(target));
    write_file(*o.out / fmt::format("report_{}.txt", stem), text);
    write_file(*o.out / fmt::format("report_{}.csv", stem), csv.str());
    write_file(*o.out / fmt::format("report_{}.json", stem), report_json(report).dump(2) + "\n");
    std::ostringstream timings;
    eval::write_timings_csv(timings, report);
    write_file(*o.out / fmt::format("timings_{}.csv", stem), timings.str());
  }
  const auto& format = o.model.common.format;
  if (format == "json") {
    out << report_json(report).dump(2) << "\n";
  } else if (format == "csv") {
    out << csv.str();
  } else {
    out << text;
  }
  return kOk;
}

// --- train -------------------------------------------------------------------

struct TrainOptions {
  ModelOptions model;
  std::string learner = "forest";
  fs::path out;
};

int cmd_train(const TrainOptions& o, std::ostream& out) {
  const auto kind = learn::parse_learner(o.learner);
  if (!kind) throw UsageError(fmt::format("unknown learner '{}'", o.learner));
  const Dataset d = load_dataset(o.model);
  const auto target = target_of(d.schema);
  const ImputationStats stats = fit_imputation(d);
  Dataset train = apply_imputation(d, stats, ImputeSource::TrainingFold);
  if (!o.model.no_smote) {
    train = resample::balance_all(train, smote_config(o.model), nullptr,
                                  o.model.common.jobs);
  }
  learn::TrainedModel model = learn::train(*kind, train, learner_config(o.model));
  // Prediction rows are filled with label-free statistics of the real rows.
  model.fill_values = stats.global;
  for (auto& v : model.fill_values) {
    if (is_missing(v)) v = 0.0;
  }
  learn::save_model(o.out, model);
  out << fmt::format("trained {} on {} rows ({} after balancing) for {}; wrote {}\n",
                     learn::display_name(*kind), d.size(), train.size(),
                     features::to_string(target), o.out.string());
  return kOk;
}

// --- predict -------------------------------------------------------------------

struct PredictOptions {
  CommonOptions common;
  InputOptions inputs;
  fs::path model;
  std::string player;
  std::string opposition;
  std::string ground;
  std::string host;
  std::string date;
  std::string match_type = "Normal";
  std::string match_time = "Day";
  std::string tournament = "TT";
  std::optional<std::string> venue_relation;
  bool toss_won = false;
  int innings = 1;
  int position = 1;
  bool captain = false;
  bool wicketkeeper = false;
};

template <typename E>
E require_token(const std::string& s, const char* what) {
  const auto v = parse_token<E>(s);
  if (!v) throw UsageError(fmt::format("unknown {} '{}'", what, s));
  return *v;
}

int cmd_predict(const PredictOptions& o, std::ostream& out) {
  const auto date = Date::parse(o.date);
  if (!date) throw UsageError(fmt::format("--date must be YYYY-MM-DD, got '{}'", o.date));
  if (!fs::is_regular_file(o.model)) {
    throw UsageError(fmt::format("model not found: {}", o.model.string()));
  }
  const auto paths = o.inputs.resolve();
  const auto weights = load_weights(o.common.weights);
  const learn::TrainedModel model = learn::load_model(o.model);
  const auto data = load_data(paths);

  predict::MatchRequest req;
  req.player_id = o.player;
  req.target = target_of(model.schema);
  req.opposition = o.opposition;
  req.ground = o.ground;
  req.host = o.host;
  req.date = *date;
  req.match_type = require_token<MatchType>(o.match_type, "match type");
  req.match_time = require_token<MatchTime>(o.match_time, "match time");
  req.tournament = require_token<Tournament>(o.tournament, "tournament");
  if (o.venue_relation) req.venue_relation = require_token<VenueRelation>(*o.venue_relation, "venue relation");
  req.toss_won = o.toss_won;
  req.innings_no = o.innings;
  req.position = o.position;
  req.captain = o.captain;
  req.wicketkeeper = o.wicketkeeper;

  const predict::Predictor predictor(data.history, data.rosters, weights);
  const auto r = predictor.predict(model, req);
  if (o.common.format == "json") {
    out << serve::prediction_json(r) << "\n";
    return kOk;
  }
  if (o.common.format == "csv") {
    out << "player_id,target,predicted_class,band,cold_start";
    for (std::size_t c = 0; c < r.probabilities.size(); ++c) out << fmt::format(",p{}", c + 1);
    out << "\n"
        << fmt::format("{},{},{},{},{}", r.player_id, features::to_string(r.target), r.predicted_class,
                       r.band, r.cold_start ? 1 : 0);
    for (double p : r.probabilities) out << fmt::format(",{}", p);
    out << "\n";
    return kOk;
  }
  auto show = [](const std::optional<double>& v) { return v ? fmt::format("{:.4f}", *v) : "missing"; };
  out << fmt::format("player {} ({}, {} model)\n", r.player_id, features::to_string(r.target),
                     learn::display_name(model.kind));
  out << fmt::format("predicted class {} ({})\n", r.predicted_class, r.band);
  out << "probabilities:";
  for (std::size_t c = 0; c < r.probabilities.size(); ++c) {
    out << fmt::format(" {}={:.4f}", c + 1, r.probabilities[c]);
  }
  out << fmt::format("\nderived: consistency {} form {} opposition {} venue {}\n",
                     show(r.derived.consistency), show(r.derived.form), show(r.derived.opposition),
                     show(r.derived.venue));
  out << fmt::format("opposition strength: {}\n", show(r.opposition_strength));
  if (r.cold_start) out << "cold start: no earlier innings; prediction uses imputed values\n";
  return kOk;
}

// --- ahp -------------------------------------------------------------------------

struct AhpOptions {
  CommonOptions common;
  std::optional<fs::path> matrix;
  bool audit = false;
};

int cmd_ahp(const AhpOptions& o, std::ostream& out) {
  if (!o.matrix && !o.audit) throw UsageError("give a matrix file or --audit");
  json doc = json::object();
  if (o.matrix) {
    std::ifstream in(*o.matrix);
    if (!in) throw UsageError(fmt::format("matrix file not found: {}", o.matrix->string()));
    const auto m = ahp::PairwiseMatrix::parse(in);
    const auto p = ahp::weights_from_matrix(m);
    if (o.common.format == "json") {
      doc["priorities"] = {{"weights", p.weights},
                           {"lambda_max", p.lambda_max},
                           {"consistency_index", p.consistency_index},
                           {"consistency_ratio", p.consistency_ratio},
                           {"iterations", p.iterations}};
    } else {
      out << ahp::format_priorities(p);
    }
  }
  if (o.audit) {
    const auto audit = ahp::validate_weight_vectors(load_weights(o.common.weights));
    if (o.common.format == "json") {
      doc["weight_audit"] = audit_json(audit);
    } else {
      if (o.matrix) out << "\n";
      out << ahp::format_audit(audit);
    }
  }
  if (o.common.format == "json") out << doc.dump(2) << "\n";
  return kOk;
}

// --- serve -------------------------------------------------------------------------

struct ServeOptions {
  CommonOptions common;
  InputOptions inputs;
  std::optional<fs::path> runs_model;
  std::optional<fs::path> wickets_model;
  std::string host = "127.0.0.1";
  int port = serve::kDefaultPort;
  std::string cors_origin = "*";
};

int cmd_serve(const ServeOptions& o, std::ostream& out, std::ostream& err) {
  const auto paths = o.inputs.resolve();
  for (const auto& m : {o.runs_model, o.wickets_model}) {
    if (m && !fs::is_regular_file(*m)) throw UsageError(fmt::format("model not found: {}", m->string()));
  }
  const auto weights = load_weights(o.common.weights);
  const auto data = load_data(paths);
  std::optional<learn::TrainedModel> runs, wickets;
  if (o.runs_model) runs = learn::load_model(*o.runs_model);
  if (o.wickets_model) wickets = learn::load_model(*o.wickets_model);
  if (!runs && !wickets) err << "warning: no model loaded; prediction endpoints will answer 503\n";
  const serve::Service service(data.history, data.rosters, weights, std::move(runs), std::move(wickets));
  serve::HttpServer server(service, o.cors_origin);
  out << fmt::format("serving on http://{}:{}\n", o.host, o.port) << std::flush;
  if (!server.listen(o.host, o.port)) {
    throw DataError(fmt::format("cannot listen on {}:{}", o.host, o.port));
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"crickpred: cricket player performance prediction"};
  app.name("crickpred");
  app.require_subcommand(1);

  std::function<int()> action;

  FixtureOptions fx;
  auto* fixture_cmd = app.add_subcommand("fixture", "Write a synthetic innings fixture");
  add_common(fixture_cmd, fx.common, false);
  fixture_cmd->add_option("--profile", fx.profile, "separable, nonlinear or realistic")
      ->check(CLI::IsMember({"separable", "nonlinear", "realistic"}));
  fixture_cmd->add_option("--players", fx.players, "Number of players (11 per team)");
  fixture_cmd->add_option("--matches", fx.matches, "Number of matches");
  fixture_cmd->add_option("--out", fx.out, "Output directory")->required();
  fixture_cmd->callback([&] { action = [&] { return cmd_fixture(fx, out); }; });

  BuildOptions bo;
  auto* build_cmd = app.add_subcommand("build", "Ingest innings files and export a feature dataset");
  add_common(build_cmd, bo.common, true);
  add_inputs(build_cmd, bo.inputs);
  build_cmd->add_option("--target", bo.target, "runs or wickets")
      ->check(CLI::IsMember({"runs", "wickets"}));
  build_cmd->add_option("--out", bo.out, "Output directory")->required();
  build_cmd->callback([&] { action = [&] { return cmd_build(bo, out); }; });

  ExperimentOptions eo;
  auto* exp_cmd = app.add_subcommand("experiment", "Train and evaluate learners over train/test splits");
  add_model_options(exp_cmd, eo.model);
  exp_cmd->add_option("--splits", eo.splits, "Training fractions, e.g. 0.6,0.9")->delimiter(',');
  exp_cmd->add_option("--learners", eo.learners, "nb, tree, forest, svm")->delimiter(',');
  exp_cmd->add_option("--strategy", eo.strategy, "stratified or chronological")
      ->check(CLI::IsMember({"stratified", "chronological"}));
  exp_cmd->add_option("--out", eo.out, "Directory for report files");
  exp_cmd->add_flag("--quiet", eo.quiet, "No per-cell progress on stderr");
  exp_cmd->callback([&] { action = [&] { return cmd_experiment(eo, out, err); }; });

  TrainOptions to;
  auto* train_cmd = app.add_subcommand("train", "Train one learner on a whole dataset and save it");
  add_model_options(train_cmd, to.model);
  train_cmd->add_option("--learner", to.learner, "nb, tree, forest or svm");
  train_cmd->add_option("--out", to.out, "Model file")->required();
  train_cmd->callback([&] { action = [&] { return cmd_train(to, out); }; });

  PredictOptions po;
  auto* predict_cmd = app.add_subcommand("predict", "Predict a player's class for one match");
  add_common(predict_cmd, po.common, true);
  add_inputs(predict_cmd, po.inputs);
  predict_cmd->add_option("--model", po.model, "Model file written by 'train'")->required();
  predict_cmd->add_option("--player", po.player, "Player id")->required();
  predict_cmd->add_option("--opposition", po.opposition, "Opposing team")->required();
  predict_cmd->add_option("--ground", po.ground, "Ground")->required();
  predict_cmd->add_option("--host", po.host, "Host country")->required();
  predict_cmd->add_option("--date", po.date, "Match date, YYYY-MM-DD")->required();
  predict_cmd->add_option("--match-type", po.match_type, "Normal, QuarterFinal, SemiFinal, Final");
  predict_cmd->add_option("--match-time", po.match_time, "Day or DayNight");
  predict_cmd->add_option("--tournament", po.tournament, "TT, TFT or FT");
  predict_cmd->add_option("--venue-relation", po.venue_relation,
                          "Home, Away or Neutral (default: from host and teams)");
  predict_cmd->add_flag("--toss-won", po.toss_won, "The player's side won the toss");
  predict_cmd->add_option("--innings", po.innings, "Innings number")->check(CLI::Range(1, 2));
  predict_cmd->add_option("--position", po.position, "Batting position")->check(CLI::Range(1, 11));
  predict_cmd->add_flag("--captain", po.captain, "The player captains");
  predict_cmd->add_flag("--wicketkeeper", po.wicketkeeper, "The player keeps wicket");
  predict_cmd->callback([&] { action = [&] { return cmd_predict(po, out); }; });

  AhpOptions ao;
  auto* ahp_cmd = app.add_subcommand("ahp", "Priority vector of a pairwise comparison matrix");
  add_common(ahp_cmd, ao.common, true);
  ahp_cmd->add_option("matrix", ao.matrix, "Matrix file");
  ahp_cmd->add_flag("--audit", ao.audit, "Check that each weight vector sums to 1");
  ahp_cmd->callback([&] { action = [&] { return cmd_ahp(ao, out); }; });

  ServeOptions so;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP prediction service");
  add_common(serve_cmd, so.common, false);
  add_inputs(serve_cmd, so.inputs);
  serve_cmd->add_option("--runs-model", so.runs_model, "Model for the runs target");
  serve_cmd->add_option("--wickets-model", so.wickets_model, "Model for the wickets target");
  serve_cmd->add_option("--host", so.host, "Bind address");
  serve_cmd->add_option("--port", so.port, "Port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--cors-origin", so.cors_origin, "Allowed browser origin");
  serve_cmd->callback([&] { action = [&] { return cmd_serve(so, out, err); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace crickpred::cli
