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

#include "crickpred/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <tuple>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "crickpred/csv.hpp"
#include "crickpred/random.hpp"

namespace crickpred::eval {

std::string_view to_string(SplitStrategy s) {
  return s == SplitStrategy::Stratified ? "stratified" : "chronological";
}

std::optional<SplitStrategy> parse_strategy(std::string_view s) {
  if (s == "stratified") return SplitStrategy::Stratified;
  if (s == "chronological") return SplitStrategy::Chronological;
  return std::nullopt;
}

std::string split_label(double f) {
  const long train = std::lround(f * 100.0);
  return fmt::format("{}/{}", train, 100 - train);
}

SplitIndices split_indices(const Dataset& d, const SplitSpec& spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw PreconditionError(fmt::format("train fraction {} is not in (0, 1)", spec.train_fraction));
  }
  SplitIndices out;
  if (spec.strategy == SplitStrategy::Chronological) {
    if (d.rows.size() < 2) throw TooFewRows("a split needs at least two rows");
    std::vector<std::size_t> order(d.rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto& pa = d.rows[a].provenance;
      const auto& pb = d.rows[b].provenance;
      if (pa.match_date != pb.match_date) return pa.match_date < pb.match_date;
      if (pa.player_id != pb.player_id) return pa.player_id < pb.player_id;
      return pa.sequence < pb.sequence;
    });
    auto cut = static_cast<std::size_t>(
        std::lround(spec.train_fraction * static_cast<double>(order.size())));
    cut = std::clamp<std::size_t>(cut, 1, order.size() - 1);
    out.train.assign(order.begin(), order.begin() + static_cast<long>(cut));
    out.test.assign(order.begin() + static_cast<long>(cut), order.end());
  } else {
    const auto m = static_cast<std::size_t>(d.schema.num_classes);
    std::vector<std::vector<std::size_t>> members(m);
    for (std::size_t i = 0; i < d.rows.size(); ++i) {
      members.at(static_cast<std::size_t>(d.rows[i].label - 1)).push_back(i);
    }
    for (std::size_t c = 0; c < m; ++c) {
      auto& idx = members[c];
      if (idx.empty()) continue;
      if (idx.size() < 2) {
        throw TooFewRows(fmt::format("class {} has a single row; stratified splits need two", c + 1));
      }
      Rng rng(derive_seed(spec.seed, c));
      rng.shuffle(idx);
      auto n_train = static_cast<std::size_t>(
          std::lround(spec.train_fraction * static_cast<double>(idx.size())));
      n_train = std::clamp<std::size_t>(n_train, 1, idx.size() - 1);
      out.train.insert(out.train.end(), idx.begin(), idx.begin() + static_cast<long>(n_train));
      out.test.insert(out.test.end(), idx.begin() + static_cast<long>(n_train), idx.end());
    }
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

long ConfusionMatrix::total() const {
  long t = 0;
  for (const auto& r : counts) t = std::accumulate(r.begin(), r.end(), t);
  return t;
}

double auroc_binary(const std::vector<double>& scores, const std::vector<bool>& positive) {
  if (scores.size() != positive.size()) throw ShapeMismatch("scores and labels differ in length");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] < scores[b]; });
  double rank_sum = 0.0;
  double n_pos = 0.0, n_neg = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (positive[order[k]]) {
        rank_sum += avg_rank;
        n_pos += 1.0;
      } else {
        n_neg += 1.0;
      }
    }
    i = j;
  }
  if (n_pos == 0.0 || n_neg == 0.0) {
    throw PreconditionError("AUROC needs both positive and negative rows");
  }
  return (rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

ConfusionMatrix confusion(int m, const std::vector<int>& truth, const std::vector<int>& predicted) {
  if (truth.size() != predicted.size()) throw ShapeMismatch("truth and predictions differ in length");
  ConfusionMatrix cm(m);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 1 || truth[i] > m || predicted[i] < 1 || predicted[i] > m) {
      throw ShapeMismatch(fmt::format("label outside 1..{}", m));
    }
    ++cm.counts[static_cast<std::size_t>(truth[i] - 1)][static_cast<std::size_t>(predicted[i] - 1)];
  }
  return cm;
}

MetricSet metrics(const ConfusionMatrix& cm, const std::vector<std::vector<double>>& proba,
                  const std::vector<int>& truth) {
  const std::size_t m = cm.counts.size();
  if (proba.size() != truth.size()) throw ShapeMismatch("probabilities and labels differ in length");
  for (const auto& p : proba) {
    if (p.size() != m) throw ShapeMismatch("probability vector has the wrong length");
  }
  if (static_cast<std::size_t>(cm.total()) != truth.size()) {
    throw ShapeMismatch("confusion matrix total differs from the number of rows");
  }
  MetricSet s;
  const double n = static_cast<double>(cm.total());
  if (n == 0.0) return s;
  std::vector<double> support(m, 0.0), predicted(m, 0.0);
  double trace = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      support[i] += static_cast<double>(cm.counts[i][j]);
      predicted[j] += static_cast<double>(cm.counts[i][j]);
    }
    trace += static_cast<double>(cm.counts[i][i]);
  }
  s.accuracy = trace / n;
  for (std::size_t c = 0; c < m; ++c) {
    const double tp = static_cast<double>(cm.counts[c][c]);
    const double p = predicted[c] > 0.0 ? tp / predicted[c] : 0.0;
    const double r = support[c] > 0.0 ? tp / support[c] : 0.0;
    const double f = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
    const double w = support[c] / n;
    s.precision += w * p;
    s.recall += w * r;
    s.f1 += w * f;
  }
  double auc_weight = 0.0, auc_sum = 0.0;
  std::vector<double> scores(truth.size());
  std::vector<bool> positive(truth.size());
  for (std::size_t c = 0; c < m; ++c) {
    if (support[c] == 0.0 || support[c] == n) continue;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      scores[i] = proba[i][c];
      positive[i] = static_cast<std::size_t>(truth[i] - 1) == c;
    }
    auc_sum += support[c] * auroc_binary(scores, positive);
    auc_weight += support[c];
  }
  s.auroc = auc_weight > 0.0 ? auc_sum / auc_weight : 0.5;
  double sq = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    for (std::size_t c = 0; c < m; ++c) {
      const double y = static_cast<std::size_t>(truth[i] - 1) == c ? 1.0 : 0.0;
      sq += (proba[i][c] - y) * (proba[i][c] - y);
    }
  }
  s.rmse = std::sqrt(sq / (n * static_cast<double>(m)));
  return s;
}

ModelEvaluation evaluate_model(const learn::TrainedModel& model, const Dataset& test) {
  ModelEvaluation e;
  std::vector<int> truth;
  for (const auto& r : test.rows) {
    auto p = model.predict(r.values);
    e.predicted.push_back(p.label);
    e.proba.push_back(std::move(p.probabilities));
    truth.push_back(r.label);
  }
  e.confusion = confusion(test.schema.num_classes, truth, e.predicted);
  e.metrics = metrics(e.confusion, e.proba, truth);
  return e;
}

PreparedSplit prepare_split(const Dataset& d, const SplitSpec& spec, bool smote,
                            const resample::SmoteConfig& smote_cfg, unsigned jobs) {
  PreparedSplit p;
  p.indices = split_indices(d, spec);
  const Dataset train = d.subset(p.indices.train);
  const Dataset test = d.subset(p.indices.test);
  p.stats = fit_imputation(train);
  p.train = apply_imputation(train, p.stats, ImputeSource::TrainingFold);
  p.test = apply_imputation(test, p.stats, ImputeSource::Global);
  if (smote) p.train = resample::balance_all(p.train, smote_cfg, &p.synthetic_trace, jobs);
  return p;
}

const CellResult* EvalReport::find(learn::LearnerKind k, double f) const {
  for (const auto& c : cells) {
    if (c.learner == k && std::abs(c.train_fraction - f) < 1e-9) return &c;
  }
  return nullptr;
}

const CellResult* EvalReport::best(learn::LearnerKind k) const {
  const CellResult* best = nullptr;
  for (const auto& c : cells) {
    if (c.learner != k) continue;
    if (!best || c.metrics.accuracy > best->metrics.accuracy ||
        (c.metrics.accuracy == best->metrics.accuracy && c.train_fraction < best->train_fraction)) {
      best = &c;
    }
  }
  return best;
}

std::vector<learn::LearnerKind> EvalReport::learners() const {
  std::vector<learn::LearnerKind> out;
  for (const auto& c : cells) {
    if (std::find(out.begin(), out.end(), c.learner) == out.end()) out.push_back(c.learner);
  }
  return out;
}

std::vector<double> EvalReport::splits() const {
  std::vector<double> out;
  for (const auto& c : cells) {
    if (std::none_of(out.begin(), out.end(), [&](double f) { return std::abs(f - c.train_fraction) < 1e-9; })) {
      out.push_back(c.train_fraction);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

EvalReport run_experiment(const Dataset& d, const ExperimentConfig& cfg, const ProgressFn& progress) {
  EvalReport report;
  report.num_classes = d.schema.num_classes;
  for (double f : cfg.splits) {
    const SplitSpec spec{f, cfg.strategy, cfg.seed};
    const PreparedSplit p = prepare_split(d, spec, cfg.smote, cfg.smote_cfg, cfg.jobs);
    for (auto kind : cfg.learners) {
      learn::LearnerConfig lc = cfg.learner_cfg;
      lc.forest.jobs = cfg.jobs;
      lc.svm.jobs = cfg.jobs;
      const auto start = std::chrono::steady_clock::now();
      const auto model = learn::train(kind, p.train, lc);
      const auto e = evaluate_model(model, p.test);
      const auto stop = std::chrono::steady_clock::now();
      CellResult cell;
      cell.learner = kind;
      cell.train_fraction = f;
      cell.metrics = e.metrics;
      cell.confusion = e.confusion;
      cell.train_rows = static_cast<long>(p.train.size());
      cell.synthetic_rows = static_cast<long>(std::count_if(
          p.train.rows.begin(), p.train.rows.end(), [](const auto& r) { return r.synthetic; }));
      cell.test_rows = static_cast<long>(p.test.size());
      if (const auto* svm = std::get_if<learn::Svm>(&model.payload)) cell.converged = svm->converged();
      cell.seconds = std::chrono::duration<double>(stop - start).count();
      if (progress) progress(cell);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Report output

namespace {

std::string pct(double v) { return fmt::format("{:.2f}", 100.0 * v); }

std::string metric_table(const EvalReport& r, const std::vector<const CellResult*>& rows) {
  std::string out = fmt::format("{:<16}{:>8}{:>11}{:>9}{:>9}{:>10}{:>9}{:>9}\n", "Learner", "Split",
                                "Precision", "Recall", "F1", "AUROC", "RMSE", "Acc(%)");
  for (const auto* c : rows) {
    if (!c) continue;
    out += fmt::format("{:<16}{:>8}{:>11.4f}{:>9.4f}{:>9.4f}{:>10.4f}{:>9.4f}{:>9}\n",
                       learn::display_name(c->learner), split_label(c->train_fraction),
                       c->metrics.precision, c->metrics.recall, c->metrics.f1, c->metrics.auroc,
                       c->metrics.rmse, pct(c->metrics.accuracy));
  }
  (void)r;
  return out;
}

std::string confusion_block(const CellResult& c, const std::vector<std::string>& names) {
  const std::size_t m = c.confusion.counts.size();
  auto name = [&](std::size_t i) { return i < names.size() ? names[i] : std::to_string(i + 1); };
  std::string out = fmt::format("{} at {} (rows: true class, columns: predicted)\n",
                                learn::display_name(c.learner), split_label(c.train_fraction));
  out += fmt::format("{:>10}", "");
  for (std::size_t j = 0; j < m; ++j) out += fmt::format("{:>9}", name(j));
  out += '\n';
  for (std::size_t i = 0; i < m; ++i) {
    out += fmt::format("{:>10}", name(i));
    for (std::size_t j = 0; j < m; ++j) out += fmt::format("{:>9}", c.confusion.counts[i][j]);
    out += '\n';
  }
  return out;
}

}  // namespace

std::string format_report(const EvalReport& r, const std::vector<std::string>& class_names) {
  const auto learners = r.learners();
  const auto splits = r.splits();
  std::string out;
  if (!r.title.empty()) out += r.title + "\n\n";
  out += "Accuracy (%) by training/test split\n";
  out += fmt::format("{:<16}", "Learner");
  for (double f : splits) out += fmt::format("{:>9}", split_label(f));
  out += '\n';
  for (auto k : learners) {
    out += fmt::format("{:<16}", learn::display_name(k));
    for (double f : splits) {
      const auto* c = r.find(k, f);
      out += fmt::format("{:>9}", c ? pct(c->metrics.accuracy) : "-");
    }
    out += '\n';
  }
  std::vector<const CellResult*> best, ninety;
  for (auto k : learners) {
    best.push_back(r.best(k));
    if (const auto* c = r.find(k, 0.9)) ninety.push_back(c);
  }
  out += "\nMetrics at each learner's best split (weighted averages)\n";
  out += metric_table(r, best);
  if (!ninety.empty()) {
    out += "\nMetrics at the 90/10 split (weighted averages)\n";
    out += metric_table(r, ninety);
  }
  out += "\nConfusion matrices at each learner's best split\n";
  for (const auto* c : best) {
    if (c) out += "\n" + confusion_block(*c, class_names);
  }
  bool all_converged = true;
  for (const auto& c : r.cells) all_converged = all_converged && c.converged;
  if (!all_converged) out += "\nWarning: at least one SVM problem stopped at the iteration cap.\n";
  return out;
}

void write_report_csv(std::ostream& out, const EvalReport& r) {
  out << "learner,split,metric,value\n";
  for (const auto& c : r.cells) {
    const std::string prefix =
        fmt::format("{},{},", learn::to_string(c.learner), csv::format_double(c.train_fraction));
    auto row = [&](std::string_view metric, const std::string& value) {
      out << prefix << metric << ',' << value << '\n';
    };
    row("accuracy", csv::format_double(c.metrics.accuracy));
    row("precision", csv::format_double(c.metrics.precision));
    row("recall", csv::format_double(c.metrics.recall));
    row("f1", csv::format_double(c.metrics.f1));
    row("auroc", csv::format_double(c.metrics.auroc));
    row("rmse", csv::format_double(c.metrics.rmse));
    row("train_rows", std::to_string(c.train_rows));
    row("synthetic_rows", std::to_string(c.synthetic_rows));
    row("test_rows", std::to_string(c.test_rows));
    row("converged", c.converged ? "1" : "0");
    for (std::size_t i = 0; i < c.confusion.counts.size(); ++i) {
      for (std::size_t j = 0; j < c.confusion.counts.size(); ++j) {
        row(fmt::format("confusion_{}_{}", i + 1, j + 1), std::to_string(c.confusion.counts[i][j]));
      }
    }
  }
}

EvalReport read_report_csv(std::istream& in) {
  std::string line;
  if (!csv::read_line(in, line) || line != "learner,split,metric,value") {
    throw DataError("report CSV has an unexpected header");
  }
  EvalReport r;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::vector<std::map<std::pair<int, int>, long>> confusions;
  int line_no = 1;
  int max_class = 0;
  while (csv::read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = csv::split(line);
    if (!cells || cells->size() != 4) throw DataError(fmt::format("report line {}: bad row", line_no));
    const auto& [learner, split, metric, value] =
        std::tie((*cells)[0], (*cells)[1], (*cells)[2], (*cells)[3]);
    const auto key = std::pair{learner, split};
    auto it = index.find(key);
    if (it == index.end()) {
      CellResult c;
      const auto k = learn::parse_learner(learner);
      const auto f = csv::parse_double(split);
      if (!k || !f) throw DataError(fmt::format("report line {}: bad learner or split", line_no));
      c.learner = *k;
      c.train_fraction = *f;
      r.cells.push_back(std::move(c));
      confusions.emplace_back();
      it = index.emplace(key, r.cells.size() - 1).first;
    }
    CellResult& c = r.cells[it->second];
    const auto v = csv::parse_double(value);
    if (!v) throw DataError(fmt::format("report line {}: bad value", line_no));
    if (metric == "accuracy") c.metrics.accuracy = *v;
    else if (metric == "precision") c.metrics.precision = *v;
    else if (metric == "recall") c.metrics.recall = *v;
    else if (metric == "f1") c.metrics.f1 = *v;
    else if (metric == "auroc") c.metrics.auroc = *v;
    else if (metric == "rmse") c.metrics.rmse = *v;
    else if (metric == "train_rows") c.train_rows = static_cast<long>(*v);
    else if (metric == "synthetic_rows") c.synthetic_rows = static_cast<long>(*v);
    else if (metric == "test_rows") c.test_rows = static_cast<long>(*v);
    else if (metric == "converged") c.converged = *v != 0.0;
    else if (metric.rfind("confusion_", 0) == 0) {
      int i = 0, j = 0;
      if (std::sscanf(metric.c_str(), "confusion_%d_%d", &i, &j) != 2 || i < 1 || j < 1) {
        throw DataError(fmt::format("report line {}: bad confusion key", line_no));
      }
      confusions[it->second][{i, j}] = static_cast<long>(*v);
      max_class = std::max({max_class, i, j});
    } else {
      throw DataError(fmt::format("report line {}: unknown metric '{}'", line_no, metric));
    }
  }
  r.num_classes = std::max(2, max_class);
  for (std::size_t k = 0; k < r.cells.size(); ++k) {
    r.cells[k].confusion = ConfusionMatrix(r.num_classes);
    for (const auto& [ij, v] : confusions[k]) {
      r.cells[k].confusion.counts[static_cast<std::size_t>(ij.first - 1)]
                                 [static_cast<std::size_t>(ij.second - 1)] = v;
    }
  }
  return r;
}

void write_timings_csv(std::ostream& out, const EvalReport& r) {
  out << "learner,split,seconds\n";
  for (const auto& c : r.cells) {
    out << fmt::format("{},{},{:.3f}\n", learn::to_string(c.learner),
                       csv::format_double(c.train_fraction), c.seconds);
  }
}

}  // namespace crickpred::eval
