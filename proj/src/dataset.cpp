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

#include "crickpred/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <fmt/format.h>

#include "crickpred/csv.hpp"

namespace crickpred {

std::optional<std::size_t> Schema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].name == name) return i;
  }
  return std::nullopt;
}

double Schema::encode_token(std::size_t feature, std::string_view token) const {
  const auto& toks = features.at(feature).tokens;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i] == token) return static_cast<double>(i);
  }
  return kUnknownToken;
}

std::uint64_t Schema::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  feed(std::to_string(num_classes));
  for (const auto& f : features) {
    feed(f.name);
    feed(f.kind == FeatureKind::Numeric ? "n" : "c");
    for (const auto& t : f.tokens) feed(t);
  }
  return h;
}

void Schema::validate() const {
  if (num_classes < 2) throw PreconditionError("schema needs at least two classes");
  std::set<std::string_view> names;
  for (const auto& f : features) {
    if (!names.insert(f.name).second) {
      throw PreconditionError(fmt::format("duplicate feature name '{}'", f.name));
    }
  }
}

bool Example::operator==(const Example& o) const {
  if (label != o.label || synthetic != o.synthetic || !(provenance == o.provenance) ||
      values.size() != o.values.size()) {
    return false;
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (is_missing(values[i]) != is_missing(o.values[i])) return false;
    if (!is_missing(values[i]) && values[i] != o.values[i]) return false;
  }
  return true;
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(schema.num_classes), 0);
  for (const auto& r : rows) ++counts.at(static_cast<std::size_t>(r.label - 1));
  return counts;
}

std::size_t Dataset::missing_count() const {
  std::size_t n = 0;
  for (const auto& r : rows) {
    n += static_cast<std::size_t>(std::count_if(r.values.begin(), r.values.end(), is_missing));
  }
  return n;
}

Dataset Dataset::subset(const std::vector<std::size_t>& indices) const {
  Dataset d{schema, {}};
  d.rows.reserve(indices.size());
  for (auto i : indices) d.rows.push_back(rows.at(i));
  return d;
}

namespace {

constexpr std::string_view kProvenanceColumns[] = {"player_id", "match_date", "sequence",
                                                   "synthetic"};

std::string header_cell(const FeatureSpec& f) {
  if (f.kind == FeatureKind::Numeric) return f.name + ":numeric";
  for (const auto& t : f.tokens) {
    if (t.find_first_of("|{}") != std::string::npos) {
      throw DatasetFormatError(fmt::format("token '{}' contains a reserved character", t));
    }
  }
  return fmt::format("{}:categorical{{{}}}", f.name, fmt::join(f.tokens, "|"));
}

FeatureSpec parse_header_cell(const std::string& cell) {
  const auto colon = cell.find(':');
  if (colon == std::string::npos) {
    throw DatasetFormatError(fmt::format("header cell '{}' lacks a kind", cell));
  }
  FeatureSpec f;
  f.name = cell.substr(0, colon);
  const std::string kind = cell.substr(colon + 1);
  if (kind == "numeric") {
    f.kind = FeatureKind::Numeric;
    return f;
  }
  if (kind.rfind("categorical{", 0) != 0 || kind.back() != '}') {
    throw DatasetFormatError(fmt::format("unknown feature kind in '{}'", cell));
  }
  f.kind = FeatureKind::Categorical;
  const std::string body = kind.substr(12, kind.size() - 13);
  std::size_t start = 0;
  while (!body.empty()) {
    const auto bar = body.find('|', start);
    f.tokens.push_back(body.substr(start, bar - start));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return f;
}

}  // namespace

void write_dataset_csv(std::ostream& out, const Dataset& d) {
  std::vector<std::string> header;
  for (const auto& f : d.schema.features) header.push_back(header_cell(f));
  header.push_back(fmt::format("label:classes={}", d.schema.num_classes));
  for (auto c : kProvenanceColumns) header.emplace_back(c);
  out << csv::join(header) << '\n';
  std::vector<std::string> cells;
  for (const auto& r : d.rows) {
    cells.clear();
    for (std::size_t i = 0; i < d.schema.size(); ++i) {
      const double v = r.values[i];
      if (is_missing(v)) {
        cells.emplace_back();
      } else if (d.schema.features[i].kind == FeatureKind::Numeric) {
        cells.push_back(csv::format_double(v));
      } else if (v < 0) {
        cells.emplace_back("?");
      } else {
        cells.push_back(d.schema.features[i].tokens.at(static_cast<std::size_t>(v)));
      }
    }
    cells.push_back(std::to_string(r.label));
    cells.push_back(r.provenance.player_id);
    cells.push_back(r.provenance.match_date.iso());
    cells.push_back(std::to_string(r.provenance.sequence));
    cells.emplace_back(r.synthetic ? "1" : "0");
    out << csv::join(cells) << '\n';
  }
}

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!csv::read_line(in, line)) throw DatasetFormatError("empty dataset file");
  auto header = csv::split(line);
  if (!header || header->size() < 1 + std::size(kProvenanceColumns)) {
    throw DatasetFormatError("dataset header is too short");
  }
  Dataset d;
  const std::size_t n_features = header->size() - 1 - std::size(kProvenanceColumns);
  for (std::size_t i = 0; i < n_features; ++i) {
    d.schema.features.push_back(parse_header_cell((*header)[i]));
  }
  const std::string& label_cell = (*header)[n_features];
  if (label_cell.rfind("label:classes=", 0) != 0) {
    throw DatasetFormatError("dataset header lacks 'label:classes=<m>'");
  }
  const auto m = csv::parse_int(std::string_view(label_cell).substr(14));
  if (!m || *m < 2) throw DatasetFormatError("bad class arity in dataset header");
  d.schema.num_classes = static_cast<int>(*m);
  for (std::size_t i = 0; i < std::size(kProvenanceColumns); ++i) {
    if ((*header)[n_features + 1 + i] != kProvenanceColumns[i]) {
      throw DatasetFormatError("dataset header has unexpected provenance columns");
    }
  }
  d.schema.validate();

  int line_no = 1;
  while (csv::read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = csv::split(line);
    if (!cells || cells->size() != header->size()) {
      throw DatasetFormatError(fmt::format("dataset line {}: wrong field count", line_no));
    }
    Example e;
    e.values.resize(n_features);
    for (std::size_t i = 0; i < n_features; ++i) {
      const std::string& c = (*cells)[i];
      if (c.empty()) {
        e.values[i] = kMissing;
      } else if (d.schema.features[i].kind == FeatureKind::Numeric) {
        auto v = csv::parse_double(c);
        if (!v) throw DatasetFormatError(fmt::format("dataset line {}: bad number", line_no));
        e.values[i] = *v;
      } else {
        e.values[i] = c == "?" ? kUnknownToken : d.schema.encode_token(i, c);
        if (c != "?" && e.values[i] < 0) {
          throw DatasetFormatError(
              fmt::format("dataset line {}: token '{}' not in header", line_no, c));
        }
      }
    }
    const auto label = csv::parse_int((*cells)[n_features]);
    if (!label || *label < 1 || *label > d.schema.num_classes) {
      throw DatasetFormatError(fmt::format("dataset line {}: bad label", line_no));
    }
    e.label = static_cast<int>(*label);
    e.provenance.player_id = (*cells)[n_features + 1];
    const auto date = Date::parse((*cells)[n_features + 2]);
    const auto seq = csv::parse_int((*cells)[n_features + 3]);
    if (!date || !seq) throw DatasetFormatError(fmt::format("dataset line {}: bad provenance", line_no));
    e.provenance.match_date = *date;
    e.provenance.sequence = static_cast<int>(*seq);
    e.synthetic = (*cells)[n_features + 4] == "1";
    d.rows.push_back(std::move(e));
  }
  return d;
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  return read_dataset_csv(in);
}

namespace {

// Mean of numeric values or most frequent token (lowest index on ties).
double summarize(FeatureKind kind, const std::vector<double>& values) {
  if (values.empty()) return kMissing;
  if (kind == FeatureKind::Numeric) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
  }
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  double best = sorted.front();
  std::size_t best_n = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if (j - i > best_n) {
      best_n = j - i;
      best = sorted[i];
    }
    i = j;
  }
  return best;
}

}  // namespace

ImputationStats fit_imputation(const Dataset& d, const std::vector<std::string>& class_averaged) {
  const std::size_t f = d.schema.size();
  const auto m = static_cast<std::size_t>(d.schema.num_classes);
  ImputationStats s;
  s.global.assign(f, kMissing);
  s.per_class.assign(m, std::vector<double>(f, kMissing));
  std::vector<double> all;
  std::vector<std::vector<double>> by_class(m);
  for (std::size_t j = 0; j < f; ++j) {
    all.clear();
    for (auto& v : by_class) v.clear();
    for (const auto& r : d.rows) {
      if (r.synthetic || is_missing(r.values[j])) continue;
      all.push_back(r.values[j]);
      by_class[static_cast<std::size_t>(r.label - 1)].push_back(r.values[j]);
    }
    const auto kind = d.schema.features[j].kind;
    s.global[j] = summarize(kind, all);
    const auto& name = d.schema.features[j].name;
    if (std::find(class_averaged.begin(), class_averaged.end(), name) == class_averaged.end()) {
      continue;
    }
    for (std::size_t c = 0; c < m; ++c) s.per_class[c][j] = summarize(kind, by_class[c]);
  }
  return s;
}

Dataset apply_imputation(const Dataset& d, const ImputationStats& stats, ImputeSource source) {
  Dataset out = d;
  for (auto& r : out.rows) {
    for (std::size_t j = 0; j < r.values.size(); ++j) {
      if (!is_missing(r.values[j])) continue;
      double fill = kMissing;
      if (source == ImputeSource::TrainingFold) {
        const auto c = static_cast<std::size_t>(r.label - 1);
        if (c < stats.per_class.size()) fill = stats.per_class[c][j];
      }
      if (is_missing(fill)) fill = stats.global[j];
      if (is_missing(fill)) fill = 0.0;
      r.values[j] = fill;
    }
  }
  return out;
}

}  // namespace crickpred
