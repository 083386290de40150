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

#include "crickpred/weights.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include <fmt/format.h>

#include "crickpred/csv.hpp"

namespace crickpred::features {

namespace {

constexpr std::string_view kDefaultConfig = R"(
# Derived-attribute weight vectors (AHP-derived, as published).
# Format: <facet>.<derived> = <attribute>:<signed weight>, ...
# Ratings (1-5) of the named traditional attributes are combined as the
# signed weighted sum. Edit to experiment with re-derived weights.

batting.consistency = average:+0.4262, innings:+0.2566, strike_rate:+0.1510, centuries:+0.0787, fifties:+0.0556, zeros:-0.0328
batting.form = average:+0.4262, innings:+0.2566, strike_rate:+0.1510, centuries:+0.0787, fifties:+0.0556, zeros:-0.0328
batting.opposition = average:+0.4262, innings:+0.2566, strike_rate:+0.1510, centuries:+0.0787, fifties:+0.0556, zeros:-0.0328
batting.venue = average:+0.4262, innings:+0.2566, strike_rate:+0.1510, centuries:+0.0787, fifties:+0.0556, highest_score:+0.0328

bowling.consistency = overs:+0.4174, innings:+0.2634, strike_rate:+0.1602, average:+0.0975, ff:+0.0615
bowling.form = overs:+0.3269, innings:+0.2846, strike_rate:+0.1877, average:+0.1210, ff:+0.0798
# Printed with 0.3177 twice; the magnitudes sum to 1.0695.
bowling.opposition = overs:+0.3177, innings:+0.3177, strike_rate:+0.1933, average:+0.1465, ff:+0.0943
bowling.venue = overs:+0.3018, innings:+0.2783, strike_rate:+0.1836, average:+0.1391, ff:+0.0972
)";

std::size_t slot(Facet f, DerivedKind k) {
  return static_cast<std::size_t>(f) * 4 + static_cast<std::size_t>(k);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<Facet> parse_facet(std::string_view s) {
  if (s == "batting") return Facet::Batting;
  if (s == "bowling") return Facet::Bowling;
  return std::nullopt;
}

std::optional<DerivedKind> parse_kind(std::string_view s) {
  for (auto k : kAllDerivedKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Facet f) { return f == Facet::Batting ? "batting" : "bowling"; }

std::string_view default_weights_config() { return kDefaultConfig.substr(1); }

std::vector<std::string_view> expected_attributes(Facet f, DerivedKind k) {
  if (f == Facet::Bowling) return {"overs", "innings", "strike_rate", "average", "ff"};
  if (k == DerivedKind::Venue) {
    return {"average", "innings", "strike_rate", "centuries", "fifties", "highest_score"};
  }
  return {"average", "innings", "strike_rate", "centuries", "fifties", "zeros"};
}

WeightVectors WeightVectors::defaults() {
  std::istringstream in{std::string(default_weights_config())};
  return parse(in);
}

WeightVectors WeightVectors::parse(std::istream& in) {
  WeightVectors w;
  std::array<bool, 8> seen{};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = line;
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw WeightConfigError(fmt::format("weights line {}: {}", line_no, why));
    };
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) fail("expected 'key = terms'");
    const auto key = trim(s.substr(0, eq));
    const auto dot = key.find('.');
    if (dot == std::string_view::npos) fail("key must be <facet>.<derived>");
    const auto facet = parse_facet(key.substr(0, dot));
    const auto kind = parse_kind(key.substr(dot + 1));
    if (!facet || !kind) fail(fmt::format("unknown vector '{}'", key));
    const auto idx = slot(*facet, *kind);
    if (seen[idx]) fail(fmt::format("vector '{}' given twice", key));
    seen[idx] = true;

    std::vector<WeightTerm> terms;
    std::string_view rest = s.substr(eq + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      const auto colon = item.find(':');
      if (colon == std::string_view::npos) fail(fmt::format("term '{}' lacks ':'", item));
      WeightTerm t;
      t.attribute = std::string(trim(item.substr(0, colon)));
      auto num = trim(item.substr(colon + 1));
      if (!num.empty() && (num.front() == '+' || num.front() == '-')) {
        t.sign = num.front() == '-' ? -1 : 1;
        num.remove_prefix(1);
      }
      const auto value = csv::parse_double(num);
      if (!value || *value < 0) fail(fmt::format("bad weight in '{}'", item));
      t.weight = *value;
      terms.push_back(std::move(t));
    }
    auto names = expected_attributes(*facet, *kind);
    std::vector<std::string_view> got;
    for (const auto& t : terms) got.push_back(t.attribute);
    std::sort(names.begin(), names.end());
    std::sort(got.begin(), got.end());
    if (names != got) {
      fail(fmt::format("'{}' must name exactly: {}", key, fmt::join(names, ", ")));
    }
    w.vectors_[idx] = std::move(terms);
  }
  for (auto f : {Facet::Batting, Facet::Bowling}) {
    for (auto k : kAllDerivedKinds) {
      if (!seen[slot(f, k)]) {
        throw WeightConfigError(
            fmt::format("weights: missing vector {}.{}", to_string(f), to_string(k)));
      }
    }
  }
  return w;
}

WeightVectors WeightVectors::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw WeightConfigError(fmt::format("cannot open weights file '{}'", path.string()));
  return parse(in);
}

std::string WeightVectors::serialize() const {
  std::string out;
  for (auto f : {Facet::Batting, Facet::Bowling}) {
    for (auto k : kAllDerivedKinds) {
      out += fmt::format("{}.{} =", to_string(f), to_string(k));
      const auto& terms = vectors_[slot(f, k)];
      for (std::size_t i = 0; i < terms.size(); ++i) {
        out += fmt::format("{} {}:{}{}", i ? "," : "", terms[i].attribute,
                           terms[i].sign < 0 ? '-' : '+', csv::format_double(terms[i].weight));
      }
      out += '\n';
    }
  }
  return out;
}

const std::vector<WeightTerm>& WeightVectors::terms(Facet f, DerivedKind k) const {
  return vectors_[slot(f, k)];
}

std::vector<WeightTerm>& WeightVectors::terms(Facet f, DerivedKind k) {
  return vectors_[slot(f, k)];
}

Rating rating_of(const RatedBatting& r, std::string_view a) {
  if (a == "average") return r.average;
  if (a == "innings") return r.innings;
  if (a == "strike_rate") return r.strike_rate;
  if (a == "centuries") return r.centuries;
  if (a == "fifties") return r.fifties;
  if (a == "zeros") return r.zeros;
  if (a == "highest_score") return r.highest_score;
  throw UnknownAttribute(fmt::format("unknown batting attribute '{}'", a));
}

Rating rating_of(const RatedBowling& r, std::string_view a) {
  if (a == "overs") return r.overs;
  if (a == "innings") return r.innings;
  if (a == "strike_rate") return r.strike_rate;
  if (a == "average") return r.average;
  if (a == "ff") return r.ff;
  throw UnknownAttribute(fmt::format("unknown bowling attribute '{}'", a));
}

namespace {

template <typename Rated>
std::optional<double> weighted_sum(const Rated& rated, const std::vector<WeightTerm>& terms) {
  double sum = 0.0;
  for (const auto& t : terms) {
    const Rating r = rating_of(rated, t.attribute);
    if (r.missing) return std::nullopt;
    sum += t.sign * t.weight * r.value;
  }
  return sum;
}

}  // namespace

std::optional<double> derived_batting(const RatedBatting& rated, DerivedKind kind,
                                      const WeightVectors& weights) {
  return weighted_sum(rated, weights.terms(Facet::Batting, kind));
}

std::optional<double> derived_bowling(const RatedBowling& rated, DerivedKind kind,
                                      const WeightVectors& weights) {
  return weighted_sum(rated, weights.terms(Facet::Bowling, kind));
}

}  // namespace crickpred::features
