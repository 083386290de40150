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

#include "crickpred/learners/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>

#include "crickpred/learners/common.hpp"
#include "crickpred/parallel.hpp"

namespace crickpred::learn {

SvmEncoder SvmEncoder::fit(const Dataset& d) {
  SvmEncoder e;
  const std::size_t f = d.schema.size();
  e.minimum.assign(f, 0.0);
  e.range.assign(f, 0.0);
  for (std::size_t j = 0; j < f; ++j) {
    const auto& spec = d.schema.features[j];
    e.kinds.push_back(spec.kind);
    if (spec.kind == FeatureKind::Categorical) {
      e.encoded_width += spec.tokens.size();
      continue;
    }
    ++e.encoded_width;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& r : d.rows) {
      lo = std::min(lo, r.values[j]);
      hi = std::max(hi, r.values[j]);
    }
    if (d.rows.empty()) lo = hi = 0.0;
    e.minimum[j] = lo;
    e.range[j] = hi - lo;
  }
  return e;
}

std::vector<double> SvmEncoder::transform(const std::vector<double>& values) const {
  std::vector<double> out(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (kinds[j] == FeatureKind::Categorical) {
      out[j] = values[j];
    } else {
      out[j] = range[j] > 0.0 ? (values[j] - minimum[j]) / range[j] : 0.0;
    }
  }
  return out;
}

double SvmEncoder::squared_distance(const double* a, const double* b) const {
  double d = 0.0;
  for (std::size_t j = 0; j < kinds.size(); ++j) {
    if (kinds[j] == FeatureKind::Numeric) {
      const double diff = a[j] - b[j];
      d += diff * diff;
    } else if (a[j] != b[j]) {
      d += (a[j] < 0.0 || b[j] < 0.0) ? 1.0 : 2.0;
    }
  }
  return d;
}

double Svm::kernel(const double* a, const double* b) const {
  return std::exp(-gamma * encoder.squared_distance(a, b));
}

bool Svm::converged() const {
  return std::all_of(machines.begin(), machines.end(), [](const auto& m) { return m.converged; });
}

std::vector<double> Svm::decision_values(const std::vector<double>& values) const {
  const auto x = encoder.transform(values);
  std::vector<double> out;
  out.reserve(machines.size());
  for (const auto& m : machines) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.support.size(); ++i) {
      s += m.coef[i] * kernel(m.support[i].data(), x.data());
    }
    out.push_back(s - m.rho);
  }
  return out;
}

namespace {

struct Tally {
  std::vector<double> votes;
  std::vector<double> margin;
};

Tally tally(const Svm& svm, const std::vector<double>& values) {
  const auto dec = svm.decision_values(values);
  Tally t{std::vector<double>(static_cast<std::size_t>(svm.num_classes), 0.0),
          std::vector<double>(static_cast<std::size_t>(svm.num_classes), 0.0)};
  for (std::size_t k = 0; k < svm.machines.size(); ++k) {
    const auto& m = svm.machines[k];
    const auto p = static_cast<std::size_t>(m.positive - 1);
    const auto n = static_cast<std::size_t>(m.negative - 1);
    t.votes[dec[k] > 0.0 ? p : n] += 1.0;
    t.margin[p] += dec[k];
    t.margin[n] -= dec[k];
  }
  return t;
}

}  // namespace

std::vector<double> Svm::predict_proba(const std::vector<double>& values) const {
  auto t = tally(*this, values);
  double total = 0.0;
  for (double v : t.votes) total += v;
  if (total == 0.0) {
    // A single-class model: every machine is absent.
    for (auto& v : t.votes) v = 0.0;
    t.votes[static_cast<std::size_t>(predict(values) - 1)] = 1.0;
    return t.votes;
  }
  for (auto& v : t.votes) v /= total;
  return t.votes;
}

int Svm::predict(const std::vector<double>& values) const {
  const auto t = tally(*this, values);
  if (machines.empty()) return single_class;
  std::size_t best = 0;
  for (std::size_t c = 1; c < t.votes.size(); ++c) {
    if (t.votes[c] > t.votes[best] ||
        (t.votes[c] == t.votes[best] && t.margin[c] > t.margin[best])) {
      best = c;
    }
  }
  return static_cast<int>(best) + 1;
}

namespace {

// Kernel rows Q_i(t) = y_i y_t K(x_i, x_t), computed on demand and kept in an
// LRU cache bounded by a row budget.
class KernelCache {
 public:
  KernelCache(const Svm& svm, const std::vector<std::vector<double>>& rows,
              const std::vector<int>& y, std::size_t budget_rows)
      : svm_(svm), rows_(rows), y_(y), budget_(std::max<std::size_t>(2, budget_rows)),
        cache_(rows.size()), where_(rows.size()) {}

  const std::vector<double>& row(std::size_t i) {
    if (!cache_[i].empty()) {
      lru_.splice(lru_.begin(), lru_, where_[i]);
      return cache_[i];
    }
    if (lru_.size() >= budget_) {
      const std::size_t victim = lru_.back();
      lru_.pop_back();
      std::vector<double>().swap(cache_[victim]);
    }
    auto& r = cache_[i];
    r.resize(rows_.size());
    const double* xi = rows_[i].data();
    for (std::size_t t = 0; t < rows_.size(); ++t) {
      r[t] = static_cast<double>(y_[i] * y_[t]) * svm_.kernel(xi, rows_[t].data());
    }
    lru_.push_front(i);
    where_[i] = lru_.begin();
    return r;
  }

 private:
  const Svm& svm_;
  const std::vector<std::vector<double>>& rows_;
  const std::vector<int>& y_;
  std::size_t budget_;
  std::vector<std::vector<double>> cache_;
  std::list<std::size_t> lru_;
  std::vector<std::list<std::size_t>::iterator> where_;
};

constexpr double kTau = 1e-12;

}  // namespace

BinarySolution solve_binary(const Svm& shape, const std::vector<std::vector<double>>& rows,
                            const std::vector<int>& y, const SvmConfig& cfg) {
  const std::size_t n = rows.size();
  const double C = cfg.C;
  const long max_iter =
      cfg.max_iter > 0 ? cfg.max_iter : std::max<long>(10'000'000, 100 * static_cast<long>(n));
  const auto budget_bytes = cfg.cache_mb * 1024.0 * 1024.0 / std::max(1u, cfg.jobs);
  const auto budget_rows =
      static_cast<std::size_t>(budget_bytes / (static_cast<double>(std::max<std::size_t>(n, 1)) * 8.0));
  KernelCache cache(shape, rows, y, budget_rows);

  BinarySolution s;
  s.y = y;
  s.alpha.assign(n, 0.0);
  std::vector<double> G(n, -1.0);
  std::vector<double>& a = s.alpha;
  const double inf = std::numeric_limits<double>::infinity();
  auto in_up = [&](std::size_t t) { return (y[t] == 1 && a[t] < C) || (y[t] == -1 && a[t] > 0.0); };
  auto in_low = [&](std::size_t t) { return (y[t] == 1 && a[t] > 0.0) || (y[t] == -1 && a[t] < C); };

  s.converged = false;
  long iter = 0;
  while (iter < max_iter) {
    double gmax = -inf;
    std::ptrdiff_t i = -1;
    for (std::size_t t = 0; t < n; ++t) {
      if (in_up(t) && -y[t] * G[t] >= gmax) {
        gmax = -y[t] * G[t];
        i = static_cast<std::ptrdiff_t>(t);
      }
    }
    double gmax2 = -inf, obj_min = inf;
    std::ptrdiff_t j = -1;
    const std::vector<double>* qi = i >= 0 ? &cache.row(static_cast<std::size_t>(i)) : nullptr;
    for (std::size_t t = 0; t < n; ++t) {
      if (!in_low(t)) continue;
      const double yg = y[t] * G[t];
      gmax2 = std::max(gmax2, yg);
      const double grad_diff = gmax + yg;
      if (grad_diff > 0.0 && qi) {
        // K(x,x) = 1 for the RBF kernel.
        double quad = 2.0 - 2.0 * y[static_cast<std::size_t>(i)] * y[t] * (*qi)[t];
        if (quad <= 0.0) quad = kTau;
        const double obj = -(grad_diff * grad_diff) / quad;
        if (obj <= obj_min) {
          obj_min = obj;
          j = static_cast<std::ptrdiff_t>(t);
        }
      }
    }
    if (gmax + gmax2 < cfg.tol || j < 0) {
      s.converged = true;
      break;
    }
    ++iter;
    const auto ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(j);
    const std::vector<double>& Qi = cache.row(ii);
    const std::vector<double>& Qj = cache.row(jj);
    const double old_ai = a[ii], old_aj = a[jj];
    if (y[ii] != y[jj]) {
      double quad = 2.0 + 2.0 * Qi[jj];
      if (quad <= 0.0) quad = kTau;
      const double delta = (-G[ii] - G[jj]) / quad;
      const double diff = a[ii] - a[jj];
      a[ii] += delta;
      a[jj] += delta;
      if (diff > 0.0) {
        if (a[jj] < 0.0) { a[jj] = 0.0; a[ii] = diff; }
      } else {
        if (a[ii] < 0.0) { a[ii] = 0.0; a[jj] = -diff; }
      }
      if (diff > 0.0) {
        if (a[ii] > C) { a[ii] = C; a[jj] = C - diff; }
      } else {
        if (a[jj] > C) { a[jj] = C; a[ii] = C + diff; }
      }
    } else {
      double quad = 2.0 - 2.0 * Qi[jj];
      if (quad <= 0.0) quad = kTau;
      const double delta = (G[ii] - G[jj]) / quad;
      const double sum = a[ii] + a[jj];
      a[ii] -= delta;
      a[jj] += delta;
      if (sum > C) {
        if (a[ii] > C) { a[ii] = C; a[jj] = sum - C; }
      } else {
        if (a[jj] < 0.0) { a[jj] = 0.0; a[ii] = sum; }
      }
      if (sum > C) {
        if (a[jj] > C) { a[jj] = C; a[ii] = sum - C; }
      } else {
        if (a[ii] < 0.0) { a[ii] = 0.0; a[jj] = sum; }
      }
    }
    const double dai = a[ii] - old_ai, daj = a[jj] - old_aj;
    // The budget holds at least two rows, so fetching Qj never evicts Qi.
    for (std::size_t t = 0; t < n; ++t) G[t] += Qi[t] * dai + Qj[t] * daj;
  }
  s.iterations = iter;

  double ub = inf, lb = -inf, sum_free = 0.0;
  long n_free = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * G[t];
    if (a[t] >= C) {
      if (y[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (a[t] <= 0.0) {
      if (y[t] == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  s.rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2.0;
  return s;
}

Svm train_svm(const Dataset& d, const SvmConfig& cfg) {
  require_trainable(d);
  if (!(cfg.C > 0.0)) throw PreconditionError("SVM C must be positive");
  Svm svm;
  svm.num_classes = d.schema.num_classes;
  svm.encoder = SvmEncoder::fit(d);
  svm.C = cfg.C;
  svm.gamma = cfg.gamma > 0.0 ? cfg.gamma
                              : 1.0 / static_cast<double>(std::max<std::size_t>(1, svm.encoder.encoded_width));
  const auto m = static_cast<std::size_t>(d.schema.num_classes);
  std::vector<std::vector<std::size_t>> members(m);
  for (std::size_t i = 0; i < d.rows.size(); ++i) {
    members[static_cast<std::size_t>(d.rows[i].label - 1)].push_back(i);
  }
  std::vector<std::vector<double>> encoded(d.rows.size());
  for (std::size_t i = 0; i < d.rows.size(); ++i) encoded[i] = svm.encoder.transform(d.rows[i].values);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = p + 1; q < m; ++q) {
      if (!members[p].empty() && !members[q].empty()) pairs.emplace_back(p, q);
    }
  }
  for (std::size_t c = 0; c < m; ++c) {
    if (!members[c].empty()) {
      svm.single_class = static_cast<int>(c) + 1;
      break;
    }
  }
  svm.machines.resize(pairs.size());
  SvmConfig inner = cfg;
  inner.jobs = std::min<unsigned>(std::max(1u, cfg.jobs), static_cast<unsigned>(std::max<std::size_t>(1, pairs.size())));
  parallel_for(pairs.size(), cfg.jobs, [&](std::size_t k) {
    const auto [p, q] = pairs[k];
    std::vector<std::vector<double>> rows;
    std::vector<int> y;
    for (auto i : members[p]) { rows.push_back(encoded[i]); y.push_back(1); }
    for (auto i : members[q]) { rows.push_back(encoded[i]); y.push_back(-1); }
    const auto sol = solve_binary(svm, rows, y, inner);
    BinarySvm& b = svm.machines[k];
    b.positive = static_cast<int>(p) + 1;
    b.negative = static_cast<int>(q) + 1;
    b.rho = sol.rho;
    b.iterations = sol.iterations;
    b.converged = sol.converged;
    for (std::size_t t = 0; t < rows.size(); ++t) {
      if (sol.alpha[t] > 0.0) {
        b.support.push_back(std::move(rows[t]));
        b.coef.push_back(y[t] * sol.alpha[t]);
      }
    }
  });
  return svm;
}

}  // namespace crickpred::learn
