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

#include "crickpred/learners/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crickpred/learners/common.hpp"
#include "crickpred/learners/entropy.hpp"
#include "crickpred/random.hpp"

namespace crickpred::learn {

const std::vector<double>& Tree::distribution(const std::vector<double>& values) const {
  std::size_t at = 0;
  for (;;) {
    const TreeNode& n = nodes[at];
    int next = -1;
    switch (n.kind) {
      case TreeNode::Kind::Leaf:
        return n.distribution;
      case TreeNode::Kind::Threshold:
        next = n.children[values[static_cast<std::size_t>(n.feature)] <= n.threshold ? 0 : 1];
        break;
      case TreeNode::Kind::OneVsRest:
        next = n.children[values[static_cast<std::size_t>(n.feature)] == n.threshold ? 0 : 1];
        break;
      case TreeNode::Kind::Multiway: {
        const double v = values[static_cast<std::size_t>(n.feature)];
        const std::size_t unknown = n.children.size() - 1;
        const std::size_t slot =
            v >= 0.0 && v < static_cast<double>(unknown) ? static_cast<std::size_t>(v) : unknown;
        next = n.children[slot];
        break;
      }
    }
    if (next < 0) return n.distribution;
    at = static_cast<std::size_t>(next);
  }
}

std::size_t Tree::depth() const {
  std::vector<std::size_t> d(nodes.size(), 0);
  std::size_t best = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    best = std::max(best, d[i]);
    for (int c : nodes[i].children) {
      if (c >= 0) d[static_cast<std::size_t>(c)] = d[i] + 1;
    }
  }
  return best;
}

std::size_t Tree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [](const auto& n) {
    return n.kind == TreeNode::Kind::Leaf;
  }));
}

namespace {

constexpr double kMinImprovement = 1e-12;

struct Split {
  TreeNode::Kind kind = TreeNode::Kind::Leaf;
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
  double ratio = 0.0;
};

// Midpoint strictly below b so that a goes left and b goes right.
double midpoint(double a, double b) {
  const double m = a + (b - a) / 2.0;
  return m < b ? m : a;
}

std::size_t token_slot(double v, std::size_t tokens) {
  return v >= 0.0 && v < static_cast<double>(tokens) ? static_cast<std::size_t>(v) : tokens;
}

// Shared scaffolding: labels, node creation and the depth-first work stack.
class Builder {
 public:
  Builder(const Dataset& d) : d_(d), m_(static_cast<std::size_t>(d.schema.num_classes)) {
    tree_.num_classes = d.schema.num_classes;
  }

 protected:
  std::size_t label(std::size_t row) const {
    return static_cast<std::size_t>(d_.rows[row].label - 1);
  }
  double value(std::size_t row, int feature) const {
    return d_.rows[row].values[static_cast<std::size_t>(feature)];
  }

  std::vector<double> counts(const std::vector<std::size_t>& rows) const {
    std::vector<double> c(m_, 0.0);
    for (auto r : rows) c[label(r)] += 1.0;
    return c;
  }

  static bool pure(const std::vector<double>& c) {
    return std::count_if(c.begin(), c.end(), [](double x) { return x > 0.0; }) <= 1;
  }

  int add_node(const std::vector<double>& c) {
    TreeNode n;
    const double total = std::accumulate(c.begin(), c.end(), 0.0);
    n.distribution.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) n.distribution[i] = c[i] / total;
    tree_.nodes.push_back(std::move(n));
    return static_cast<int>(tree_.nodes.size() - 1);
  }

  // Partition rows by the chosen split; returns one row list per child slot.
  std::vector<std::vector<std::size_t>> partition(const std::vector<std::size_t>& rows,
                                                  const Split& s) const {
    std::vector<std::vector<std::size_t>> out;
    if (s.kind == TreeNode::Kind::Multiway) {
      const std::size_t t = d_.schema.features[static_cast<std::size_t>(s.feature)].tokens.size();
      out.resize(t + 1);
      for (auto r : rows) out[token_slot(value(r, s.feature), t)].push_back(r);
    } else {
      out.resize(2);
      for (auto r : rows) {
        const double v = value(r, s.feature);
        const bool left = s.kind == TreeNode::Kind::Threshold ? v <= s.threshold : v == s.threshold;
        out[left ? 0 : 1].push_back(r);
      }
    }
    return out;
  }

  template <typename ChooseFn>
  Tree grow(std::vector<std::size_t> root_rows, int min_leaf, int max_depth, ChooseFn choose) {
    struct Work {
      int node;
      std::vector<std::size_t> rows;
      int depth;
    };
    std::vector<Work> stack;
    stack.push_back({add_node(counts(root_rows)), std::move(root_rows), 0});
    while (!stack.empty()) {
      Work w = std::move(stack.back());
      stack.pop_back();
      const auto c = counts(w.rows);
      if (pure(c) || w.rows.size() < 2 * static_cast<std::size_t>(min_leaf) ||
          (max_depth > 0 && w.depth >= max_depth)) {
        continue;
      }
      const Split s = choose(w.rows, c);
      if (s.kind == TreeNode::Kind::Leaf) continue;
      auto parts = partition(w.rows, s);
      std::vector<int> children(parts.size(), -1);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!parts[i].empty()) children[i] = add_node(counts(parts[i]));
      }
      TreeNode& n = tree_.nodes[static_cast<std::size_t>(w.node)];
      n.kind = s.kind;
      n.feature = s.feature;
      n.threshold = s.threshold;
      n.children = children;
      // Push in reverse so the first child is expanded first.
      for (std::size_t i = parts.size(); i-- > 0;) {
        if (children[i] >= 0) stack.push_back({children[i], std::move(parts[i]), w.depth + 1});
      }
    }
    return std::move(tree_);
  }

  const Dataset& d_;
  std::size_t m_;
  Tree tree_;
};

double entropy_of(const std::vector<double>& c, double n) {
  double h = 0.0;
  for (double x : c) {
    if (x > 0.0) {
      const double p = x / n;
      h -= p * std::log2(p);
    }
  }
  return h;
}

class C45Builder : public Builder {
 public:
  C45Builder(const Dataset& d, const C45Config& cfg) : Builder(d), cfg_(cfg) {}

  Tree run() {
    std::vector<std::size_t> rows(d_.rows.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return grow(std::move(rows), cfg_.min_leaf, cfg_.max_depth,
                [this](const auto& rows, const auto& c) { return choose(rows, c); });
  }

 private:
  Split choose(const std::vector<std::size_t>& rows, const std::vector<double>& parent) const {
    const double n = static_cast<double>(rows.size());
    const double h = entropy_of(parent, n);
    std::vector<Split> candidates;
    for (std::size_t f = 0; f < d_.schema.size(); ++f) {
      const auto feature = static_cast<int>(f);
      const Split s = d_.schema.features[f].kind == FeatureKind::Numeric
                          ? best_threshold(rows, feature, h)
                          : multiway(rows, feature, h);
      if (s.kind != TreeNode::Kind::Leaf && s.gain > kMinImprovement) candidates.push_back(s);
    }
    if (candidates.empty()) return {};
    double mean_gain = 0.0;
    for (const auto& s : candidates) mean_gain += s.gain;
    mean_gain /= static_cast<double>(candidates.size());
    Split best;
    for (const auto& s : candidates) {
      if (s.gain + kMinImprovement < mean_gain) continue;
      if (best.kind == TreeNode::Kind::Leaf || s.ratio > best.ratio ||
          (s.ratio == best.ratio && s.gain > best.gain)) {
        best = s;
      }
    }
    return best;
  }

  Split best_threshold(const std::vector<std::size_t>& rows, int feature, double h) const {
    std::vector<std::pair<double, std::size_t>> v;
    v.reserve(rows.size());
    for (auto r : rows) v.emplace_back(value(r, feature), label(r));
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    const auto min_leaf = static_cast<std::size_t>(cfg_.min_leaf);
    std::vector<double> left(m_, 0.0), right(m_, 0.0);
    for (const auto& [x, y] : v) right[y] += 1.0;
    Split best;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      left[v[i].second] += 1.0;
      right[v[i].second] -= 1.0;
      if (v[i].first == v[i + 1].first) continue;
      const std::size_t nl = i + 1, nr = v.size() - nl;
      if (nl < min_leaf || nr < min_leaf) continue;
      const double wl = static_cast<double>(nl) / n, wr = static_cast<double>(nr) / n;
      const double gain = h - wl * entropy_of(left, static_cast<double>(nl)) -
                          wr * entropy_of(right, static_cast<double>(nr));
      if (best.kind == TreeNode::Kind::Leaf || gain > best.gain) {
        best.kind = TreeNode::Kind::Threshold;
        best.feature = feature;
        best.threshold = midpoint(v[i].first, v[i + 1].first);
        best.gain = gain;
        best.ratio = gain / (-wl * std::log2(wl) - wr * std::log2(wr));
      }
    }
    return best;
  }

  Split multiway(const std::vector<std::size_t>& rows, int feature, double h) const {
    const std::size_t t = d_.schema.features[static_cast<std::size_t>(feature)].tokens.size();
    std::vector<std::vector<double>> groups(t + 1, std::vector<double>(m_, 0.0));
    std::vector<std::size_t> sizes(t + 1, 0);
    for (auto r : rows) {
      const auto slot = token_slot(value(r, feature), t);
      groups[slot][label(r)] += 1.0;
      ++sizes[slot];
    }
    std::size_t present = 0, big = 0;
    for (auto s : sizes) {
      present += s > 0;
      big += s >= static_cast<std::size_t>(cfg_.min_leaf);
    }
    if (present < 2 || big < 2) return {};
    const double n = static_cast<double>(rows.size());
    double children = 0.0, split_info = 0.0;
    for (std::size_t g = 0; g <= t; ++g) {
      if (sizes[g] == 0) continue;
      const double w = static_cast<double>(sizes[g]) / n;
      children += w * entropy_of(groups[g], static_cast<double>(sizes[g]));
      split_info -= w * std::log2(w);
    }
    Split s;
    s.kind = TreeNode::Kind::Multiway;
    s.feature = feature;
    s.gain = h - children;
    s.ratio = s.gain / split_info;
    return s;
  }

  C45Config cfg_;
};

class CartBuilder : public Builder {
 public:
  CartBuilder(const Dataset& d, const CartConfig& cfg) : Builder(d), cfg_(cfg), rng_(cfg.seed) {}

  Tree run(std::vector<std::size_t> rows) {
    return grow(std::move(rows), cfg_.min_leaf, cfg_.max_depth,
                [this](const auto& r, const auto& c) { return choose(r, c); });
  }

 private:
  // Weighted child impurity times n: sum over children of (n_k - sum c^2 / n_k).
  static double impurity_mass(double sq, double nk) { return nk > 0.0 ? nk - sq / nk : 0.0; }

  Split choose(const std::vector<std::size_t>& rows, const std::vector<double>& parent) {
    const std::size_t f_count = d_.schema.size();
    std::vector<std::size_t> features;
    const auto mtry = static_cast<std::size_t>(cfg_.mtry);
    if (mtry == 0 || mtry >= f_count) {
      features.resize(f_count);
      std::iota(features.begin(), features.end(), std::size_t{0});
    } else {
      features = rng_.sample_without_replacement(f_count, mtry);
      std::sort(features.begin(), features.end());
    }
    const double n = static_cast<double>(rows.size());
    double parent_sq = 0.0;
    for (double c : parent) parent_sq += c * c;
    const double parent_mass = impurity_mass(parent_sq, n);
    Split best;
    auto consider = [&](TreeNode::Kind kind, int feature, double threshold, double mass) {
      const double decrease = (parent_mass - mass) / n;
      if (decrease > kMinImprovement &&
          (best.kind == TreeNode::Kind::Leaf || decrease > best.gain)) {
        best = {kind, feature, threshold, decrease, 0.0};
      }
    };
    const auto min_leaf = static_cast<std::size_t>(cfg_.min_leaf);
    std::vector<std::pair<double, std::size_t>> v;
    for (auto f : features) {
      const auto feature = static_cast<int>(f);
      if (d_.schema.features[f].kind == FeatureKind::Numeric) {
        v.clear();
        for (auto r : rows) v.emplace_back(value(r, feature), label(r));
        std::sort(v.begin(), v.end());
        std::vector<double> left(m_, 0.0), right = parent;
        double lsq = 0.0, rsq = parent_sq;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
          const std::size_t y = v[i].second;
          lsq += 2.0 * left[y] + 1.0;
          rsq -= 2.0 * right[y] - 1.0;
          left[y] += 1.0;
          right[y] -= 1.0;
          if (v[i].first == v[i + 1].first) continue;
          const std::size_t nl = i + 1, nr = v.size() - nl;
          if (nl < min_leaf || nr < min_leaf) continue;
          consider(TreeNode::Kind::Threshold, feature, midpoint(v[i].first, v[i + 1].first),
                   impurity_mass(lsq, static_cast<double>(nl)) +
                       impurity_mass(rsq, static_cast<double>(nr)));
        }
      } else {
        const std::size_t t = d_.schema.features[f].tokens.size();
        std::vector<std::vector<double>> groups(t + 1, std::vector<double>(m_, 0.0));
        std::vector<std::size_t> sizes(t + 1, 0);
        for (auto r : rows) {
          const auto slot = token_slot(value(r, feature), t);
          groups[slot][label(r)] += 1.0;
          ++sizes[slot];
        }
        for (std::size_t g = 0; g < t; ++g) {
          const std::size_t nl = sizes[g], nr = rows.size() - nl;
          if (nl == 0 || nr == 0 || nl < min_leaf || nr < min_leaf) continue;
          double lsq = 0.0, rsq = 0.0;
          for (std::size_t c = 0; c < m_; ++c) {
            const double l = groups[g][c], r = parent[c] - l;
            lsq += l * l;
            rsq += r * r;
          }
          consider(TreeNode::Kind::OneVsRest, feature, static_cast<double>(g),
                   impurity_mass(lsq, static_cast<double>(nl)) +
                       impurity_mass(rsq, static_cast<double>(nr)));
        }
      }
    }
    return best;
  }

  CartConfig cfg_;
  Rng rng_;
};

}  // namespace

Tree train_c45(const Dataset& d, const C45Config& cfg) {
  require_trainable(d);
  if (cfg.min_leaf < 1) throw PreconditionError("min_leaf must be at least 1");
  return C45Builder(d, cfg).run();
}

Tree train_cart(const Dataset& d, const CartConfig& cfg) {
  std::vector<std::size_t> rows(d.rows.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return train_cart(d, std::move(rows), cfg);
}

Tree train_cart(const Dataset& d, std::vector<std::size_t> rows, const CartConfig& cfg) {
  require_trainable(d);
  if (rows.empty()) throw EmptyDataset("cannot grow a tree from no rows");
  if (cfg.min_leaf < 1) throw PreconditionError("min_leaf must be at least 1");
  return CartBuilder(d, cfg).run(std::move(rows));
}

}  // namespace crickpred::learn
