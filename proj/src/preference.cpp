// Copyright 2026 The prefrank Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prefrank/preference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace prefrank {

InstanceSet::InstanceSet(std::span<const std::string> labels) {
  for (const auto& l : labels) {
    if (find(l)) throw std::invalid_argument("duplicate instance label: " + l);
    intern(l);
  }
}

Index InstanceSet::intern(std::string_view label) {
  std::string key(label);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const Index id = size();
  index_.emplace(key, id);
  labels_.push_back(std::move(key));
  return id;
}

std::optional<Index> InstanceSet::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Index InstanceSet::at(std::string_view label) const {
  auto id = find(label);
  if (!id) throw std::out_of_range("unknown instance label: " + std::string(label));
  return *id;
}

PreferenceMatrix::PreferenceMatrix(Index n, double fill)
    : values_(Eigen::MatrixXd::Constant(n, n, fill)) {
  values_.diagonal().setZero();
}

PreferenceMatrix::PreferenceMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw std::invalid_argument("preference matrix must be square");
  }
  values_.diagonal().setZero();
  if (!values_.allFinite() || values_.minCoeff() < 0.0 || values_.maxCoeff() > 1.0) {
    throw std::invalid_argument("preference values must lie in [0, 1]");
  }
}

double PreferenceMatrix::complement_error() const {
  const Index n = size();
  if (n < 2) return 0.0;
  Eigen::MatrixXd sum = values_ + values_.transpose();
  sum.diagonal().setOnes();
  return (sum.array() - 1.0).abs().maxCoeff();
}

void Feedback::add(Index winner, Index loser, double weight) {
  if (winner == loser) throw std::invalid_argument("feedback pair with winner == loser");
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw std::invalid_argument("feedback weight must be positive");
  }
  pairs_.push_back({winner, loser, weight});
  total_weight_ += weight;
}

TotalOrder TotalOrder::from_top_down(std::vector<Index> top_down) {
  const auto n = static_cast<Index>(top_down.size());
  std::vector<Index> rank(top_down.size(), 0);
  for (Index pos = 0; pos < n; ++pos) {
    const Index u = top_down[static_cast<std::size_t>(pos)];
    if (u < 0 || u >= n || rank[static_cast<std::size_t>(u)] != 0) {
      throw std::invalid_argument("top-down sequence is not a permutation");
    }
    rank[static_cast<std::size_t>(u)] = n - pos;
  }
  TotalOrder out;
  out.top_down_ = std::move(top_down);
  out.rank_ = std::move(rank);
  return out;
}

TotalOrder TotalOrder::from_ranks(std::vector<Index> ranks) {
  const auto n = static_cast<Index>(ranks.size());
  std::vector<Index> top_down(ranks.size(), -1);
  for (Index u = 0; u < n; ++u) {
    const Index r = ranks[static_cast<std::size_t>(u)];
    if (r < 1 || r > n || top_down[static_cast<std::size_t>(n - r)] != -1) {
      throw std::invalid_argument("ranks are not a bijection onto 1..n");
    }
    top_down[static_cast<std::size_t>(n - r)] = u;
  }
  return from_top_down(std::move(top_down));
}

double ReducedGraph::total_weight() const {
  double total = 0.0;
  for (const auto& edges : out) {
    for (const auto& e : edges) total += e.weight;
  }
  return total;
}

PreferenceMatrix ReducedGraph::to_dense() const {
  PreferenceMatrix dense(size(), 0.0);
  for (Index u = 0; u < size(); ++u) {
    for (const auto& e : out[static_cast<std::size_t>(u)]) dense.set(u, e.to, e.weight);
  }
  return dense;
}

PreferenceMatrix induce_preference(const OrderingFunction& f) {
  const Index n = f.size();
  PreferenceMatrix r(n, 0.5);
  for (Index u = 0; u < n; ++u) {
    if (f[u].is_bottom()) continue;
    for (Index v = u + 1; v < n; ++v) {
      if (f[v].is_bottom()) continue;
      if (f[u].value() > f[v].value()) {
        r.set(u, v, 1.0);
        r.set(v, u, 0.0);
      } else if (f[u].value() < f[v].value()) {
        r.set(u, v, 0.0);
        r.set(v, u, 1.0);
      }
    }
  }
  return r;
}

PreferenceMatrix combine(std::span<const double> weights,
                         std::span<const PreferenceMatrix> prefs) {
  if (weights.size() != prefs.size() || prefs.empty()) {
    throw std::invalid_argument("combine: need one weight per matrix");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("combine: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kComplementTolerance) {
    throw std::invalid_argument("combine: weights must sum to 1");
  }
  const Index n = prefs.front().size();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < prefs.size(); ++i) {
    if (prefs[i].size() != n) throw std::invalid_argument("combine: dimension mismatch");
    acc.noalias() += weights[i] * prefs[i].values();
  }
  // Rounding can push a convex combination a hair outside [0, 1].
  return PreferenceMatrix(acc.cwiseMax(0.0).cwiseMin(1.0));
}

PreferenceMatrix combine(const Eigen::VectorXd& weights,
                         std::span<const PreferenceMatrix> prefs) {
  return combine(std::span<const double>(weights.data(), static_cast<std::size_t>(weights.size())),
                 prefs);
}

namespace {

void require_same_size(const TotalOrder& order, const PreferenceMatrix& pref) {
  if (order.size() != pref.size()) {
    throw std::invalid_argument("order and preference matrix cover different instance sets");
  }
}

}  // namespace

double agree(const TotalOrder& order, const PreferenceMatrix& pref) {
  require_same_size(order, pref);
  const auto& seq = order.top_down();
  double total = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) total += pref(seq[i], seq[j]);
  }
  return total;
}

double disagree(const TotalOrder& order, const PreferenceMatrix& pref) {
  require_same_size(order, pref);
  const auto& seq = order.top_down();
  double total = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) total += 1.0 - pref(seq[i], seq[j]);
  }
  return total;
}

double loss(const PreferenceMatrix& pref, const Feedback& feedback) {
  if (feedback.empty()) throw std::invalid_argument("loss is undefined for empty feedback");
  double agreed = 0.0;
  for (const auto& p : feedback.pairs()) {
    if (p.winner >= pref.size() || p.loser >= pref.size()) {
      throw std::invalid_argument("feedback refers to an instance outside the matrix");
    }
    agreed += p.weight * pref(p.winner, p.loser);
  }
  return std::clamp(1.0 - agreed / feedback.total_weight(), 0.0, 1.0);
}

double order_loss(const TotalOrder& order, const Feedback& feedback) {
  if (feedback.empty()) throw std::invalid_argument("loss is undefined for empty feedback");
  double violated = 0.0;
  for (const auto& p : feedback.pairs()) {
    if (!order.above(p.winner, p.loser)) violated += p.weight;
  }
  return violated / feedback.total_weight();
}

ReducedGraph reduce(const PreferenceMatrix& pref) {
  const Index n = pref.size();
  ReducedGraph g;
  g.out.resize(static_cast<std::size_t>(n));
  for (Index u = 0; u < n; ++u) {
    for (Index v = u + 1; v < n; ++v) {
      const double d = pref(u, v) - pref(v, u);
      if (d > 0.0) {
        g.out[static_cast<std::size_t>(u)].push_back({v, d});
      } else if (d < 0.0) {
        g.out[static_cast<std::size_t>(v)].push_back({u, -d});
      }
    }
  }
  for (auto& edges : g.out) {
    std::sort(edges.begin(), edges.end(),
              [](const ReducedEdge& a, const ReducedEdge& b) { return a.to < b.to; });
  }
  return g;
}

double reduced_agreement(const TotalOrder& order, const PreferenceMatrix& pref) {
  require_same_size(order, pref);
  const auto& seq = order.top_down();
  double total = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      total += std::max(pref(seq[i], seq[j]) - pref(seq[j], seq[i]), 0.0);
    }
  }
  return total;
}

double total_reduced_weight(const PreferenceMatrix& pref) {
  const Index n = pref.size();
  double total = 0.0;
  for (Index u = 0; u < n; ++u) {
    for (Index v = u + 1; v < n; ++v) total += std::abs(pref(u, v) - pref(v, u));
  }
  return total;
}

}  // namespace prefrank
