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

// Core domain types: interned instance sets, ordering functions, dense
// preference matrices, feedback and total orders, together with the
// agreement, disagreement and loss measures defined over them.

#ifndef PREFRANK_PREFERENCE_HPP_
#define PREFRANK_PREFERENCE_HPP_

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace prefrank {

using Index = Eigen::Index;

inline constexpr double kComplementTolerance = 1e-9;

// Bidirectional label <-> dense index map. Indices are assigned in order of
// first insertion and are always contiguous 0..size()-1.
class InstanceSet {
 public:
  InstanceSet() = default;
  explicit InstanceSet(std::span<const std::string> labels);

  // Returns the existing index for `label` or appends it.
  Index intern(std::string_view label);
  std::optional<Index> find(std::string_view label) const;
  Index at(std::string_view label) const;  // throws std::out_of_range

  const std::string& label(Index i) const { return labels_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& labels() const { return labels_; }
  Index size() const { return static_cast<Index>(labels_.size()); }

  friend bool operator==(const InstanceSet& a, const InstanceSet& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Index> index_;
};

// A point on the score scale, or the incomparable "unranked" symbol.
class Score {
 public:
  constexpr Score() = default;  // Bottom
  constexpr Score(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr Score bottom() { return Score(); }

  constexpr bool is_bottom() const { return !value_.has_value(); }
  constexpr double value() const { return *value_; }

  friend constexpr bool operator==(const Score&, const Score&) = default;

 private:
  std::optional<double> value_;
};

// Scores indexed by interned instance id; total over the instance set.
struct OrderingFunction {
  std::vector<Score> scores;

  OrderingFunction() = default;
  explicit OrderingFunction(std::vector<Score> s) : scores(std::move(s)) {}

  Index size() const { return static_cast<Index>(scores.size()); }
  const Score& operator[](Index i) const { return scores[static_cast<std::size_t>(i)]; }
};

// Dense pairwise preference function. Entry (u, v) is the degree to which
// u should be ranked above v. The diagonal is kept at 0 and never read.
class PreferenceMatrix {
 public:
  PreferenceMatrix() = default;
  // All off-diagonal entries equal to `fill`.
  explicit PreferenceMatrix(Index n, double fill = 0.5);
  // Validates 0 <= values(u,v) <= 1 off the diagonal; throws
  // std::invalid_argument otherwise.
  explicit PreferenceMatrix(Eigen::MatrixXd values);

  Index size() const { return values_.rows(); }
  double operator()(Index u, Index v) const { return values_(u, v); }
  // Unchecked write; the caller keeps entries in [0, 1].
  void set(Index u, Index v, double x) { values_(u, v) = x; }

  const Eigen::MatrixXd& values() const { return values_; }

  // max |P(u,v) + P(v,u) - 1| over u != v.
  double complement_error() const;
  bool is_complementary(double tol = kComplementTolerance) const {
    return complement_error() <= tol;
  }

 private:
  Eigen::MatrixXd values_;
};

struct FeedbackPair {
  Index winner;
  Index loser;
  double weight = 1.0;
};

// Pairwise assertions "winner should be ranked above loser". Duplicate pairs
// are kept; they contribute their weights additively.
class Feedback {
 public:
  Feedback() = default;

  // Throws std::invalid_argument on winner == loser or weight <= 0.
  void add(Index winner, Index loser, double weight = 1.0);

  const std::vector<FeedbackPair>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }
  double total_weight() const { return total_weight_; }

 private:
  std::vector<FeedbackPair> pairs_;
  double total_weight_ = 0.0;
};

// Strict total order. rank(u) is in 1..n and a higher rank means u is
// placed above.
class TotalOrder {
 public:
  TotalOrder() = default;

  // `top_down` lists every index 0..n-1 exactly once, best first.
  static TotalOrder from_top_down(std::vector<Index> top_down);
  // `ranks` must be a bijection onto 1..n.
  static TotalOrder from_ranks(std::vector<Index> ranks);

  Index size() const { return static_cast<Index>(top_down_.size()); }
  Index rank(Index u) const { return rank_[static_cast<std::size_t>(u)]; }
  // 1-based position from the top (1 = best).
  Index position(Index u) const { return size() + 1 - rank(u); }
  bool above(Index u, Index v) const { return rank(u) > rank(v); }

  const std::vector<Index>& top_down() const { return top_down_; }
  const std::vector<Index>& ranks() const { return rank_; }

  friend bool operator==(const TotalOrder& a, const TotalOrder& b) {
    return a.top_down_ == b.top_down_;
  }

 private:
  std::vector<Index> top_down_;
  std::vector<Index> rank_;
};

struct ReducedEdge {
  Index to;
  double weight;
};

// Sparse graph left after collapsing each pair {u, v} to at most one edge of
// weight |P(u,v) - P(v,u)| pointing from the stronger side.
struct ReducedGraph {
  std::vector<std::vector<ReducedEdge>> out;

  Index size() const { return static_cast<Index>(out.size()); }
  double total_weight() const;
  // Dense view with missing edges as 0.
  PreferenceMatrix to_dense() const;
};

PreferenceMatrix induce_preference(const OrderingFunction& f);

// Entrywise sum of weights[i] * prefs[i]. Weights must be nonnegative and
// sum to 1 within kComplementTolerance; all matrices must share one size.
PreferenceMatrix combine(std::span<const double> weights,
                         std::span<const PreferenceMatrix> prefs);
PreferenceMatrix combine(const Eigen::VectorXd& weights,
                         std::span<const PreferenceMatrix> prefs);

// Sum of P(u,v) over pairs with u above v.
double agree(const TotalOrder& order, const PreferenceMatrix& pref);
// Sum of 1 - P(u,v) over pairs with u above v.
double disagree(const TotalOrder& order, const PreferenceMatrix& pref);

// Weighted fraction of feedback that `pref` disagrees with. Throws
// std::invalid_argument when the feedback is empty.
double loss(const PreferenceMatrix& pref, const Feedback& feedback);

// Fraction of feedback weight the order itself violates: loss of the 0/1
// preference induced by `order`.
double order_loss(const TotalOrder& order, const Feedback& feedback);

ReducedGraph reduce(const PreferenceMatrix& pref);

// Sum of max{P(u,v) - P(v,u), 0} over pairs with u above v.
double reduced_agreement(const TotalOrder& order, const PreferenceMatrix& pref);
// Sum of max{P(u,v) - P(v,u), 0} over all ordered pairs.
double total_reduced_weight(const PreferenceMatrix& pref);

}  // namespace prefrank

#endif  // PREFRANK_PREFERENCE_HPP_
