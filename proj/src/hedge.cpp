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

#include "prefrank/hedge.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

#include "prefrank/rng.hpp"

namespace prefrank {

namespace {

void validate(const LearnerConfig& config) {
  if (!(config.beta > 0.0 && config.beta < 1.0)) {
    throw std::invalid_argument("beta must lie strictly between 0 and 1");
  }
  if (config.n_experts < 1) throw std::invalid_argument("need at least one expert");
}

}  // namespace

LearnerState init(const LearnerConfig& config) {
  validate(config);
  LearnerState state;
  const Index n = config.n_experts;
  if (config.prior) {
    const Eigen::VectorXd& w = *config.prior;
    if (w.size() != n || (w.array() < 0.0).any() ||
        std::abs(w.sum() - 1.0) > kComplementTolerance) {
      throw std::invalid_argument("prior weights must be a point of the simplex");
    }
    state.weights = w;
  } else {
    state.weights = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  }
  state.cum_loss_per_expert = Eigen::VectorXd::Zero(n);
  return state;
}

Prediction round_predict(const LearnerConfig& config, const LearnerState& state,
                         std::vector<PreferenceMatrix> expert_prefs) {
  if (static_cast<int>(expert_prefs.size()) != config.n_experts ||
      state.weights.size() != config.n_experts) {
    throw std::invalid_argument("expert count does not match the learner");
  }
  Prediction p;
  p.expert_prefs = std::move(expert_prefs);
  p.pref = combine(state.weights, p.expert_prefs);
  OrderingOptions opts = config.ordering;
  opts.seed = derive_seed(opts.seed, {static_cast<std::uint64_t>(state.round)});
  p.order = order_with(p.pref, opts);
  return p;
}

Prediction round_predict(const LearnerConfig& config, const LearnerState& state,
                         std::span<const OrderingFunction> experts) {
  std::vector<PreferenceMatrix> prefs;
  prefs.reserve(experts.size());
  for (const auto& f : experts) prefs.push_back(induce_preference(f));
  return round_predict(config, state, std::move(prefs));
}

LearnerState round_update(const LearnerConfig& config, LearnerState state,
                          const Prediction& prediction, const Feedback& feedback) {
  validate(config);
  ++state.round;
  if (feedback.empty()) return state;

  const Index n = config.n_experts;
  RoundRecord rec;
  rec.t = state.round;
  rec.expert_losses.resize(n);
  for (Index i = 0; i < n; ++i) {
    rec.expert_losses(i) = loss(prediction.expert_prefs[static_cast<std::size_t>(i)], feedback);
  }
  rec.combined_loss = loss(prediction.pref, feedback);
  rec.order_loss = order_loss(prediction.order, feedback);
  rec.disagree_term = disagree(prediction.order, prediction.pref) / feedback.total_weight();
  std::set<std::pair<Index, Index>> seen;
  for (const auto& fp : feedback.pairs()) {
    if (fp.weight != 1.0 || !seen.insert({fp.winner, fp.loser}).second) {
      rec.unit_set_feedback = false;
      break;
    }
  }

  Eigen::VectorXd next(n);
  for (Index i = 0; i < n; ++i) {
    next(i) = std::max(state.weights(i) * std::pow(config.beta, rec.expert_losses(i)), kWeightFloor);
  }
  state.weights = next / next.sum();

  state.cum_loss_combined += rec.combined_loss;
  state.cum_loss_per_expert += rec.expert_losses;
  const auto coeff = bound_coefficients(config.beta);
  rec.min_expert_cum_loss = state.cum_loss_per_expert.minCoeff();
  rec.bound_rhs = coeff.a * rec.min_expert_cum_loss + coeff.c * std::log(static_cast<double>(n));
  state.history.push_back(std::move(rec));
  return state;
}

LearnerState round_update(const LearnerConfig& config, LearnerState state,
                          std::span<const OrderingFunction> experts, const Feedback& feedback) {
  const Prediction p = round_predict(config, state, experts);
  return round_update(config, std::move(state), p, feedback);
}

BoundCoefficients bound_coefficients(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("beta must lie strictly between 0 and 1");
  }
  return {std::log(1.0 / beta) / (1.0 - beta), 1.0 / (1.0 - beta)};
}

Theorem1Audit audit_theorem1(const LearnerConfig& config, const LearnerState& state) {
  if (state.round == 0) throw std::logic_error("no completed rounds to audit");
  const auto coeff = bound_coefficients(config.beta);
  const double lhs = state.cum_loss_combined;
  const double rhs = coeff.a * state.cum_loss_per_expert.minCoeff() +
                     coeff.c * std::log(static_cast<double>(state.weights.size()));
  return {lhs, rhs, lhs <= rhs + 1e-6};
}

bool audit_theorem2(const RoundRecord& record) {
  return record.order_loss <= record.disagree_term + record.combined_loss + 1e-9;
}

}  // namespace prefrank
