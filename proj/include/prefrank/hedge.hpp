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

// On-line multiplicative-weights allocation over ranking experts, with
// audits of the cumulative loss bound and the per-round triangle inequality.
//
// Usage per round:
//
//   Prediction p = round_predict(config, state, experts);
//   ... present p.order, collect feedback ...
//   state = round_update(config, std::move(state), p, feedback);

#ifndef PREFRANK_HEDGE_HPP_
#define PREFRANK_HEDGE_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prefrank/ordering.hpp"
#include "prefrank/preference.hpp"

namespace prefrank {

// Weights below this are raised to it before renormalizing.
inline constexpr double kWeightFloor = 1e-300;

struct LearnerConfig {
  double beta = 0.5;  // open interval (0, 1)
  int n_experts = 1;
  OrderingOptions ordering;
  // Optional starting point on the simplex; uniform 1/N when absent.
  std::optional<Eigen::VectorXd> prior;
};

struct RoundRecord {
  int t = 0;  // 1-based
  double combined_loss = 0.0;       // Loss(PREF^t, F^t)
  Eigen::VectorXd expert_losses;    // Loss(R_i^t, F^t)
  double order_loss = 0.0;          // Loss(R_order, F^t)
  double disagree_term = 0.0;       // DISAGREE(order, PREF^t) / |F^t|
  double min_expert_cum_loss = 0.0; // after this round
  double bound_rhs = 0.0;           // cumulative-loss bound after this round
  // Unit weights and no repeated ordered pair. The per-round triangle
  // inequality is only guaranteed for such feedback.
  bool unit_set_feedback = true;
};

struct LearnerState {
  Eigen::VectorXd weights;
  int round = 0;
  double cum_loss_combined = 0.0;
  Eigen::VectorXd cum_loss_per_expert;
  std::vector<RoundRecord> history;  // rounds with nonempty feedback only
};

struct Prediction {
  std::vector<PreferenceMatrix> expert_prefs;
  PreferenceMatrix pref;
  TotalOrder order;
};

// Throws std::invalid_argument for beta outside (0, 1), N < 1 or a prior
// that is not a point of the simplex.
LearnerState init(const LearnerConfig& config);

// Induces each expert's preference, combines them with the current weights
// and orders the instances. Does not modify the state.
Prediction round_predict(const LearnerConfig& config, const LearnerState& state,
                         std::span<const OrderingFunction> experts);
// Same, starting from already induced expert preferences.
Prediction round_predict(const LearnerConfig& config, const LearnerState& state,
                         std::vector<PreferenceMatrix> expert_prefs);

// Applies w_i <- w_i * beta^Loss_i / Z. Empty feedback only advances the
// round counter.
LearnerState round_update(const LearnerConfig& config, LearnerState state,
                          const Prediction& prediction, const Feedback& feedback);
// Convenience: predict, then update with `feedback`.
LearnerState round_update(const LearnerConfig& config, LearnerState state,
                          std::span<const OrderingFunction> experts, const Feedback& feedback);

struct BoundCoefficients {
  double a;  // ln(1/beta) / (1 - beta)
  double c;  // 1 / (1 - beta)
};
BoundCoefficients bound_coefficients(double beta);

struct Theorem1Audit {
  double lhs;
  double rhs;
  bool holds;
};

// Compares the combined cumulative loss against
// a * min_i cumulative_loss_i + c * ln N. Throws std::logic_error before the
// first round.
Theorem1Audit audit_theorem1(const LearnerConfig& config, const LearnerState& state);

// order_loss <= disagree_term + combined_loss + 1e-9.
bool audit_theorem2(const RoundRecord& record);

}  // namespace prefrank

#endif  // PREFRANK_HEDGE_HPP_
