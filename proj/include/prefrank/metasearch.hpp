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

// Simulated metasearch: encoding expert result lists as ordering functions,
// synthesizing feedback, leave-one-out evaluation and the rank statistics
// used to compare the learned ranker against individual experts.

#ifndef PREFRANK_METASEARCH_HPP_
#define PREFRANK_METASEARCH_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "prefrank/hedge.hpp"
#include "prefrank/preference.hpp"

namespace prefrank {

inline constexpr int kDefaultListCap = 30;
// One-sided normal quantile for confidence 0.999.
inline constexpr double kSignTestZ = 3.090;

// A rank position (1 = top) or nothing when the page was not returned.
using Rank = std::optional<int>;

struct Query {
  std::string id;
  std::string relevant;
  std::vector<std::vector<std::string>> expert_lists;  // one per expert, best first

  friend bool operator==(const Query&, const Query&) = default;
};

struct Dataset {
  std::vector<Query> queries;
  int n_experts = 0;
  int list_cap = kDefaultListCap;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Throws std::invalid_argument when a query has the wrong number of lists,
// only empty lists, a list longer than list_cap, or a duplicate page.
void validate(const Dataset& dataset);

enum class UnlistedMode { kZero, kBottom };

// The k-th listed page scores cap + 1 - k. Unlisted pages score 0 or Bottom.
OrderingFunction encode_expert(std::span<const std::string> list, const InstanceSet& universe,
                               UnlistedMode mode, int cap = kDefaultListCap);

// One query turned into a learning round: the universe is the union of all
// expert lists in first-appearance order.
struct QueryProblem {
  InstanceSet universe;
  std::optional<Index> relevant;  // absent when no expert returned it
  std::vector<OrderingFunction> experts;
  std::vector<PreferenceMatrix> expert_prefs;
  std::vector<Rank> expert_ranks;  // position of the relevant page per expert
};

QueryProblem build_problem(const Query& query, int cap, UnlistedMode mode);

// Relevant page preferred to every other page of the universe. Throws
// std::invalid_argument when the relevant page is not in the universe.
Feedback full_feedback(const Query& query, const InstanceSet& universe);
Feedback full_feedback(Index relevant, Index universe_size);

// Relevant page preferred to every page presented above it.
Feedback click_feedback(const TotalOrder& presented, Index relevant);

// Mean rank after replacing missing ranks and ranks above cap - 1 by cap.
// Throws std::invalid_argument on an empty sequence.
double avg_rank(std::span<const Rank> ranks, int cap = kDefaultListCap + 1);

// Number of ranks <= k.
int top_k(std::span<const Rank> ranks, int k);

struct SignTestResult {
  int n_comparable = 0;  // queries where either side ranks within cap - 1
  int learned_better = 0;
  int expert_better = 0;
  int ties = 0;
  // H1: expert strictly better with probability >= 1/2. Ties are set aside.
  double z_h1 = 0.0;
  // H2: expert no worse with probability >= 1/2. Ties count for the expert.
  double z_h2 = 0.0;
  bool reject_h1 = false;
  bool reject_h2 = false;
  bool decided = false;  // false when nothing was comparable
};

SignTestResult sign_test(std::span<const Rank> learned, std::span<const Rank> expert,
                         int cap = kDefaultListCap + 1);

enum class FeedbackMode { kFull, kClick };

struct LooConfig {
  LearnerConfig learner;  // n_experts is taken from the dataset
  FeedbackMode mode = FeedbackMode::kFull;
  int permutations = 100;  // click mode only
  std::uint64_t seed = 0;
  UnlistedMode unlisted = UnlistedMode::kZero;
  // Click-data noise: each pair is dropped, or else reversed, with these
  // probabilities.
  double click_drop = 0.0;
  double click_flip = 0.0;
};

struct SystemStats {
  std::string name;
  std::vector<Rank> ranks;  // aligned with the dataset's queries
  std::vector<int> top_k;   // top_k[k - 1] for k = 1..list_cap
  double avg_rank = 0.0;
};

struct EvalReport {
  int list_cap = kDefaultListCap;
  SystemStats learned;
  std::vector<SystemStats> experts;
  std::vector<SignTestResult> sign_tests;  // learned vs each expert
  // Audits over every training run performed.
  std::int64_t training_runs = 0;
  std::int64_t theorem1_violations = 0;
  std::int64_t theorem2_violations = 0;
};

// For each held-out query, trains a fresh learner on all other queries and
// records the position of the relevant page in the predicted order. Full
// feedback does not depend on the presented order, so full mode trains once
// in dataset order and ignores `permutations` and `seed`. Click mode trains
// on `permutations` seeded shuffles and keeps the lower median rank.
EvalReport leave_one_out(const Dataset& dataset, const LooConfig& config);

// leave_one_out once per beta value.
std::vector<EvalReport> beta_sweep(const Dataset& dataset, const LooConfig& config,
                                   std::span<const double> betas);

// Table rows `system top1 top10 top<cap> avg_rank`, then one sign-test row
// per expert.
std::string format_eval_report(const EvalReport& report);

struct ExpertProfile {
  double hit_prob = 0.5;  // chance the relevant page is listed
  double top_prob = 0.5;  // geometric parameter for its position when listed
};

struct SyntheticParams {
  int n_queries = 50;
  std::vector<ExpertProfile> experts;
  int universe_size = 40;  // candidate pages per query
  int list_length = 10;    // pages per expert list, <= list_cap
  int list_cap = kDefaultListCap;
  std::uint64_t seed = 0;
};

// Draws queries until n_queries have the relevant page listed by at least
// one expert. Throws std::invalid_argument when no expert can ever list it.
Dataset gen_synthetic(const SyntheticParams& params);

}  // namespace prefrank

#endif  // PREFRANK_METASEARCH_HPP_
