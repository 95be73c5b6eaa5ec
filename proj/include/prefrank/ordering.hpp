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

// Algorithms that turn a preference matrix into a total order, plus the
// goodness ratios used to compare them.

#ifndef PREFRANK_ORDERING_HPP_
#define PREFRANK_ORDERING_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prefrank/preference.hpp"

namespace prefrank {

// Largest instance count brute_force_optimal accepts.
inline constexpr Index kBruteForceLimit = 12;
inline constexpr int kDefaultBruteThreshold = 5;

// Raised when an exhaustive method is asked to handle too many instances.
class GuardError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One iteration of the greedy loop: the potentials of all live nodes at the
// moment `selected` was extracted. Removed nodes hold NaN.
struct GreedyStep {
  Index selected;
  Eigen::VectorXd potential;
};

struct GreedyTrace {
  std::vector<GreedyStep> steps;
};

// Repeatedly extracts the node with the largest potential (out-weight minus
// in-weight among live nodes). Ties go to the smallest index.
TotalOrder greedy_order(const PreferenceMatrix& pref, GreedyTrace* trace = nullptr);

// Greedy restricted to `nodes`; returns them best first.
std::vector<Index> greedy_sequence(const PreferenceMatrix& pref, std::span<const Index> nodes);

struct OptimalOrder {
  TotalOrder order;
  double value;  // agree(order, pref)
};

// Exhaustive search over all n! orders. Among maximizers, returns the one
// whose top-down index sequence is lexicographically smallest. Throws
// GuardError when n > kBruteForceLimit.
OptimalOrder brute_force_optimal(const PreferenceMatrix& pref);

// Exhaustive search restricted to `nodes`; returns them best first.
std::vector<Index> brute_force_sequence(const PreferenceMatrix& pref, std::span<const Index> nodes);

// Strongly connected components of the reduced graph, listed in a
// topological order of the condensation (sources first). Among components
// that are simultaneously available, the one holding the smallest index goes
// first. Members of each component are sorted ascending.
struct ComponentDag {
  std::vector<std::vector<Index>> components;
  std::vector<Index> component_of;               // instance -> component
  std::vector<std::vector<Index>> successors;    // component-level edges
};

ComponentDag strongly_connected_components(const ReducedGraph& graph);

// Orders components along the condensation, then orders each component's
// members by exhaustive search over the reduced weights when its size is at
// most `brute_threshold`, otherwise greedily.
TotalOrder scc_greedy_order(const PreferenceMatrix& pref,
                            int brute_threshold = kDefaultBruteThreshold);

// Per-trial check that the better of a permutation and its reverse covers at
// least half of the reduced edge weight.
struct RandomizedAudit {
  double total_reduced = 0.0;
  double min_kept_fraction = 1.0;  // min over trials of kept / total
  std::int64_t trials = 0;
};

// Best of `trials` uniformly drawn permutations and their reverses, by agree.
// trials <= 0 selects 10 * n.
TotalOrder randomized_order(const PreferenceMatrix& pref, std::int64_t trials,
                            std::uint64_t seed, RandomizedAudit* audit = nullptr);

// Exact optimum when every expert maps into one common two-valued scale:
// sort by the weighted sum of the normalized scores. Throws
// std::invalid_argument on Bottom scores or more than two distinct values.
TotalOrder binary_linear_order(std::span<const OrderingFunction> fs,
                               std::span<const double> weights);

// Sum over unordered pairs of max{P(u,v), P(v,u)}.
double pairwise_max_bound(const PreferenceMatrix& pref);

// Complementary random instance: P(u,v) ~ U[0,1) for u < v and
// P(v,u) = 1 - P(u,v).
PreferenceMatrix random_pref_graph(Index n, std::uint64_t seed);

// Adversarial 0/1 instance on 2k+3 nodes. Nodes 0..k-1 each point to node k
// (the node labelled k+1); node k points to nodes k+1..2k+2. Every other
// entry is 0, so agreement counts edges. The optimum keeps all 2k+2 edges;
// greedy extracts node k first and keeps only k+2.
PreferenceMatrix fig5_family(int k);

// Reduced-weight agreement of `order` relative to that of `optimal`;
// 1.0 when the optimum is 0.
double goodness_vs_optimal(const TotalOrder& order, const TotalOrder& optimal,
                           const PreferenceMatrix& pref);
// Reduced-weight agreement of `order` relative to the total reduced weight;
// 1.0 when the graph carries no reduced weight.
double goodness_vs_total(const TotalOrder& order, const PreferenceMatrix& pref);

enum class Algorithm { kGreedy, kSccGreedy, kRandomized, kBrute };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct OrderingOptions {
  Algorithm algorithm = Algorithm::kSccGreedy;
  int brute_threshold = kDefaultBruteThreshold;
  std::int64_t trials = 0;  // randomized only; 0 -> 10 * n
  std::uint64_t seed = 0;   // randomized only
};

TotalOrder order_with(const PreferenceMatrix& pref, const OrderingOptions& options);

}  // namespace prefrank

#endif  // PREFRANK_ORDERING_HPP_
