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

#include "prefrank/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "prefrank/rng.hpp"

namespace prefrank {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t idx(Index i) { return static_cast<std::size_t>(i); }

std::vector<Index> iota_nodes(Index n) {
  std::vector<Index> nodes(idx(n));
  std::iota(nodes.begin(), nodes.end(), Index{0});
  return nodes;
}

// Greedy over `nodes`. When `trace` is given, potentials are recorded in a
// vector indexed by the original instance ids (size `n_total`).
std::vector<Index> run_greedy(const PreferenceMatrix& pref, std::span<const Index> nodes,
                              GreedyTrace* trace) {
  const std::size_t m = nodes.size();
  std::vector<double> pi(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j) pi[i] += pref(nodes[i], nodes[j]) - pref(nodes[j], nodes[i]);
    }
  }
  std::vector<bool> live(m, true);
  std::vector<Index> sequence;
  sequence.reserve(m);
  for (std::size_t step = 0; step < m; ++step) {
    // `nodes` is ascending in every caller, so the first maximum found is the
    // smallest index among tied nodes.
    std::size_t best = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (live[i] && (best == m || pi[i] > pi[best])) best = i;
    }
    if (trace != nullptr) {
      GreedyStep s{nodes[best], Eigen::VectorXd::Constant(pref.size(), kNaN)};
      for (std::size_t i = 0; i < m; ++i) {
        if (live[i]) s.potential(nodes[i]) = pi[i];
      }
      trace->steps.push_back(std::move(s));
    }
    live[best] = false;
    sequence.push_back(nodes[best]);
    const Index t = nodes[best];
    for (std::size_t i = 0; i < m; ++i) {
      if (live[i]) pi[i] += pref(t, nodes[i]) - pref(nodes[i], t);
    }
  }
  return sequence;
}

// Depth-first enumeration of all orders of `nodes`, best first, with a
// bound that only discards subtrees that cannot reach the incumbent.
class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const PreferenceMatrix& pref, std::span<const Index> nodes)
      : m_(nodes.size()), p_(static_cast<Index>(m_), static_cast<Index>(m_)) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) {
        p_(static_cast<Index>(i), static_cast<Index>(j)) = i == j ? 0.0 : pref(nodes[i], nodes[j]);
      }
    }
    pair_max_ = p_.cwiseMax(p_.transpose());
    pair_max_.diagonal().setZero();
  }

  // Returns positions 0..m-1 (local indices) best first.
  std::vector<std::size_t> run(double lower_bound) {
    acc_.assign(m_, 0.0);
    used_.assign(m_, false);
    prefix_.clear();
    best_.clear();
    best_value_ = -std::numeric_limits<double>::infinity();
    floor_ = lower_bound;
    remaining_pair_max_ = pair_max_.sum() / 2.0;
    dfs(0.0);
    return best_;
  }

 private:
  void dfs(double value) {
    if (prefix_.size() == m_) {
      if (value > best_value_) {
        best_value_ = value;
        best_ = prefix_;
      }
      return;
    }
    double bound = value + remaining_pair_max_;
    for (std::size_t x = 0; x < m_; ++x) {
      if (!used_[x]) bound += acc_[x];
    }
    const double incumbent = std::max(best_value_, floor_);
    if (bound < incumbent - 1e-9 * (1.0 + std::abs(incumbent))) return;

    for (std::size_t x = 0; x < m_; ++x) {
      if (used_[x]) continue;
      used_[x] = true;
      prefix_.push_back(x);
      const double gain = acc_[x];
      double removed_pairs = 0.0;
      for (std::size_t y = 0; y < m_; ++y) {
        if (used_[y]) continue;
        acc_[y] += p_(static_cast<Index>(x), static_cast<Index>(y));
        removed_pairs += pair_max_(static_cast<Index>(x), static_cast<Index>(y));
      }
      remaining_pair_max_ -= removed_pairs;
      dfs(value + gain);
      remaining_pair_max_ += removed_pairs;
      for (std::size_t y = 0; y < m_; ++y) {
        if (!used_[y]) acc_[y] -= p_(static_cast<Index>(x), static_cast<Index>(y));
      }
      prefix_.pop_back();
      used_[x] = false;
    }
  }

  std::size_t m_;
  Eigen::MatrixXd p_;
  Eigen::MatrixXd pair_max_;
  std::vector<double> acc_;
  std::vector<bool> used_;
  std::vector<std::size_t> prefix_;
  std::vector<std::size_t> best_;
  double best_value_ = 0.0;
  double floor_ = 0.0;
  double remaining_pair_max_ = 0.0;
};

double sequence_agree(const PreferenceMatrix& pref, std::span<const Index> seq) {
  double total = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) total += pref(seq[i], seq[j]);
  }
  return total;
}

void validate_weights(std::span<const double> weights, std::size_t expected) {
  if (weights.size() != expected || expected == 0) {
    throw std::invalid_argument("need exactly one weight per expert");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kComplementTolerance) {
    throw std::invalid_argument("weights must sum to 1");
  }
}

}  // namespace

TotalOrder greedy_order(const PreferenceMatrix& pref, GreedyTrace* trace) {
  const auto nodes = iota_nodes(pref.size());
  return TotalOrder::from_top_down(run_greedy(pref, nodes, trace));
}

std::vector<Index> greedy_sequence(const PreferenceMatrix& pref, std::span<const Index> nodes) {
  std::vector<Index> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  return run_greedy(pref, sorted, nullptr);
}

std::vector<Index> brute_force_sequence(const PreferenceMatrix& pref,
                                        std::span<const Index> nodes) {
  if (static_cast<Index>(nodes.size()) > kBruteForceLimit) {
    throw GuardError("exhaustive search limited to " + std::to_string(kBruteForceLimit) +
                     " instances, got " + std::to_string(nodes.size()));
  }
  std::vector<Index> sorted(nodes.begin(), nodes.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.size() <= 1) return sorted;
  // The greedy value is attainable, so it is a valid floor for pruning.
  const auto greedy = run_greedy(pref, sorted, nullptr);
  ExhaustiveSearch search(pref, sorted);
  const auto local = search.run(sequence_agree(pref, greedy));
  std::vector<Index> out;
  out.reserve(local.size());
  for (std::size_t i : local) out.push_back(sorted[i]);
  return out;
}

OptimalOrder brute_force_optimal(const PreferenceMatrix& pref) {
  const auto nodes = iota_nodes(pref.size());
  auto order = TotalOrder::from_top_down(brute_force_sequence(pref, nodes));
  const double value = agree(order, pref);
  return {std::move(order), value};
}

ComponentDag strongly_connected_components(const ReducedGraph& graph) {
  const Index n = graph.size();
  // Iterative Tarjan.
  std::vector<Index> index(idx(n), -1), low(idx(n), 0), comp(idx(n), -1);
  std::vector<bool> on_stack(idx(n), false);
  std::vector<Index> stack;
  std::vector<std::vector<Index>> raw;
  Index counter = 0;
  struct Frame {
    Index v;
    std::size_t edge;
  };
  for (Index root = 0; root < n; ++root) {
    if (index[idx(root)] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[idx(root)] = low[idx(root)] = counter++;
    stack.push_back(root);
    on_stack[idx(root)] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& edges = graph.out[idx(f.v)];
      if (f.edge < edges.size()) {
        const Index w = edges[f.edge++].to;
        if (index[idx(w)] == -1) {
          index[idx(w)] = low[idx(w)] = counter++;
          stack.push_back(w);
          on_stack[idx(w)] = true;
          call.push_back({w, 0});
        } else if (on_stack[idx(w)]) {
          low[idx(f.v)] = std::min(low[idx(f.v)], index[idx(w)]);
        }
        continue;
      }
      const Index v = f.v;
      call.pop_back();
      if (!call.empty()) {
        const Index parent = call.back().v;
        low[idx(parent)] = std::min(low[idx(parent)], low[idx(v)]);
      }
      if (low[idx(v)] == index[idx(v)]) {
        std::vector<Index> members;
        Index w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[idx(w)] = false;
          comp[idx(w)] = static_cast<Index>(raw.size());
          members.push_back(w);
        } while (w != v);
        std::sort(members.begin(), members.end());
        raw.push_back(std::move(members));
      }
    }
  }

  const std::size_t k = raw.size();
  std::vector<std::set<Index>> succ(k);
  std::vector<Index> indegree(k, 0);
  for (Index u = 0; u < n; ++u) {
    for (const auto& e : graph.out[idx(u)]) {
      const Index a = comp[idx(u)], b = comp[idx(e.to)];
      if (a != b && succ[idx(a)].insert(b).second) ++indegree[idx(b)];
    }
  }

  // Kahn's algorithm keyed on each component's smallest member.
  using Key = std::pair<Index, Index>;  // (smallest member, raw component id)
  std::priority_queue<Key, std::vector<Key>, std::greater<>> ready;
  for (std::size_t c = 0; c < k; ++c) {
    if (indegree[c] == 0) ready.push({raw[c].front(), static_cast<Index>(c)});
  }
  std::vector<Index> position(k, -1);
  ComponentDag dag;
  while (!ready.empty()) {
    const Index c = ready.top().second;
    ready.pop();
    position[idx(c)] = static_cast<Index>(dag.components.size());
    dag.components.push_back(raw[idx(c)]);
    for (Index s : succ[idx(c)]) {
      if (--indegree[idx(s)] == 0) ready.push({raw[idx(s)].front(), s});
    }
  }
  dag.component_of.resize(idx(n));
  for (Index u = 0; u < n; ++u) dag.component_of[idx(u)] = position[idx(comp[idx(u)])];
  dag.successors.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    auto& out = dag.successors[idx(position[c])];
    for (Index s : succ[c]) out.push_back(position[idx(s)]);
    std::sort(out.begin(), out.end());
  }
  return dag;
}

TotalOrder scc_greedy_order(const PreferenceMatrix& pref, int brute_threshold) {
  if (brute_threshold < 1) throw std::invalid_argument("brute_threshold must be >= 1");
  const ReducedGraph reduced = reduce(pref);
  const PreferenceMatrix reduced_dense = reduced.to_dense();
  const ComponentDag dag = strongly_connected_components(reduced);
  std::vector<Index> sequence;
  sequence.reserve(idx(pref.size()));
  for (const auto& members : dag.components) {
    const auto size = static_cast<Index>(members.size());
    std::vector<Index> part;
    if (size == 1) {
      part = members;
    } else if (size <= brute_threshold && size <= kBruteForceLimit) {
      part = brute_force_sequence(reduced_dense, members);
    } else {
      part = greedy_sequence(reduced_dense, members);
    }
    sequence.insert(sequence.end(), part.begin(), part.end());
  }
  return TotalOrder::from_top_down(std::move(sequence));
}

TotalOrder randomized_order(const PreferenceMatrix& pref, std::int64_t trials,
                            std::uint64_t seed, RandomizedAudit* audit) {
  const Index n = pref.size();
  if (trials <= 0) trials = 10 * static_cast<std::int64_t>(n);
  Rng rng(seed);
  std::vector<Index> perm = iota_nodes(n);
  std::vector<Index> best = perm;
  double best_value = -std::numeric_limits<double>::infinity();
  const double total_reduced = audit != nullptr ? total_reduced_weight(pref) : 0.0;
  if (audit != nullptr) {
    audit->total_reduced = total_reduced;
    audit->min_kept_fraction = 1.0;
    audit->trials = trials;
  }
  for (std::int64_t t = 0; t < trials; ++t) {
    rng.shuffle(std::span<Index>(perm));
    std::vector<Index> rev(perm.rbegin(), perm.rend());
    const double forward = sequence_agree(pref, perm);
    const double backward = sequence_agree(pref, rev);
    const bool keep_reverse = backward > forward;
    const auto& kept = keep_reverse ? rev : perm;
    const double kept_value = keep_reverse ? backward : forward;
    if (audit != nullptr && total_reduced > 0.0) {
      const double covered = reduced_agreement(TotalOrder::from_top_down(kept), pref);
      audit->min_kept_fraction = std::min(audit->min_kept_fraction, covered / total_reduced);
    }
    if (kept_value > best_value) {
      best_value = kept_value;
      best = kept;
    }
  }
  return TotalOrder::from_top_down(std::move(best));
}

TotalOrder binary_linear_order(std::span<const OrderingFunction> fs,
                               std::span<const double> weights) {
  validate_weights(weights, fs.size());
  const Index n = fs.front().size();
  std::set<double> scale;
  for (const auto& f : fs) {
    if (f.size() != n) throw std::invalid_argument("experts cover different instance sets");
    for (const auto& s : f.scores) {
      if (s.is_bottom()) throw std::invalid_argument("binary_linear_order: Bottom score present");
      scale.insert(s.value());
    }
  }
  if (scale.size() > 2) {
    throw std::invalid_argument("binary_linear_order: score set has more than two values");
  }
  const double high = scale.empty() ? 0.0 : *scale.rbegin();
  const bool two_valued = scale.size() == 2;
  std::vector<double> rho(idx(n), 0.0);
  for (Index u = 0; u < n; ++u) {
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (two_valued && fs[i][u].value() == high) rho[idx(u)] += weights[i];
    }
  }
  std::vector<Index> seq = iota_nodes(n);
  std::stable_sort(seq.begin(), seq.end(),
                   [&](Index a, Index b) { return rho[idx(a)] > rho[idx(b)]; });
  return TotalOrder::from_top_down(std::move(seq));
}

double pairwise_max_bound(const PreferenceMatrix& pref) {
  double total = 0.0;
  for (Index u = 0; u < pref.size(); ++u) {
    for (Index v = u + 1; v < pref.size(); ++v) total += std::max(pref(u, v), pref(v, u));
  }
  return total;
}

PreferenceMatrix random_pref_graph(Index n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_pref_graph needs n >= 2");
  Rng rng(seed);
  PreferenceMatrix pref(n, 0.5);
  for (Index u = 0; u < n; ++u) {
    for (Index v = u + 1; v < n; ++v) {
      const double x = rng.uniform();
      pref.set(u, v, x);
      pref.set(v, u, 1.0 - x);
    }
  }
  return pref;
}

PreferenceMatrix fig5_family(int k) {
  if (k < 1) throw std::invalid_argument("fig5_family needs k >= 1");
  const Index hub = k;
  const Index n = 2 * Index{k} + 3;
  PreferenceMatrix pref(n, 0.0);
  for (Index u = 0; u < hub; ++u) pref.set(u, hub, 1.0);
  for (Index v = hub + 1; v < n; ++v) pref.set(hub, v, 1.0);
  return pref;
}

double goodness_vs_optimal(const TotalOrder& order, const TotalOrder& optimal,
                           const PreferenceMatrix& pref) {
  const double denom = reduced_agreement(optimal, pref);
  if (denom <= 0.0) return 1.0;
  return reduced_agreement(order, pref) / denom;
}

double goodness_vs_total(const TotalOrder& order, const PreferenceMatrix& pref) {
  const double denom = total_reduced_weight(pref);
  if (denom <= 0.0) return 1.0;
  return std::clamp(reduced_agreement(order, pref) / denom, 0.0, 1.0);
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kGreedy: return "greedy";
    case Algorithm::kSccGreedy: return "scc_greedy";
    case Algorithm::kRandomized: return "randomized";
    case Algorithm::kBrute: return "brute";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kGreedy, Algorithm::kSccGreedy, Algorithm::kRandomized,
                      Algorithm::kBrute}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

TotalOrder order_with(const PreferenceMatrix& pref, const OrderingOptions& options) {
  switch (options.algorithm) {
    case Algorithm::kGreedy: return greedy_order(pref);
    case Algorithm::kSccGreedy: return scc_greedy_order(pref, options.brute_threshold);
    case Algorithm::kRandomized: return randomized_order(pref, options.trials, options.seed);
    case Algorithm::kBrute: return brute_force_optimal(pref).order;
  }
  throw std::invalid_argument("unknown ordering algorithm");
}

}  // namespace prefrank
