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

// Test-only helpers: an exhaustive oracle that shares no code with the
// library's search, the reconstructed worked-example graphs, and random
// instance generators.

#ifndef PREFRANK_TESTS_SUPPORT_FIXTURES_HPP_
#define PREFRANK_TESTS_SUPPORT_FIXTURES_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "prefrank/preference.hpp"
#include "prefrank/rng.hpp"

namespace prefrank::testing {

// max over all n! orders of sum_{i<j} P(seq[i], seq[j]), by std::next_permutation.
inline double naive_optimum(const PreferenceMatrix& pref) {
  std::vector<Index> seq(static_cast<std::size_t>(pref.size()));
  std::iota(seq.begin(), seq.end(), Index{0});
  double best = -std::numeric_limits<double>::infinity();
  do {
    double v = 0.0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      for (std::size_t j = i + 1; j < seq.size(); ++j) v += pref(seq[i], seq[j]);
    }
    best = std::max(best, v);
  } while (std::next_permutation(seq.begin(), seq.end()));
  return best;
}

// Every order's agreement, in next_permutation order.
inline std::vector<double> all_agreements(const PreferenceMatrix& pref) {
  std::vector<Index> seq(static_cast<std::size_t>(pref.size()));
  std::iota(seq.begin(), seq.end(), Index{0});
  std::vector<double> out;
  do {
    double v = 0.0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      for (std::size_t j = i + 1; j < seq.size(); ++j) v += pref(seq[i], seq[j]);
    }
    out.push_back(v);
  } while (std::next_permutation(seq.begin(), seq.end()));
  return out;
}

inline OrderingFunction scores(std::initializer_list<Score> s) {
  return OrderingFunction(std::vector<Score>(s));
}

// Instances a=0, b=1, c=2, d=3. Reconstructed graph: the 1/4, 3/4
// combination of f1 = (b > a > c, d unranked) and f2 = (b = d > c > a).
// Greedy potentials run (2, 3/2, -5/4, -9/4), then (3/2, -1/4, -5/4), then
// (1/2, -1/2), giving b > d > c > a.
inline PreferenceMatrix walkthrough_pref() {
  const std::vector<PreferenceMatrix> prefs = {
      induce_preference(scores({2.0, 3.0, 1.0, Score::bottom()})),
      induce_preference(scores({0.0, 2.0, 1.0, 2.0}))};
  const std::vector<double> w = {0.25, 0.75};
  return combine(w, prefs);
}

// Instances a=0, b=1, c=2, d=3. Reconstructed graph: b tops all three
// experts while a, c, d form a cyclic majority, so the reduced graph splits
// into {b} and {a, c, d} and the best order inside the cycle is c > d > a.
inline PreferenceMatrix split_cycle_pref() {
  const std::vector<PreferenceMatrix> prefs = {
      induce_preference(scores({1.0, 4.0, 3.0, 2.0})),   // b > c > d > a
      induce_preference(scores({2.0, 4.0, 1.0, 3.0})),   // b > d > a > c
      induce_preference(scores({3.0, 4.0, 2.0, 1.0}))};  // b > a > c > d
  const std::vector<double> w = {0.4, 0.35, 0.25};
  return combine(w, prefs);
}

// Uniform entries with no complementarity constraint.
inline PreferenceMatrix random_general_pref(Index n, std::uint64_t seed) {
  Rng rng(seed);
  PreferenceMatrix p(n, 0.0);
  for (Index u = 0; u < n; ++u) {
    for (Index v = 0; v < n; ++v) {
      if (u != v) p.set(u, v, rng.uniform());
    }
  }
  return p;
}

// Complementary matrix whose reduced graph is acyclic: entries only favour
// lower-ranked-by-hidden-order instances, with some exact ties.
inline PreferenceMatrix random_dag_pref(Index n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Index> hidden(static_cast<std::size_t>(n));
  std::iota(hidden.begin(), hidden.end(), Index{0});
  rng.shuffle(std::span<Index>(hidden));
  PreferenceMatrix p(n, 0.5);
  for (std::size_t i = 0; i < hidden.size(); ++i) {
    for (std::size_t j = i + 1; j < hidden.size(); ++j) {
      const double x = rng.bernoulli(0.2) ? 0.5 : 0.5 + 0.5 * rng.uniform();
      p.set(hidden[i], hidden[j], x);
      p.set(hidden[j], hidden[i], 1.0 - x);
    }
  }
  return p;
}

// N experts over n instances, each mapping into the common scale {lo, hi}.
struct BinaryInstance {
  std::vector<OrderingFunction> experts;
  std::vector<double> weights;
};

inline BinaryInstance random_binary_instance(Index n, int n_experts, std::uint64_t seed) {
  Rng rng(seed);
  const double lo = -1.0 + static_cast<double>(rng.below(3));
  const double hi = lo + 1.0 + static_cast<double>(rng.below(5));
  BinaryInstance inst;
  double total = 0.0;
  for (int i = 0; i < n_experts; ++i) {
    std::vector<Score> s;
    for (Index u = 0; u < n; ++u) s.emplace_back(rng.bernoulli(0.5) ? hi : lo);
    inst.experts.emplace_back(std::move(s));
    inst.weights.push_back(0.05 + rng.uniform());
    total += inst.weights.back();
  }
  for (double& w : inst.weights) w /= total;
  // Exact unit sum despite rounding.
  double head = 0.0;
  for (std::size_t i = 0; i + 1 < inst.weights.size(); ++i) head += inst.weights[i];
  inst.weights.back() = 1.0 - head;
  return inst;
}

}  // namespace prefrank::testing

#endif  // PREFRANK_TESTS_SUPPORT_FIXTURES_HPP_
