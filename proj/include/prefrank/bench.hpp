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

// Benchmark harness over seeded random preference graphs.

#ifndef PREFRANK_BENCH_HPP_
#define PREFRANK_BENCH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prefrank/ordering.hpp"

namespace prefrank {

// Sizes above this are refused in vs-optimal mode.
inline constexpr Index kBenchOptimalLimit = 9;

struct BenchConfig {
  std::vector<Index> sizes;
  std::int64_t graphs_per_size = 10000;
  std::vector<Algorithm> algorithms = {Algorithm::kGreedy, Algorithm::kSccGreedy,
                                       Algorithm::kRandomized};
  std::uint64_t seed = 0;
  bool vs_optimal = true;
  // Components up to this size are solved exhaustively by scc_greedy. The
  // default of 1 keeps scc_greedy purely greedy inside components.
  int brute_threshold = 1;
  std::int64_t trials = 0;  // randomized; 0 -> 10 * n
};

struct BenchResult {
  Algorithm algorithm;
  Index n = 0;
  std::int64_t graphs = 0;
  std::optional<double> goodness_vs_optimal;  // mean; vs-optimal mode only
  double goodness_vs_total = 0.0;             // mean
  double mean_micros = 0.0;                   // wall time per graph
  // vs-optimal mode: graphs where agree < OPT / 2 (must stay 0).
  std::int64_t factor_two_violations = 0;
  // randomized only: min over all trials of (kept pair coverage / total
  // reduced weight); NaN for other algorithms.
  double min_pair_fraction = 0.0;
};

// Per size, draws graphs_per_size graphs with random_pref_graph (graph g of
// size n uses derive_seed(seed, {n, g})), runs every algorithm on each and
// averages the goodness ratios. Results are ordered by (size, algorithm)
// following the config's order. Throws GuardError when vs_optimal is set
// and a size exceeds kBenchOptimalLimit.
std::vector<BenchResult> run_bench(const BenchConfig& config);

// Tab separated: algorithm, n, mean_goodness_vs_optimal, mean_goodness_vs_total,
// mean_micros. Absent values print as "NA"; timing prints "NA" unless
// `with_timing` is set so that reports are reproducible byte for byte.
std::string format_bench_report(const std::vector<BenchResult>& results, bool with_timing);

}  // namespace prefrank

#endif  // PREFRANK_BENCH_HPP_
