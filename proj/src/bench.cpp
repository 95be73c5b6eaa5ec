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

#include "prefrank/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "prefrank/rng.hpp"

namespace prefrank {

namespace {

constexpr std::uint64_t kRandomizedStream = 0x5241'4e44ULL;

struct Accumulator {
  double vs_optimal = 0.0;
  double vs_total = 0.0;
  double micros = 0.0;
  std::int64_t violations = 0;
  double min_pair_fraction = 1.0;
};

}  // namespace

std::vector<BenchResult> run_bench(const BenchConfig& config) {
  if (config.graphs_per_size < 1) throw std::invalid_argument("graphs_per_size must be >= 1");
  for (Index n : config.sizes) {
    if (n < 2) throw std::invalid_argument("bench sizes must be >= 2");
    if (config.vs_optimal && n > kBenchOptimalLimit) {
      throw GuardError("vs-optimal mode supports sizes up to " +
                       std::to_string(kBenchOptimalLimit) + ", got " + std::to_string(n));
    }
  }

  using Clock = std::chrono::steady_clock;
  std::vector<BenchResult> results;
  for (Index n : config.sizes) {
    std::vector<Accumulator> acc(config.algorithms.size());
    for (std::int64_t g = 0; g < config.graphs_per_size; ++g) {
      const std::uint64_t graph_seed =
          derive_seed(config.seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(g)});
      const PreferenceMatrix pref = random_pref_graph(n, graph_seed);
      std::optional<OptimalOrder> optimal;
      if (config.vs_optimal) optimal = brute_force_optimal(pref);

      for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
        const Algorithm algo = config.algorithms[a];
        RandomizedAudit audit;
        const auto start = Clock::now();
        TotalOrder order;
        switch (algo) {
          case Algorithm::kGreedy: order = greedy_order(pref); break;
          case Algorithm::kSccGreedy: order = scc_greedy_order(pref, config.brute_threshold); break;
          case Algorithm::kRandomized:
            order = randomized_order(pref, config.trials, derive_seed(graph_seed, {kRandomizedStream}),
                                     &audit);
            break;
          case Algorithm::kBrute:
            order = optimal ? optimal->order : brute_force_optimal(pref).order;
            break;
        }
        const auto stop = Clock::now();
        Accumulator& s = acc[a];
        s.micros += std::chrono::duration<double, std::micro>(stop - start).count();
        s.vs_total += goodness_vs_total(order, pref);
        if (optimal) {
          s.vs_optimal += goodness_vs_optimal(order, optimal->order, pref);
          if (agree(order, pref) < 0.5 * optimal->value - 1e-9) ++s.violations;
        }
        if (algo == Algorithm::kRandomized) {
          s.min_pair_fraction = std::min(s.min_pair_fraction, audit.min_kept_fraction);
        }
      }
    }
    const auto count = static_cast<double>(config.graphs_per_size);
    for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
      BenchResult r;
      r.algorithm = config.algorithms[a];
      r.n = n;
      r.graphs = config.graphs_per_size;
      if (config.vs_optimal) r.goodness_vs_optimal = acc[a].vs_optimal / count;
      r.goodness_vs_total = acc[a].vs_total / count;
      r.mean_micros = acc[a].micros / count;
      r.factor_two_violations = acc[a].violations;
      r.min_pair_fraction = r.algorithm == Algorithm::kRandomized
                                ? acc[a].min_pair_fraction
                                : std::numeric_limits<double>::quiet_NaN();
      results.push_back(r);
    }
  }
  return results;
}

std::string format_bench_report(const std::vector<BenchResult>& results, bool with_timing) {
  std::ostringstream out;
  char buf[64];
  out << "algorithm\tn\tmean_goodness_vs_optimal\tmean_goodness_vs_total\tmean_micros\n";
  for (const auto& r : results) {
    out << to_string(r.algorithm) << '\t' << r.n << '\t';
    if (r.goodness_vs_optimal) {
      std::snprintf(buf, sizeof buf, "%.6f", *r.goodness_vs_optimal);
      out << buf;
    } else {
      out << "NA";
    }
    std::snprintf(buf, sizeof buf, "%.6f", r.goodness_vs_total);
    out << '\t' << buf << '\t';
    if (with_timing) {
      std::snprintf(buf, sizeof buf, "%.3f", r.mean_micros);
      out << buf;
    } else {
      out << "NA";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace prefrank
