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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "prefrank/bench.hpp"
#include "prefrank/hedge.hpp"
#include "prefrank/metasearch.hpp"
#include "prefrank/ordering.hpp"
#include "prefrank/rng.hpp"
#include "support/fixtures.hpp"
#include "support/simulation.hpp"

namespace prefrank {
namespace {

constexpr std::uint64_t kRoot = 20260101;

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("%s %s %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Worst observed randomized pair fraction across every bench run below.
double min_pair_fraction = std::numeric_limits<double>::infinity();
std::int64_t randomized_bench_runs = 0;

void track_randomized(const std::vector<BenchResult>& results) {
  for (const auto& r : results) {
    if (r.algorithm != Algorithm::kRandomized) continue;
    ++randomized_bench_runs;
    min_pair_fraction = std::min(min_pair_fraction, r.min_pair_fraction);
  }
}

void ac1_factor_two() {
  std::int64_t graphs = 0, violations = 0, oracle_checks = 0, oracle_mismatch = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (Index n = 3; n <= 8; ++n) {
    for (std::uint64_t g = 0; g < 10000; ++g) {
      const auto p = random_pref_graph(n, derive_seed(kRoot, {1, static_cast<std::uint64_t>(n), g}));
      const auto opt = brute_force_optimal(p);
      if (g < 100) {
        ++oracle_checks;
        if (std::abs(testing::naive_optimum(p) - opt.value) > 1e-9) ++oracle_mismatch;
      }
      const double got = agree(greedy_order(p), p);
      worst = std::min(worst, got / opt.value);
      if (got < 0.5 * opt.value - 1e-9) ++violations;
      ++graphs;
    }
  }
  report("AC1", violations == 0 && oracle_mismatch == 0,
         fmt("greedy >= OPT/2 over %lld graphs (n=3..8): violations=%lld, worst ratio=%.4f; "
             "exhaustive-oracle cross-checks=%lld mismatches=%lld",
             static_cast<long long>(graphs), static_cast<long long>(violations), worst,
             static_cast<long long>(oracle_checks), static_cast<long long>(oracle_mismatch)));
}

const std::vector<BenchResult>& optimal_bench() {
  static const std::vector<BenchResult> results = [] {
    BenchConfig cfg;
    cfg.sizes = {3, 4, 5, 6, 7, 8, 9};
    cfg.graphs_per_size = 10000;
    cfg.algorithms = {Algorithm::kGreedy, Algorithm::kSccGreedy, Algorithm::kRandomized};
    cfg.seed = derive_seed(kRoot, {2});
    cfg.brute_threshold = 1;
    auto r = run_bench(cfg);
    track_randomized(r);
    return r;
  }();
  return results;
}

const std::vector<BenchResult>& total_bench() {
  static const std::vector<BenchResult> results = [] {
    BenchConfig cfg;
    for (Index n = 20; n <= 30; ++n) cfg.sizes.push_back(n);
    cfg.graphs_per_size = 1000;
    cfg.vs_optimal = false;
    cfg.seed = derive_seed(kRoot, {3});
    auto r = run_bench(cfg);
    track_randomized(r);
    return r;
  }();
  return results;
}

void ac2_goodness() {
  const auto& results = optimal_bench();
  bool ok = true;
  std::string detail = "scc_greedy/randomized mean goodness_vs_optimal:";
  for (Index n = 3; n <= 9; ++n) {
    double scc = 0.0, rnd = 0.0;
    for (const auto& r : results) {
      if (r.n != n) continue;
      if (r.algorithm == Algorithm::kSccGreedy) scc = *r.goodness_vs_optimal;
      if (r.algorithm == Algorithm::kRandomized) rnd = *r.goodness_vs_optimal;
    }
    const bool size_ok = scc >= 0.93 && (n < 6 || scc >= rnd);
    ok = ok && size_ok;
    detail += fmt(" n=%lld:%.4f/%.4f%s", static_cast<long long>(n), scc, rnd, size_ok ? "" : "!");
  }
  report("AC2", ok, detail + " (10000 graphs per size; need scc>=0.93, scc>=randomized for n>=6)");
}

void ac3_coincide() {
  const auto& results = total_bench();
  double worst = 0.0;
  for (Index n = 20; n <= 30; ++n) {
    double greedy = 0.0, scc = 0.0;
    for (const auto& r : results) {
      if (r.n != n) continue;
      if (r.algorithm == Algorithm::kGreedy) greedy = r.goodness_vs_total;
      if (r.algorithm == Algorithm::kSccGreedy) scc = r.goodness_vs_total;
    }
    worst = std::max(worst, std::abs(greedy - scc));
  }
  report("AC3", worst < 0.01,
         fmt("max |greedy - scc_greedy| mean goodness_vs_total over n=20..30 (1000 graphs each) "
             "= %.6f (< 0.01)",
             worst));
}

void ac4_worked_examples() {
  constexpr Index a = 0, b = 1, c = 2, d = 3;
  GreedyTrace trace;
  const auto walk = greedy_order(testing::walkthrough_pref(), &trace);
  const auto& pi = trace.steps.front().potential;
  const bool walk_ok = walk.top_down() == std::vector<Index>{b, d, c, a} && pi(b) == 2.0 &&
                       pi(d) == 1.5 && pi(c) == -1.25 && pi(a) == -2.25;
  const auto split = scc_greedy_order(testing::split_cycle_pref(), kDefaultBruteThreshold);
  const bool split_ok = split.top_down() == std::vector<Index>{b, c, d, a};
  report("AC4", walk_ok && split_ok,
         fmt("greedy walk-through order %s with initial potentials (b,d,c,a)=(%g,%g,%g,%g); "
             "scc_greedy split-cycle order %s",
             walk_ok ? "b>d>c>a" : "WRONG", pi(b), pi(d), pi(c), pi(a),
             split_ok ? "b>c>d>a" : "WRONG"));
}

void ac5_hub_family() {
  constexpr int k = 3;
  const auto p = fig5_family(k);
  const double opt = brute_force_optimal(p).value;
  GreedyTrace trace;
  const auto g = greedy_order(p, &trace);
  const Index first = trace.steps.front().selected;
  const double scc = agree(scc_greedy_order(p, kDefaultBruteThreshold), p);
  const bool ok = opt == 2 * k + 2 && first == k && scc == 2 * k + 2;
  report("AC5", ok,
         fmt("k=3: OPT=%g (2k+2=8), greedy first pick label %lld (k+1=4), greedy agree=%g, "
             "scc_greedy agree=%g",
             opt, static_cast<long long>(first + 1), agree(g, p), scc));
}

void ac6_binary_linear() {
  constexpr int kInstances = 2000;
  int bad = 0;
  double worst = 0.0;
  Rng rng(derive_seed(kRoot, {6}));
  for (int t = 0; t < kInstances; ++t) {
    const auto n = static_cast<Index>(2 + rng.below(7));
    const int experts = 1 + static_cast<int>(rng.below(5));
    const auto inst = testing::random_binary_instance(n, experts, rng.next());
    std::vector<PreferenceMatrix> prefs;
    for (const auto& f : inst.experts) prefs.push_back(induce_preference(f));
    const auto p = combine(inst.weights, prefs);
    const double got = agree(binary_linear_order(inst.experts, inst.weights), p);
    const double err = std::max(std::abs(got - brute_force_optimal(p).value),
                                std::abs(got - pairwise_max_bound(p)));
    worst = std::max(worst, err);
    if (err > 1e-9) ++bad;
  }
  report("AC6", bad == 0,
         fmt("binary_linear_order vs exhaustive OPT and pairwise-max closed form on %d instances "
             "(n<=8, N<=5): mismatches=%d, max error=%.2e",
             kInstances, bad, worst));
}

std::vector<testing::SimulationResult> simulated_runs() {
  std::vector<testing::SimulationResult> runs;
  const double betas[] = {0.1, 0.5, 0.9};
  const Algorithm algs[] = {Algorithm::kSccGreedy, Algorithm::kGreedy, Algorithm::kRandomized};
  Rng rng(derive_seed(kRoot, {7}));
  for (int r = 0; r < 150; ++r) {
    testing::SimulationParams params;
    params.n_experts = 1 + static_cast<int>(rng.below(10));
    params.rounds = 1 + static_cast<int>(rng.below(200));
    params.beta = betas[r % 3];
    params.algorithm = algs[(r / 3) % 3];
    params.seed = rng.next();
    runs.push_back(testing::simulate_run(params));
  }
  return runs;
}

const std::vector<testing::SimulationResult>& cached_runs() {
  static const auto runs = simulated_runs();
  return runs;
}

void ac7_learner() {
  const auto& runs = cached_runs();
  int t1_bad = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (const auto& run : runs) {
    const auto audit = audit_theorem1(run.config, run.state);
    if (!audit.holds) ++t1_bad;
    min_slack = std::min(min_slack, audit.rhs - audit.lhs);
  }
  report("AC7", t1_bad == 0,
         fmt("cumulative-loss bound on %zu simulated runs (N<=10, T<=200, beta in {0.1,0.5,0.9}): "
             "violations=%d, min slack=%.4f",
             runs.size(), t1_bad, min_slack));
}

void ac8_learner() {
  const auto& runs = cached_runs();
  std::int64_t rounds = 0, t2_bad = 0;
  for (const auto& run : runs) {
    for (const auto& rec : run.state.history) {
      ++rounds;
      if (!audit_theorem2(rec)) ++t2_bad;
    }
  }
  report("AC8", t2_bad == 0,
         fmt("per-round order-loss triangle inequality over %lld rounds: violations=%lld",
             static_cast<long long>(rounds), static_cast<long long>(t2_bad)));
}

void ac9_metasearch() {
  SyntheticParams params;
  params.n_queries = 50;
  params.experts = {{0.95, 0.5}, {0.3, 0.5}, {0.25, 0.5}, {0.2, 0.5}, {0.15, 0.5}};
  params.seed = derive_seed(kRoot, {9});
  const Dataset ds = gen_synthetic(params);

  LooConfig full;
  full.mode = FeedbackMode::kFull;
  const auto rep = leave_one_out(ds, full);

  const double learned = rep.learned.avg_rank;
  const double dominant = rep.experts[0].avg_rank;
  const bool a_ok = learned <= dominant + 0.5;

  bool b_ok = true;
  std::string zs;
  for (std::size_t i = 1; i < rep.sign_tests.size(); ++i) {
    b_ok = b_ok && rep.sign_tests[i].reject_h1;
    zs += fmt("%s%.2f", i == 1 ? "" : ",", rep.sign_tests[i].z_h1);
  }

  // Training-order invariance: other seeds and permutation counts, and the
  // dataset itself in shuffled order.
  const std::string base = format_eval_report(rep);
  bool c_ok = true;
  for (std::uint64_t s = 1; s <= 3; ++s) {
    LooConfig other = full;
    other.seed = s;
    other.permutations = 100;
    c_ok = c_ok && format_eval_report(leave_one_out(ds, other)) == base;
    Rng rng(derive_seed(kRoot, {9, s}));
    std::vector<std::size_t> perm(ds.queries.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    rng.shuffle(std::span<std::size_t>(perm));
    Dataset shuffled = ds;
    for (std::size_t i = 0; i < perm.size(); ++i) shuffled.queries[i] = ds.queries[perm[i]];
    const auto srep = leave_one_out(shuffled, full);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      c_ok = c_ok && srep.learned.ranks[i] == rep.learned.ranks[perm[i]];
    }
  }

  LooConfig click;
  click.mode = FeedbackMode::kClick;
  click.permutations = 100;
  click.seed = derive_seed(kRoot, {9, 100});
  const auto crep = leave_one_out(ds, click);
  const double clicked = crep.learned.avg_rank;
  const bool d_ok = std::abs(clicked - learned) <= 1.0;

  const bool audits_ok = rep.theorem1_violations == 0 && rep.theorem2_violations == 0 &&
                         crep.theorem1_violations == 0 && crep.theorem2_violations == 0;

  report("AC9", a_ok && b_ok && c_ok && d_ok && audits_ok,
         fmt("(a) learned avg_rank %.3f vs dominant %.3f [%s]; (b) H1 z vs weak experts %s [%s]; "
             "(c) full-mode order invariance [%s]; (d) click avg_rank %.3f vs full %.3f [%s]; "
             "learner audits over %lld training runs [%s]",
             learned, dominant, a_ok ? "ok" : "fail", zs.c_str(), b_ok ? "ok" : "fail",
             c_ok ? "ok" : "fail", clicked, learned, d_ok ? "ok" : "fail",
             static_cast<long long>(rep.training_runs + crep.training_runs),
             audits_ok ? "ok" : "fail"));
}

void ac10_randomized() {
  optimal_bench();
  total_bench();
  report("AC10", randomized_bench_runs > 0 && min_pair_fraction >= 0.5,
         fmt("min kept fraction of reduced weight over every randomized trial in %lld bench "
             "cells = %.4f (>= 0.5)",
             static_cast<long long>(randomized_bench_runs), min_pair_fraction));
}

}  // namespace
}  // namespace prefrank

// With no arguments every criterion runs; otherwise only the named ones.
int main(int argc, char** argv) {
  using namespace prefrank;
  const std::vector<std::pair<std::string, void (*)()>> criteria = {
      {"AC1", ac1_factor_two},  {"AC2", ac2_goodness},        {"AC3", ac3_coincide},
      {"AC4", ac4_worked_examples}, {"AC5", ac5_hub_family},  {"AC6", ac6_binary_linear},
      {"AC7", ac7_learner},     {"AC8", ac8_learner},         {"AC9", ac9_metasearch},
      {"AC10", ac10_randomized}};
  const std::vector<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted) {
    if (std::none_of(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == w; })) {
      std::fprintf(stderr, "unknown criterion %s\n", w.c_str());
      return 2;
    }
  }
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [id, run] : criteria) {
    if (wanted.empty() || std::find(wanted.begin(), wanted.end(), id) != wanted.end()) run();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("acceptance: %d failure(s), %.1f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
