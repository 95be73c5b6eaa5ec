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

#include "prefrank/metasearch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "prefrank/rng.hpp"

namespace prefrank {

namespace {

std::size_t idx(Index i) { return static_cast<std::size_t>(i); }

SystemStats make_stats(std::string name, std::vector<Rank> ranks, int list_cap) {
  SystemStats s;
  s.name = std::move(name);
  s.ranks = std::move(ranks);
  s.top_k.resize(static_cast<std::size_t>(list_cap));
  for (int k = 1; k <= list_cap; ++k) s.top_k[static_cast<std::size_t>(k - 1)] = top_k(s.ranks, k);
  s.avg_rank = s.ranks.empty() ? static_cast<double>(list_cap + 1) : avg_rank(s.ranks, list_cap + 1);
  return s;
}

Rank position_of(const TotalOrder& order, const std::optional<Index>& relevant) {
  if (!relevant) return std::nullopt;
  return static_cast<int>(order.position(*relevant));
}

Feedback noisy_click_feedback(const TotalOrder& presented, Index relevant, const LooConfig& config,
                              Rng& rng) {
  Feedback clean = click_feedback(presented, relevant);
  if (config.click_drop <= 0.0 && config.click_flip <= 0.0) return clean;
  Feedback out;
  for (const auto& p : clean.pairs()) {
    if (rng.bernoulli(config.click_drop)) continue;
    if (rng.bernoulli(config.click_flip)) {
      out.add(p.loser, p.winner, p.weight);
    } else {
      out.add(p.winner, p.loser, p.weight);
    }
  }
  return out;
}

Rank lower_median(std::vector<Rank> ranks) {
  // Missing ranks sort after every present rank.
  std::sort(ranks.begin(), ranks.end(), [](const Rank& a, const Rank& b) {
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
  });
  return ranks[(ranks.size() - 1) / 2];
}

}  // namespace

void validate(const Dataset& dataset) {
  if (dataset.n_experts < 1) throw std::invalid_argument("dataset needs at least one expert");
  if (dataset.list_cap < 1) throw std::invalid_argument("list cap must be >= 1");
  for (const auto& q : dataset.queries) {
    if (static_cast<int>(q.expert_lists.size()) != dataset.n_experts) {
      throw std::invalid_argument("query " + q.id + " does not have one list per expert");
    }
    bool any = false;
    for (const auto& list : q.expert_lists) {
      if (static_cast<int>(list.size()) > dataset.list_cap) {
        throw std::invalid_argument("query " + q.id + " has a list longer than the cap");
      }
      std::unordered_set<std::string> seen;
      for (const auto& page : list) {
        if (!seen.insert(page).second) {
          throw std::invalid_argument("query " + q.id + " lists page " + page + " twice");
        }
      }
      any = any || !list.empty();
    }
    if (!any) throw std::invalid_argument("query " + q.id + " has only empty lists");
  }
}

OrderingFunction encode_expert(std::span<const std::string> list, const InstanceSet& universe,
                               UnlistedMode mode, int cap) {
  if (static_cast<int>(list.size()) > cap) {
    throw std::invalid_argument("expert list longer than the cap");
  }
  std::vector<Score> scores(idx(universe.size()),
                            mode == UnlistedMode::kZero ? Score(0.0) : Score::bottom());
  std::vector<bool> seen(idx(universe.size()), false);
  for (std::size_t k = 0; k < list.size(); ++k) {
    const Index u = universe.at(list[k]);
    if (seen[idx(u)]) throw std::invalid_argument("duplicate page in expert list: " + list[k]);
    seen[idx(u)] = true;
    scores[idx(u)] = Score(static_cast<double>(cap) - static_cast<double>(k));
  }
  return OrderingFunction(std::move(scores));
}

QueryProblem build_problem(const Query& query, int cap, UnlistedMode mode) {
  QueryProblem p;
  for (const auto& list : query.expert_lists) {
    for (const auto& page : list) p.universe.intern(page);
  }
  p.relevant = p.universe.find(query.relevant);
  for (const auto& list : query.expert_lists) {
    p.experts.push_back(encode_expert(list, p.universe, mode, cap));
    p.expert_prefs.push_back(induce_preference(p.experts.back()));
    auto it = std::find(list.begin(), list.end(), query.relevant);
    p.expert_ranks.push_back(it == list.end() ? Rank{}
                                              : Rank{static_cast<int>(it - list.begin()) + 1});
  }
  return p;
}

Feedback full_feedback(Index relevant, Index universe_size) {
  if (relevant < 0 || relevant >= universe_size) {
    throw std::invalid_argument("relevant page is not in the universe");
  }
  Feedback f;
  for (Index u = 0; u < universe_size; ++u) {
    if (u != relevant) f.add(relevant, u);
  }
  return f;
}

Feedback full_feedback(const Query& query, const InstanceSet& universe) {
  const auto rel = universe.find(query.relevant);
  if (!rel) throw std::invalid_argument("relevant page " + query.relevant + " is not in the universe");
  return full_feedback(*rel, universe.size());
}

Feedback click_feedback(const TotalOrder& presented, Index relevant) {
  Feedback f;
  for (Index u : presented.top_down()) {
    if (u == relevant) break;
    f.add(relevant, u);
  }
  return f;
}

double avg_rank(std::span<const Rank> ranks, int cap) {
  if (ranks.empty()) throw std::invalid_argument("avg_rank of an empty sequence");
  if (cap < 1) throw std::invalid_argument("avg_rank cap must be >= 1");
  double total = 0.0;
  for (const auto& r : ranks) total += (r && *r <= cap - 1) ? *r : cap;
  return total / static_cast<double>(ranks.size());
}

int top_k(std::span<const Rank> ranks, int k) {
  return static_cast<int>(
      std::count_if(ranks.begin(), ranks.end(), [k](const Rank& r) { return r && *r <= k; }));
}

SignTestResult sign_test(std::span<const Rank> learned, std::span<const Rank> expert, int cap) {
  if (learned.size() != expert.size()) {
    throw std::invalid_argument("sign_test: sequences are not aligned");
  }
  auto effective = [cap](const Rank& r) { return (r && *r <= cap - 1) ? *r : cap; };
  SignTestResult out;
  for (std::size_t q = 0; q < learned.size(); ++q) {
    const int l = effective(learned[q]);
    const int e = effective(expert[q]);
    if (l == cap && e == cap) continue;
    ++out.n_comparable;
    if (l < e) {
      ++out.learned_better;
    } else if (e < l) {
      ++out.expert_better;
    } else {
      ++out.ties;
    }
  }
  out.decided = out.n_comparable > 0;
  auto z = [](int wins, int n) {
    if (n == 0) return 0.0;
    const double half = static_cast<double>(n) / 2.0;
    return (static_cast<double>(wins) - half) / std::sqrt(static_cast<double>(n) / 4.0);
  };
  out.z_h1 = z(out.learned_better, out.learned_better + out.expert_better);
  out.z_h2 = z(out.learned_better, out.n_comparable);
  out.reject_h1 = out.learned_better + out.expert_better > 0 && out.z_h1 >= kSignTestZ;
  out.reject_h2 = out.decided && out.z_h2 >= kSignTestZ;
  return out;
}

EvalReport leave_one_out(const Dataset& dataset, const LooConfig& config) {
  validate(dataset);
  if (dataset.queries.empty()) throw std::invalid_argument("leave_one_out needs queries");
  if (config.permutations < 1) throw std::invalid_argument("permutations must be >= 1");

  LearnerConfig learner = config.learner;
  learner.n_experts = dataset.n_experts;
  if (learner.prior && learner.prior->size() != dataset.n_experts) learner.prior.reset();
  init(learner);  // validates

  const std::size_t nq = dataset.queries.size();
  std::vector<QueryProblem> problems;
  problems.reserve(nq);
  for (const auto& q : dataset.queries) {
    problems.push_back(build_problem(q, dataset.list_cap, config.unlisted));
  }

  EvalReport report;
  report.list_cap = dataset.list_cap;

  auto train = [&](std::span<const std::size_t> order, std::uint64_t noise_seed) {
    LearnerState state = init(learner);
    Rng noise(noise_seed);
    for (std::size_t q : order) {
      const QueryProblem& p = problems[q];
      const Prediction pred = round_predict(learner, state, p.expert_prefs);
      Feedback fb;
      if (p.relevant) {
        fb = config.mode == FeedbackMode::kFull
                 ? full_feedback(*p.relevant, p.universe.size())
                 : noisy_click_feedback(pred.order, *p.relevant, config, noise);
      }
      state = round_update(learner, std::move(state), pred, fb);
    }
    ++report.training_runs;
    if (state.round > 0 && !audit_theorem1(learner, state).holds) ++report.theorem1_violations;
    for (const auto& rec : state.history) {
      if (!audit_theorem2(rec)) ++report.theorem2_violations;
    }
    return state;
  };

  std::vector<Rank> learned(nq);
  for (std::size_t h = 0; h < nq; ++h) {
    std::vector<std::size_t> others;
    others.reserve(nq - 1);
    for (std::size_t q = 0; q < nq; ++q) {
      if (q != h) others.push_back(q);
    }
    const int runs = config.mode == FeedbackMode::kFull ? 1 : config.permutations;
    std::vector<Rank> ranks;
    ranks.reserve(static_cast<std::size_t>(runs));
    for (int r = 0; r < runs; ++r) {
      std::vector<std::size_t> order = others;
      const std::uint64_t cell = derive_seed(config.seed, {h, static_cast<std::uint64_t>(r)});
      if (config.mode == FeedbackMode::kClick) {
        Rng shuffle_rng(cell);
        shuffle_rng.shuffle(std::span<std::size_t>(order));
      }
      const LearnerState state = train(order, derive_seed(cell, {1}));
      const Prediction test = round_predict(learner, state, problems[h].expert_prefs);
      ranks.push_back(position_of(test.order, problems[h].relevant));
    }
    learned[h] = lower_median(std::move(ranks));
  }

  report.learned = make_stats("learned", std::move(learned), dataset.list_cap);
  for (int i = 0; i < dataset.n_experts; ++i) {
    std::vector<Rank> ranks(nq);
    for (std::size_t q = 0; q < nq; ++q) ranks[q] = problems[q].expert_ranks[static_cast<std::size_t>(i)];
    report.experts.push_back(make_stats("expert_" + std::to_string(i), std::move(ranks),
                                        dataset.list_cap));
    report.sign_tests.push_back(
        sign_test(report.learned.ranks, report.experts.back().ranks, dataset.list_cap + 1));
  }
  return report;
}

std::vector<EvalReport> beta_sweep(const Dataset& dataset, const LooConfig& config,
                                   std::span<const double> betas) {
  std::vector<EvalReport> out;
  for (double beta : betas) {
    LooConfig c = config;
    c.learner.beta = beta;
    out.push_back(leave_one_out(dataset, c));
  }
  return out;
}

std::string format_eval_report(const EvalReport& report) {
  std::ostringstream out;
  char buf[128];
  const int cap = report.list_cap;
  auto top_at = [cap](const SystemStats& s, int k) {
    return s.top_k[static_cast<std::size_t>(std::min(k, cap) - 1)];
  };
  out << "system\ttop1\ttop10\ttop" << cap << "\tavg_rank\n";
  auto row = [&](const SystemStats& s) {
    std::snprintf(buf, sizeof buf, "%s\t%d\t%d\t%d\t%.4f\n", s.name.c_str(), top_at(s, 1),
                  top_at(s, 10), top_at(s, cap), s.avg_rank);
    out << buf;
  };
  row(report.learned);
  for (const auto& e : report.experts) row(e);
  out << "sign_test\texpert\tn_comparable\tlearned_better\texpert_better\tties\tz_h1\treject_h1\t"
         "z_h2\treject_h2\n";
  for (std::size_t i = 0; i < report.sign_tests.size(); ++i) {
    const auto& t = report.sign_tests[i];
    std::snprintf(buf, sizeof buf, "sign_test\t%s\t%d\t%d\t%d\t%d\t%.4f\t%s\t%.4f\t%s\n",
                  report.experts[i].name.c_str(), t.n_comparable, t.learned_better,
                  t.expert_better, t.ties, t.z_h1, t.reject_h1 ? "yes" : "no", t.z_h2,
                  t.reject_h2 ? "yes" : "no");
    out << buf;
  }
  return out.str();
}

Dataset gen_synthetic(const SyntheticParams& params) {
  if (params.n_queries < 1 || params.experts.empty() || params.universe_size < 1 ||
      params.list_length < 1 || params.list_cap < 1) {
    throw std::invalid_argument("synthetic parameters must be positive");
  }
  if (params.list_length > params.list_cap) {
    throw std::invalid_argument("list_length exceeds list_cap");
  }
  bool reachable = false;
  for (const auto& e : params.experts) {
    if (e.hit_prob < 0.0 || e.hit_prob > 1.0 || e.top_prob < 0.0 || e.top_prob > 1.0) {
      throw std::invalid_argument("expert probabilities must lie in [0, 1]");
    }
    reachable = reachable || e.hit_prob > 0.0;
  }
  if (!reachable) throw std::invalid_argument("no expert can list the relevant page");

  Dataset ds;
  ds.n_experts = static_cast<int>(params.experts.size());
  ds.list_cap = params.list_cap;
  Rng rng(params.seed);
  const auto pool_size = static_cast<std::size_t>(params.universe_size);
  while (static_cast<int>(ds.queries.size()) < params.n_queries) {
    Query q;
    q.id = "q" + std::to_string(ds.queries.size());
    const std::string prefix = q.id + "_p";
    const auto relevant = static_cast<std::size_t>(rng.below(pool_size));
    q.relevant = prefix + std::to_string(relevant);

    std::vector<std::size_t> distractors;
    for (std::size_t j = 0; j < pool_size; ++j) {
      if (j != relevant) distractors.push_back(j);
    }
    bool listed_somewhere = false;
    for (const auto& profile : params.experts) {
      rng.shuffle(std::span<std::size_t>(distractors));
      const std::size_t len =
          std::min(static_cast<std::size_t>(params.list_length), pool_size);
      std::vector<std::size_t> pages(distractors.begin(),
                                     distractors.begin() + static_cast<std::ptrdiff_t>(
                                                               std::min(len, distractors.size())));
      if (rng.bernoulli(profile.hit_prob)) {
        std::size_t pos = 0;
        while (pos + 1 < len && !rng.bernoulli(profile.top_prob)) ++pos;
        if (pages.size() >= len) pages.pop_back();
        pages.insert(pages.begin() + static_cast<std::ptrdiff_t>(std::min(pos, pages.size())),
                     relevant);
        listed_somewhere = true;
      }
      std::vector<std::string> list;
      list.reserve(pages.size());
      for (std::size_t j : pages) list.push_back(prefix + std::to_string(j));
      q.expert_lists.push_back(std::move(list));
    }
    if (listed_somewhere) ds.queries.push_back(std::move(q));
  }
  return ds;
}

}  // namespace prefrank
