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

#include "prefrank/text_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>

namespace prefrank {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool is_comment(const std::vector<std::string>& fields) {
  return fields.empty() || fields.front().starts_with('#');
}

double parse_number(const std::string& s, int line) {
  double x = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x)) {
    throw ParseError(line, "expected a number, got '" + s + "'");
  }
  return x;
}

int parse_index(const std::string& s, int line) {
  int x = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, x);
  if (ec != std::errc() || ptr != end || x < 0) {
    throw ParseError(line, "expected a nonnegative integer, got '" + s + "'");
  }
  return x;
}

double parse_weight(const std::vector<std::string>& f, std::size_t at, int line) {
  if (f.size() <= at) return 1.0;
  const double w = parse_number(f[at], line);
  if (!(w > 0.0)) throw ParseError(line, "feedback weight must be positive");
  return w;
}

}  // namespace

LabeledGraph read_graph(std::istream& in) {
  struct Entry {
    Index u, v;
    double w;
  };
  LabeledGraph g;
  std::vector<Entry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = split_fields(line);
    if (is_comment(f)) continue;
    if (f.size() != 3) throw ParseError(lineno, "expected 'u v weight'");
    if (f[0] == f[1]) throw ParseError(lineno, "self loop");
    const double w = parse_number(f[2], lineno);
    if (w < 0.0 || w > 1.0) throw ParseError(lineno, "weight outside [0, 1]");
    entries.push_back({g.instances.intern(f[0]), g.instances.intern(f[1]), w});
  }
  if (g.instances.size() == 0) throw ParseError(lineno, "graph has no instances");
  g.pref = PreferenceMatrix(g.instances.size(), 0.5);
  for (const auto& e : entries) g.pref.set(e.u, e.v, e.w);
  return g;
}

void write_graph(std::ostream& out, const InstanceSet& instances, const PreferenceMatrix& pref) {
  std::ostringstream buf;
  buf.precision(17);
  for (Index u = 0; u < pref.size(); ++u) {
    for (Index v = 0; v < pref.size(); ++v) {
      if (u != v) buf << instances.label(u) << '\t' << instances.label(v) << '\t' << pref(u, v) << '\n';
    }
  }
  out << buf.str();
}

Feedback read_feedback(std::istream& in, const InstanceSet& instances) {
  Feedback fb;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = split_fields(line);
    if (is_comment(f)) continue;
    if (f.size() < 2 || f.size() > 3) throw ParseError(lineno, "expected 'winner loser [weight]'");
    const auto w = instances.find(f[0]);
    const auto l = instances.find(f[1]);
    if (!w || !l) throw ParseError(lineno, "unknown instance in feedback");
    if (*w == *l) throw ParseError(lineno, "winner equals loser");
    fb.add(*w, *l, parse_weight(f, 2, lineno));
  }
  return fb;
}

std::vector<RoundInput> read_rounds(std::istream& in) {
  struct PendingFeedback {
    std::string winner, loser;
    double weight;
    int line;
  };
  struct Pending {
    std::string name;
    int line = 0;
    std::map<int, std::vector<std::pair<std::string, Score>>> experts;
    std::vector<PendingFeedback> feedback;
  };

  std::vector<RoundInput> rounds;
  std::optional<Pending> cur;
  int n_experts = -1;

  auto finish = [&]() {
    if (!cur) return;
    const int count = cur->experts.empty() ? 0 : cur->experts.rbegin()->first + 1;
    if (count == 0 || static_cast<int>(cur->experts.size()) != count) {
      throw ParseError(cur->line, "round must list experts 0..N-1");
    }
    if (n_experts == -1) n_experts = count;
    if (count != n_experts) throw ParseError(cur->line, "expert count differs between rounds");
    RoundInput r;
    r.name = cur->name;
    for (const auto& [i, scores] : cur->experts) {
      for (const auto& [label, s] : scores) r.universe.intern(label);
    }
    for (const auto& [i, scores] : cur->experts) {
      std::vector<Score> v(static_cast<std::size_t>(r.universe.size()), Score::bottom());
      for (const auto& [label, s] : scores) v[static_cast<std::size_t>(r.universe.at(label))] = s;
      r.experts.emplace_back(std::move(v));
    }
    for (const auto& pf : cur->feedback) {
      const auto w = r.universe.find(pf.winner);
      const auto l = r.universe.find(pf.loser);
      if (!w || !l) throw ParseError(pf.line, "feedback refers to an instance no expert scored");
      r.feedback.add(*w, *l, pf.weight);
    }
    rounds.push_back(std::move(r));
    cur.reset();
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = split_fields(line);
    if (is_comment(f)) continue;
    const std::string& tag = f[0];
    if (tag == "R") {
      finish();
      cur.emplace();
      cur->line = lineno;
      cur->name = f.size() > 1 ? f[1] : std::to_string(rounds.size() + 1);
    } else if (tag == "E") {
      if (!cur) throw ParseError(lineno, "expert line outside a round");
      if (f.size() < 2) throw ParseError(lineno, "expected 'E index label=score...'");
      const int i = parse_index(f[1], lineno);
      if (cur->experts.count(i)) throw ParseError(lineno, "expert listed twice in one round");
      auto& scores = cur->experts[i];
      std::map<std::string, bool> seen;
      for (std::size_t k = 2; k < f.size(); ++k) {
        const auto eq = f[k].rfind('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == f[k].size()) {
          throw ParseError(lineno, "expected label=score, got '" + f[k] + "'");
        }
        std::string label = f[k].substr(0, eq);
        const std::string value = f[k].substr(eq + 1);
        if (seen[label]) throw ParseError(lineno, "label scored twice: " + label);
        seen[label] = true;
        scores.emplace_back(std::move(label),
                            value == "_" ? Score::bottom() : Score(parse_number(value, lineno)));
      }
    } else if (tag == "F") {
      if (!cur) throw ParseError(lineno, "feedback line outside a round");
      if (f.size() < 3 || f.size() > 4) throw ParseError(lineno, "expected 'F winner loser [weight]'");
      if (f[1] == f[2]) throw ParseError(lineno, "winner equals loser");
      cur->feedback.push_back({f[1], f[2], parse_weight(f, 3, lineno), lineno});
    } else {
      throw ParseError(lineno, "unknown record '" + tag + "'");
    }
  }
  finish();
  if (rounds.empty()) throw ParseError(lineno, "no rounds");
  return rounds;
}

Dataset read_dataset(std::istream& in, int list_cap) {
  Dataset ds;
  ds.list_cap = list_cap;
  std::vector<std::map<int, std::vector<std::string>>> lists;
  std::vector<int> query_lines;
  int max_expert = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto f = split_fields(line);
    if (is_comment(f)) continue;
    if (f[0] == "Q") {
      if (f.size() != 3) throw ParseError(lineno, "expected 'Q id relevant'");
      ds.queries.push_back({f[1], f[2], {}});
      lists.emplace_back();
      query_lines.push_back(lineno);
    } else if (f[0] == "E") {
      if (ds.queries.empty()) throw ParseError(lineno, "expert line before any query");
      if (f.size() < 2) throw ParseError(lineno, "expected 'E index label...'");
      const int i = parse_index(f[1], lineno);
      if (lists.back().count(i)) throw ParseError(lineno, "expert listed twice in one query");
      if (static_cast<int>(f.size()) - 2 > list_cap) throw ParseError(lineno, "list exceeds cap");
      lists.back()[i] = std::vector<std::string>(f.begin() + 2, f.end());
      max_expert = std::max(max_expert, i);
    } else {
      throw ParseError(lineno, "unknown record '" + f[0] + "'");
    }
  }
  if (ds.queries.empty()) throw ParseError(lineno, "dataset has no queries");
  ds.n_experts = max_expert + 1;
  for (std::size_t q = 0; q < ds.queries.size(); ++q) {
    ds.queries[q].expert_lists.resize(static_cast<std::size_t>(ds.n_experts));
    for (auto& [i, l] : lists[q]) ds.queries[q].expert_lists[static_cast<std::size_t>(i)] = std::move(l);
  }
  try {
    validate(ds);
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
  return ds;
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
  for (std::size_t q = 0; q < dataset.queries.size(); ++q) {
    const auto& query = dataset.queries[q];
    if (q > 0) out << '\n';
    out << "Q " << query.id << ' ' << query.relevant << '\n';
    for (std::size_t i = 0; i < query.expert_lists.size(); ++i) {
      out << "E " << i;
      for (const auto& page : query.expert_lists[i]) out << ' ' << page;
      out << '\n';
    }
  }
}

}  // namespace prefrank
