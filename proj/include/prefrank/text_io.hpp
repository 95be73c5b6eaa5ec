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

// Line-oriented text formats. All readers skip blank lines (except where
// they separate dataset queries) and lines starting with '#'. Fields are
// separated by tabs or spaces.
//
//   graph     u  v  weight          unlisted ordered pairs default to 1/2
//   feedback  winner  loser [weight]
//   rounds    R [name]               starts a round
//             E index label=score... score "_" is Bottom; labels missing
//                                    from an expert line are Bottom
//             F winner loser [weight]
//   dataset   Q id relevant          starts a query
//             E index label...       best first; 0-based expert index

#ifndef PREFRANK_TEXT_IO_HPP_
#define PREFRANK_TEXT_IO_HPP_

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "prefrank/metasearch.hpp"
#include "prefrank/preference.hpp"

namespace prefrank {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LabeledGraph {
  InstanceSet instances;  // first-appearance order
  PreferenceMatrix pref;
};

LabeledGraph read_graph(std::istream& in);
void write_graph(std::ostream& out, const InstanceSet& instances, const PreferenceMatrix& pref);

// Labels must already be interned in `instances`.
Feedback read_feedback(std::istream& in, const InstanceSet& instances);

struct RoundInput {
  std::string name;
  InstanceSet universe;  // labels in first-appearance order over E lines
  std::vector<OrderingFunction> experts;
  Feedback feedback;
};

// Every round must supply lines for experts 0..N-1 with one N for the file.
std::vector<RoundInput> read_rounds(std::istream& in);

Dataset read_dataset(std::istream& in, int list_cap = kDefaultListCap);
void write_dataset(std::ostream& out, const Dataset& dataset);

}  // namespace prefrank

#endif  // PREFRANK_TEXT_IO_HPP_
