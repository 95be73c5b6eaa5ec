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

#ifndef PREFRANK_TOOLS_CLI_HPP_
#define PREFRANK_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace prefrank::cli {

// Exit status contract.
inline constexpr int kOk = 0;
inline constexpr int kAuditFailure = 1;
inline constexpr int kParseError = 2;
inline constexpr int kGuardViolation = 3;
inline constexpr int kIoError = 4;

// Runs the command line `args` (without the program name), writing reports
// to `out` and diagnostics to `err`. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prefrank::cli

#endif  // PREFRANK_TOOLS_CLI_HPP_
