// Copyright 2026 The causekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace causekit {

/// Exit codes of `run`.
enum ExitCode : int {
  kPositive = 0,
  kNegative = 1,
  kUsageError = 2,
  kBudgetExceeded = 3,
};

/// Command-line entry point. `args` excludes the program name. The verdict
/// document goes to `out`, diagnostics for failures to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace causekit
