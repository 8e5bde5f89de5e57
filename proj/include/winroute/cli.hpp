// Copyright 2026 The winroute Authors
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

#include <string>
#include <vector>

#include "winroute/io.hpp"

namespace winroute::cli {

// 0 feasible or valid, 1 infeasible or invalid, 2 input error, 3 guard or
// budget exceeded.
enum ExitCode { kOk = 0, kNo = 1, kInputError = 2, kGuardExceeded = 3 };

struct CommandResult {
  int exit_code = kOk;
  std::string report;  // human-readable
  io::Json json;       // also written to --json-report when given
};

// `args` excludes the program name.
CommandResult Run(const std::vector<std::string>& args);

}  // namespace winroute::cli
