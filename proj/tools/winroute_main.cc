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

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "winroute/cli.hpp"

int main(int argc, char** argv) {
  try {
    const auto result = winroute::cli::Run(std::vector<std::string>(argv + 1, argv + argc));
    auto& stream = result.exit_code == winroute::cli::kInputError ? std::cerr : std::cout;
    stream << result.report;
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
