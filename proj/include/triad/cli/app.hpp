// Copyright 2026 The triadsim Authors
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

// Command dispatcher for the triadsim executable.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "triad/cli/config.hpp"

namespace triad::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Default oracle-equivalence threshold for `validate`.
inline constexpr double kValidationTolerance = 1e-9;

/// Runs one configuration and returns the paths written (data files first,
/// then metadata and timestamp). Throws on failure.
std::vector<std::string> execute(const RunConfig& config, std::ostream& out);

/// `run <config>`, `validate`, `version`. Never throws; returns the exit code.
int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace triad::cli
