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

// Series writers. CSV: header row, 17 significant digits, '\n' endings.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "triad/experiment.hpp"

namespace triad::cli {

/// printf("%.17g"), independent of the global locale.
std::string format_number(double v);

/// x column followed by the named series (all series when `names` is empty).
std::string scan_csv(const ScanResult& scan, const std::vector<std::string>& names = {});
nlohmann::json scan_json(const ScanResult& scan, const std::vector<std::string>& names = {});

/// Names of the series whose name starts with `prefix`.
std::vector<std::string> series_with_prefix(const ScanResult& scan, const std::string& prefix);

/// Writes `content` verbatim; throws Error on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace triad::cli
