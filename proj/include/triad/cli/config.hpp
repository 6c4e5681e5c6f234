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

// Run configuration: strict JSON parsing (unknown keys are errors, reported
// with their JSON pointer) and the inverse serialisation used for metadata.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "triad/errors.hpp"
#include "triad/experiment.hpp"

namespace triad::cli {

class ConfigError : public Error {
 public:
  ConfigError(const std::string& pointer, const std::string& message)
      : Error((pointer.empty() ? std::string("/") : pointer) + ": " + message), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

enum class RunMode { kIdealScan, kExperiment, kValidate, kQubitAnalysis };
enum class OutputFormat { kCsv, kJson };

std::string to_string(RunMode m);
std::string to_string(OutputFormat f);

struct GridConfig {
  std::string variable;  ///< "tau" or "phi"
  std::vector<double> values;  ///< explicit grid; empty means start/stop/points
  double start = 0.0;
  double stop = 0.0;
  int points = 0;

  std::vector<double> expand() const;
};

struct SpectrumConfig {
  std::vector<double> frequencies;
  std::vector<double> intensity;
};

struct QubitConfig {
  std::array<double, 3> moduli{0.5, 0.5, 0.5};
  std::optional<double> measured_phi;
  double tolerance = 0.05;  ///< radians
};

struct ValidateConfig {
  int instances = 500;
  int max_photons = 4;
  double tolerance = 1e-9;  ///< largest accepted oracle deviation (exclusive)
};

struct RunConfig {
  RunMode mode = RunMode::kIdealScan;
  OutputFormat format = OutputFormat::kCsv;
  std::string out_dir = ".";
  std::string stem = "triadsim";
  std::uint64_t seed = 1;
  int threads = 0;

  Preparation preparation;
  std::optional<SpectrumConfig> spectrum;
  GridConfig grid;
  ExperimentSetup setup;
  bool custom_tritter = false;
  ValidateConfig validate;
  QubitConfig qubit;
};

/// Throws ConfigError. Missing blocks take their defaults; a "provenance"
/// block, as written into metadata files, is accepted and ignored.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// Complete configuration with every default made explicit.
nlohmann::json to_json(const RunConfig& config);

}  // namespace triad::cli
