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

// Self-test: permanent path against the Fock-space oracle.

#pragma once

#include <cstdint>

namespace triad {

struct OracleEquivalenceReport {
  int instances = 0;
  int events = 0;
  double max_deviation = 0.0;    ///< over every occupation of every instance
  double max_total_error = 0.0;  ///< |sum of oracle distribution - 1|
};

/// Random unitaries and internal states. Photon numbers cycle through
/// 1..max_photons; three-mode networks carry up to three photons (one per
/// input), larger photon numbers use a network with one mode per photon.
OracleEquivalenceReport oracle_equivalence(int instances, std::uint64_t seed, int max_photons = 4);

}  // namespace triad
