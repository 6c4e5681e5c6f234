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

// Threshold detection behind passive splitters. Each photon leaving an output
// picks one of the L leaves uniformly, survives with probability eta, and a
// leaf clicks when at least one photon survives there. The pseudo-count of an
// output is its number of clicking leaves.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "triad/interference.hpp"

namespace triad {

enum class Splitter { kNone, kBeamsplitter2, kTritter3 };

int leaves(Splitter s);
std::string to_string(Splitter s);
/// Accepts "none", "beamsplitter_2way", "tritter_3way".
Splitter splitter_from_string(const std::string& name);

struct DetectionCascade {
  std::vector<Splitter> splitters{Splitter::kNone, Splitter::kNone, Splitter::kNone};
  double efficiency = 1.0;  ///< per leaf detector

  void validate() const;
  int outputs() const { return static_cast<int>(splitters.size()); }

  /// Beam splitters on outputs 1 and 3 (suppression measurements).
  static DetectionCascade config_a(double efficiency);
  /// A tritter on output 1 (triad-phase measurements).
  static DetectionCascade config_b(double efficiency);
};

/// Probability that exactly `clicks` of `leaf_count` leaves fire when
/// `photons` photons arrive.
double click_count_probability(int photons, int leaf_count, double efficiency, int clicks);

/// Pseudo-count pattern distribution for one output occupation.
std::map<Occupation, double> click_distribution(const DetectionCascade& cascade,
                                                const Occupation& occupation);

/// Pushes a weighted occupation distribution (any photon numbers) through the
/// cascade.
std::map<Occupation, double> click_distribution(const DetectionCascade& cascade,
                                                const std::map<Occupation, double>& occupations);

/// Every pseudo-count pattern the cascade can produce, lexicographically
/// descending like `occupations`.
std::vector<Occupation> click_patterns(const DetectionCascade& cascade);

}  // namespace triad
