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

#include "triad/cascade.hpp"

#include <cmath>

#include "triad/errors.hpp"

namespace triad {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

int leaves(Splitter s) {
  switch (s) {
    case Splitter::kNone: return 1;
    case Splitter::kBeamsplitter2: return 2;
    case Splitter::kTritter3: return 3;
  }
  return 1;
}

std::string to_string(Splitter s) {
  switch (s) {
    case Splitter::kNone: return "none";
    case Splitter::kBeamsplitter2: return "beamsplitter_2way";
    case Splitter::kTritter3: return "tritter_3way";
  }
  return "none";
}

Splitter splitter_from_string(const std::string& name) {
  if (name == "none") return Splitter::kNone;
  if (name == "beamsplitter_2way") return Splitter::kBeamsplitter2;
  if (name == "tritter_3way") return Splitter::kTritter3;
  throw DomainError("unknown splitter '" + name + "'");
}

void DetectionCascade::validate() const {
  if (splitters.empty()) throw DomainError("cascade: no outputs");
  if (!(efficiency > 0.0 && efficiency <= 1.0)) {
    throw DomainError("cascade: detector efficiency must lie in (0, 1]");
  }
}

DetectionCascade DetectionCascade::config_a(double efficiency) {
  return {{Splitter::kBeamsplitter2, Splitter::kNone, Splitter::kBeamsplitter2}, efficiency};
}

DetectionCascade DetectionCascade::config_b(double efficiency) {
  return {{Splitter::kTritter3, Splitter::kNone, Splitter::kNone}, efficiency};
}

double click_count_probability(int photons, int leaf_count, double efficiency, int clicks) {
  if (clicks < 0 || clicks > leaf_count) return 0.0;
  if (photons == 0) return clicks == 0 ? 1.0 : 0.0;
  // A given set A of c leaves is exactly the clicking set with probability
  // sum_{B in A} (-1)^{c-|B|} q_B^N, q_B = 1 - eta + eta |B| / L being the
  // chance that a photon is lost or lands in B.
  double exact_set = 0.0;
  for (int b = 0; b <= clicks; ++b) {
    const double q = 1.0 - efficiency + efficiency * b / leaf_count;
    const double sign = (clicks - b) % 2 == 0 ? 1.0 : -1.0;
    exact_set += sign * binomial(clicks, b) * std::pow(q, photons);
  }
  return binomial(leaf_count, clicks) * exact_set;
}

std::map<Occupation, double> click_distribution(const DetectionCascade& cascade,
                                                const Occupation& occupation) {
  if (static_cast<int>(occupation.size()) != cascade.outputs()) {
    throw DomainError("cascade: occupation length differs from the output count");
  }
  std::map<Occupation, double> dist{{Occupation{}, 1.0}};
  for (std::size_t k = 0; k < occupation.size(); ++k) {
    const int l = leaves(cascade.splitters[k]);
    std::map<Occupation, double> next;
    for (const auto& [pattern, p] : dist) {
      for (int c = 0; c <= l; ++c) {
        const double pc = click_count_probability(occupation[k], l, cascade.efficiency, c);
        if (pc == 0.0) continue;
        Occupation extended = pattern;
        extended.push_back(c);
        next[extended] += p * pc;
      }
    }
    dist = std::move(next);
  }
  return dist;
}

std::map<Occupation, double> click_distribution(const DetectionCascade& cascade,
                                                const std::map<Occupation, double>& occupations) {
  std::map<Occupation, double> total;
  for (const auto& [occ, w] : occupations) {
    if (w == 0.0) continue;
    for (const auto& [pattern, p] : click_distribution(cascade, occ)) total[pattern] += w * p;
  }
  return total;
}

std::vector<Occupation> click_patterns(const DetectionCascade& cascade) {
  std::vector<Occupation> out{Occupation{}};
  for (Splitter s : cascade.splitters) {
    std::vector<Occupation> next;
    for (const auto& pattern : out) {
      for (int c = leaves(s); c >= 0; --c) {
        Occupation extended = pattern;
        extended.push_back(c);
        next.push_back(std::move(extended));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace triad
