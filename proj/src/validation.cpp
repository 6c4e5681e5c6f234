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

#include "triad/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "triad/errors.hpp"
#include "triad/oracle.hpp"
#include "triad/random.hpp"

namespace triad {

OracleEquivalenceReport oracle_equivalence(int instances, std::uint64_t seed, int max_photons) {
  if (instances < 1 || max_photons < 1) throw DomainError("validation: nothing to check");
  Rng rng(seed);
  std::uniform_int_distribution<int> internal_dim(1, 4);
  OracleEquivalenceReport report;
  for (int i = 0; i < instances; ++i) {
    const int n = 1 + i % max_photons;
    const int m = std::max(3, n);
    const Network net(random_unitary(m, rng));
    const GramMatrix g = random_gram(n, internal_dim(rng), rng);

    // Photons enter a random subset of the inputs, in random order.
    std::vector<int> modes(static_cast<std::size_t>(m));
    std::iota(modes.begin(), modes.end(), 0);
    std::shuffle(modes.begin(), modes.end(), rng);
    modes.resize(static_cast<std::size_t>(n));

    const auto oracle = oracle_output_distribution(net, g, modes);
    const auto direct = output_distribution(net, modes, g);
    double total = 0.0;
    for (const auto& [occ, p] : oracle) {
      total += p;
      report.max_deviation = std::max(report.max_deviation, std::abs(p - direct.at(occ)));
      ++report.events;
    }
    report.max_total_error = std::max(report.max_total_error, std::abs(total - 1.0));
    ++report.instances;
  }
  return report;
}

}  // namespace triad
