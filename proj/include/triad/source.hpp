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

// Three heralded pair sources with higher-order emission and uncorrelated
// noise, truncated to a finite photon-number-resolved ensemble.

#pragma once

#include <array>
#include <vector>

namespace triad {

struct SourceParams {
  double lambda = 0.16;
  double purity = 0.9;
  double p_noise_idler = 0.035;   ///< P_I
  double p_noise_signal = 0.009;  ///< P_S
  int max_total_photons = 8;      ///< signals + idlers + noise over all sources
  int max_noise_photons = 3;

  /// Throws DomainError on out-of-range fields.
  void validate() const;
};

/// One joint emission of the three sources. Source i emits pairs[i] pairs,
/// signal_noise[i] uncorrelated signal-arm photons and idler_noise[i]
/// uncorrelated idler-arm photons.
struct EmissionTerm {
  std::array<int, 3> pairs{};
  std::array<int, 3> signal_noise{};
  std::array<int, 3> idler_noise{};
  double weight = 0.0;

  int total_photons() const;
  int noise_photons() const;
};

struct EmissionEnsemble {
  std::vector<EmissionTerm> terms;
  double retained_weight = 0.0;
  double deficit = 0.0;  ///< 1 - retained_weight
};

/// Per-source weight (1-l^2)(1-P_I)(1-P_S) l^{2n} P_S^k P_I^l, multiplied
/// over the three sources.
double emission_weight(const SourceParams& params, const std::array<int, 3>& pairs,
                       const std::array<int, 3>& signal_noise,
                       const std::array<int, 3>& idler_noise);

/// Every joint term within the photon-number truncation, ordered
/// lexicographically in (n1, n2, n3, k1, k2, k3, l1, l2, l3).
EmissionEnsemble enumerate_terms(const SourceParams& params);

/// Idler-side content of one emission term given that all three heralds fired.
struct HeraldedConfiguration {
  EmissionTerm term;
  double herald_probability = 0.0;  ///< all three herald detectors click
  double weight = 0.0;              ///< term.weight * herald_probability
  std::array<int, 3> pair_idlers{};   ///< photons in the source's nominal state
  std::array<int, 3> noise_idlers{};  ///< photons in fresh orthogonal modes

  int idler_photons() const;
};

/// Threshold heralds: source i clicks with probability
/// 1 - (1 - eta_i)^{n_i + k_i}. Terms that can never herald are dropped.
std::vector<HeraldedConfiguration> heralded_ensemble(const std::vector<EmissionTerm>& terms,
                                                     const std::array<double, 3>& herald_efficiency);

}  // namespace triad
