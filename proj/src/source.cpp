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

#include "triad/source.hpp"

#include <cmath>

#include "triad/errors.hpp"

namespace triad {

namespace {

bool is_probability(double p) { return p >= 0.0 && p < 1.0; }

int sum(const std::array<int, 3>& a) { return a[0] + a[1] + a[2]; }

// All triples of non-negative integers with sum <= budget, lexicographic.
std::vector<std::array<int, 3>> triples_up_to(int budget) {
  std::vector<std::array<int, 3>> out;
  for (int a = 0; a <= budget; ++a) {
    for (int b = 0; a + b <= budget; ++b) {
      for (int c = 0; a + b + c <= budget; ++c) out.push_back({a, b, c});
    }
  }
  return out;
}

}  // namespace

void SourceParams::validate() const {
  if (!(lambda >= 0.0 && lambda < 1.0)) throw DomainError("source: lambda must lie in [0, 1)");
  if (!(purity > 0.0 && purity <= 1.0)) throw DomainError("source: purity must lie in (0, 1]");
  if (!is_probability(p_noise_idler) || !is_probability(p_noise_signal)) {
    throw DomainError("source: noise probabilities must lie in [0, 1)");
  }
  if (max_total_photons < 2) throw DomainError("source: photon truncation must be at least 2");
  if (max_noise_photons < 0) throw DomainError("source: noise truncation must be non-negative");
}

int EmissionTerm::total_photons() const { return 2 * sum(pairs) + noise_photons(); }

int EmissionTerm::noise_photons() const { return sum(signal_noise) + sum(idler_noise); }

int HeraldedConfiguration::idler_photons() const { return sum(pair_idlers) + sum(noise_idlers); }

double emission_weight(const SourceParams& params, const std::array<int, 3>& pairs,
                       const std::array<int, 3>& signal_noise,
                       const std::array<int, 3>& idler_noise) {
  const double l2 = params.lambda * params.lambda;
  const double vacuum = (1.0 - l2) * (1.0 - params.p_noise_idler) * (1.0 - params.p_noise_signal);
  double w = 1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    w *= vacuum * std::pow(l2, pairs[i]) * std::pow(params.p_noise_signal, signal_noise[i]) *
         std::pow(params.p_noise_idler, idler_noise[i]);
  }
  return w;
}

EmissionEnsemble enumerate_terms(const SourceParams& params) {
  params.validate();
  EmissionEnsemble out;
  const auto pair_triples = triples_up_to(params.max_total_photons / 2);
  const auto noise_triples = triples_up_to(params.max_noise_photons);
  for (const auto& n : pair_triples) {
    for (const auto& k : noise_triples) {
      for (const auto& l : noise_triples) {
        EmissionTerm t{n, k, l, 0.0};
        if (t.noise_photons() > params.max_noise_photons) continue;
        if (t.total_photons() > params.max_total_photons) continue;
        t.weight = emission_weight(params, n, k, l);
        if (t.weight == 0.0) continue;  // exact zeros from lambda = 0 or no noise
        out.retained_weight += t.weight;
        out.terms.push_back(t);
      }
    }
  }
  out.deficit = 1.0 - out.retained_weight;
  return out;
}

std::vector<HeraldedConfiguration> heralded_ensemble(const std::vector<EmissionTerm>& terms,
                                                     const std::array<double, 3>& herald_efficiency) {
  for (double eta : herald_efficiency) {
    if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("herald efficiency must lie in (0, 1]");
  }
  std::vector<HeraldedConfiguration> out;
  for (const auto& t : terms) {
    double herald = 1.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const int signals = t.pairs[i] + t.signal_noise[i];
      herald *= 1.0 - std::pow(1.0 - herald_efficiency[i], signals);
    }
    if (herald == 0.0) continue;
    HeraldedConfiguration c;
    c.term = t;
    c.herald_probability = herald;
    c.weight = t.weight * herald;
    c.pair_idlers = t.pairs;
    c.noise_idlers = t.idler_noise;
    out.push_back(c);
  }
  return out;
}

}  // namespace triad
