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

// State preparation recipes, ideal delay and triad-phase scans, and the
// heralded count simulation with source noise and detection cascades.

#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "triad/cascade.hpp"
#include "triad/interference.hpp"
#include "triad/mixedstate.hpp"
#include "triad/modes.hpp"
#include "triad/source.hpp"

namespace triad {

enum class Recipe {
  kAllH,      ///< every photon |H>
  kStaticPi,  ///< |H>, (|H> + sqrt3|V>)/2, (|H> - sqrt3|V>)/2
  kDynamic,   ///< cos2t|H> + i sin2t|V>, (sqrt3|H> + |V>)/2, (sqrt3|H> - |V>)/2
  kCustom,    ///< polarisations given explicitly
};

std::string to_string(Recipe r);
/// Accepts "all_H", "static_pi", "dynamic", "custom".
Recipe recipe_from_string(const std::string& name);

struct Preparation {
  Recipe recipe = Recipe::kAllH;
  double theta = 0.0;  ///< dynamic only
  std::array<double, 3> delays{};
  double sigma = 1.0;
  double omega = 0.0;
  std::array<PolarizationState, 3> polarizations{};  ///< custom only
  /// Sampled spectrum shared by all photons; replaces the Gaussian modes.
  std::shared_ptr<const SampledSpectrum> spectrum;
};

/// The three internal states of a preparation.
std::array<InternalState, 3> prepare(const Preparation& prep);

/// |t1 - t2| = |t1 - t3| = sigma sqrt(2 ln(2 + cos 4 theta)), which together
/// with t2 = t3 sets r12 = r23 = r31 = 1/2 for the dynamic recipe.
double delay_condition(double theta, double sigma);

/// Rotation angle of the dynamic recipe whose triad phase, under the
/// library's phi = Arg(S12 S23 S31), equals `phi`. The dynamic recipe gives
/// phi = -2 Arg(sqrt3 cos 2t + i sin 2t).
double theta_for_triad_phase(double phi);

/// Dynamic recipe at the delays of `delay_condition`.
Preparation dynamic_preparation(double theta, double sigma);

struct Series {
  std::string name;
  std::vector<double> values;
};

struct ScanResult {
  std::string x_name;
  std::vector<double> x;
  std::vector<Series> series;
  double truncation_deficit = 0.0;
  bool truncation_warning = false;  ///< deficit above 1e-2
  double heralded_weight = 0.0;     ///< probability that every herald fires

  /// Throws DomainError for an unknown series.
  const Series& at(const std::string& name) const;
  bool has(const std::string& name) const;
};

/// "P" followed by the occupation digits, e.g. P210.
std::string event_name(const std::string& prefix, const Occupation& occupation);

/// P111, P011, P101, P110, then the nine remaining three-photon occupations
/// in the order P300, P030, P003, P210, P201, P120, P021, P102, P012.
std::vector<std::string> ideal_event_columns();

/// Ideal-model probabilities for one set of three pure photons through the
/// given (polarisation-independent) network, keyed by `ideal_event_columns`.
std::vector<double> ideal_event_row(const Network& net, std::span<const InternalState, 3> states);

/// t1 = -tau/2, t2 = 0, t3 = tau/2; recipe is all_H or static_pi.
ScanResult scan_delays(Recipe recipe, std::span<const double> tau_grid, double sigma);
/// Same geometry for any preparation; its delays are overwritten.
ScanResult scan_delays(const Preparation& base, std::span<const double> tau_grid);

/// Dynamic recipe on a triad-phase grid with t2 = t3 = 0 and
/// t1 = -delay_condition(theta, sigma).
ScanResult scan_triad(std::span<const double> phi_grid, double sigma);

/// tau in [-12 sigma, 12 sigma], 61 points.
std::vector<double> default_tau_grid(double sigma);
/// phi in [0, 2 pi], 33 points.
std::vector<double> default_phi_grid();

struct ExperimentSetup {
  SourceParams source;
  PurityReading purity_reading = PurityReading::kStatePurity;
  std::array<double, 3> herald_efficiency{0.5, 0.5, 0.5};
  DetectionCascade cascade = DetectionCascade::config_a(0.5);
  Network tritter_h = balanced_tritter();
  Network tritter_v = balanced_tritter();
  /// Sources that are heralded and injected; the others are ignored.
  std::array<bool, 3> injected{true, true, true};
  int threads = 0;  ///< 0: hardware concurrency

  void validate() const;
  bool polarization_dependent() const;
};

/// Settings under which `simulate_counts` reduces to the ideal model:
/// lambda = 1e-6, no noise, unit purity and efficiencies, no splitters.
ExperimentSetup ideal_setup();

/// Per heralded trial at one scan point: every idler-side photon-number
/// occupation (keys of any photon number) and the pseudo-count patterns.
struct PointDistribution {
  std::map<Occupation, double> occupations;
  std::map<Occupation, double> clicks;
};

/// One scan point; `configurations` from `heralded_ensemble`.
PointDistribution simulate_point(std::span<const InternalState, 3> states,
                                 const ExperimentSetup& setup,
                                 const std::vector<HeraldedConfiguration>& configurations);

/// Heralded statistics over a scan. Series: every three-photon occupation
/// probability P..., followed by every pseudo-count pattern N... of the
/// cascade. Points are evaluated in parallel; results do not depend on the
/// thread count.
ScanResult simulate_counts(const std::string& x_name, std::span<const double> x,
                           std::span<const std::array<InternalState, 3>> points,
                           const ExperimentSetup& setup);

ScanResult simulate_delay_scan(Recipe recipe, std::span<const double> tau_grid, double sigma,
                               const ExperimentSetup& setup);
ScanResult simulate_delay_scan(const Preparation& base, std::span<const double> tau_grid,
                               const ExperimentSetup& setup);
ScanResult simulate_triad_scan(std::span<const double> phi_grid, double sigma,
                               const ExperimentSetup& setup);

/// 1 - N(x closest to 0) / N(x of largest |x|) for the named series.
double suppression_visibility(const ScanResult& scan, const std::string& series);

}  // namespace triad
