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

// Three-photon event probabilities for mixed internal states.
//
// Mixedness model: each photon's density matrix is rho_pure (x) rho_mixed,
// with rho_mixed,i = p|c><c| + (1-p)|d_i><d_i| over a common auxiliary mode c
// and per-photon modes d_i orthogonal to c and to each other.

#pragma once

#include <array>
#include <span>

#include "triad/interference.hpp"
#include "triad/linalg.hpp"
#include "triad/modes.hpp"

namespace triad {

/// Hermitian, positive semi-definite, unit-trace density matrix over an
/// orthonormal basis shared by every photon it is combined with.
class InternalDensity {
 public:
  static constexpr double kTolerance = 1e-10;

  InternalDensity() = default;
  explicit InternalDensity(CMatrix rho);

  /// |psi><psi| for a normalised coordinate vector.
  static InternalDensity pure(const CVector& psi);

  const CMatrix& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }
  /// Tr(rho^2)
  double purity() const;

 private:
  CMatrix rho_;
};

/// Orthonormal expansion of three temporal modes. Row i of `coefficients`
/// holds the amplitudes of |t_i> on |tau_1>, |tau_2>, |tau_3>, so
/// overlaps(i, k) = sum_j conj(c(i, j)) c(k, j). Directions whose residual
/// norm falls below 1e-10 are dropped; their columns stay zero.
struct TemporalBasis {
  CMatrix overlaps;
  CMatrix coefficients;
  int rank = 0;
};

TemporalBasis gram_schmidt_temporal(const CMatrix& temporal_overlaps);

/// How the configured purity fixes the common-mode weight p.
enum class PurityReading {
  kStatePurity,       ///< Tr(rho^2) = purity, i.e. p^2 + (1-p)^2 = purity
  kCommonModeWeight,  ///< p = purity directly
};

/// Weight p of the common auxiliary mode. Throws DomainError outside (0, 1],
/// and for state purities below 1/2.
double common_mode_weight(double purity, PurityReading reading = PurityReading::kStatePurity);

/// rho_pure (x) rho_mixed for photon `photon` of `photon_count`; the mixed
/// factor lives on 1 + photon_count auxiliary modes (c, d_1, ...).
InternalDensity build_density(const CVector& pure_coordinates, int photon, double purity,
                              PurityReading reading = PurityReading::kStatePurity,
                              int photon_count = 3);

/// Coordinates of three pure states in the shared basis
/// temporal (Gram-Schmidt) (x) polarisation (H, V) (x) aux.
std::array<CVector, 3> pure_coordinates(std::span<const InternalState, 3> states);

/// Densities of three photons prepared in `states` with the given purity.
std::array<InternalDensity, 3> build_densities(std::span<const InternalState, 3> states,
                                               double purity,
                                               PurityReading reading = PurityReading::kStatePurity);

/// Tr(rho_i rho_j) and Tr(rho_1 rho_2 rho_3).
struct DensityTraces {
  double t12 = 0.0;
  double t13 = 0.0;
  double t23 = 0.0;
  Complex t123 = 0.0;
};

DensityTraces density_traces(const InternalDensity& rho1, const InternalDensity& rho2,
                             const InternalDensity& rho3);

/// Any three-photon occupation for one photon in each listed input mode.
double mixed_event_probability(const Network& net, const EventSpec& event,
                               const InternalDensity& rho1, const InternalDensity& rho2,
                               const InternalDensity& rho3);

/// P111 for photons in inputs 1, 2, 3 of a three-mode network.
double p111_mixed(const Network& net, const InternalDensity& rho1, const InternalDensity& rho2,
                  const InternalDensity& rho3);

}  // namespace triad
