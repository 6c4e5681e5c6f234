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

// Single-photon internal states (temporal mode, polarisation, auxiliary
// orthogonal dimensions) and the overlap geometry built from them: Gram
// matrices, the triad phase and its qubit-embeddability.

#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "triad/linalg.hpp"

namespace triad {

/// Below this modulus of S12*S23*S31 the triad phase is reported undefined.
inline constexpr double kTriadPhaseTolerance = 1e-12;

/// Gaussian wavepacket delayed by `delay`. `sigma` is the standard deviation
/// of the temporal amplitude, `omega` the central angular frequency.
struct GaussianTemporalMode {
  double delay = 0.0;
  double sigma = 1.0;
  double omega = 0.0;
};

/// Spectral intensity |psi(omega)|^2 sampled on a strictly increasing grid.
/// The intensity is rescaled on construction so that its trapezoidal
/// integral over the grid is one.
class SampledSpectrum {
 public:
  SampledSpectrum(std::vector<double> frequencies, std::vector<double> intensity);

  /// Samples `intensity(omega)` on `points` equally spaced frequencies.
  template <typename F>
  static SampledSpectrum sample(F&& intensity, double lo, double hi, std::size_t points) {
    std::vector<double> grid(points), values(points);
    for (std::size_t i = 0; i < points; ++i) {
      grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
      values[i] = intensity(grid[i]);
    }
    return SampledSpectrum(std::move(grid), std::move(values));
  }

  std::span<const double> frequencies() const { return frequencies_; }
  std::span<const double> intensity() const { return intensity_; }
  std::size_t size() const { return frequencies_.size(); }

  bool operator==(const SampledSpectrum&) const = default;

 private:
  std::vector<double> frequencies_;
  std::vector<double> intensity_;
};

/// A photon in a sampled spectral mode, delayed by `delay`.
struct SpectralTemporalMode {
  std::shared_ptr<const SampledSpectrum> spectrum;
  double delay = 0.0;
};

using TemporalMode = std::variant<GaussianTemporalMode, SpectralTemporalMode>;

/// cos(alpha)|H> + e^{i eta} sin(alpha)|V> in general; any unit vector here.
class PolarizationState {
 public:
  PolarizationState() = default;
  PolarizationState(Complex h, Complex v);

  static PolarizationState horizontal() { return {1.0, 0.0}; }
  static PolarizationState vertical() { return {0.0, 1.0}; }
  static PolarizationState from_angles(double alpha, double eta);

  Complex h() const { return h_; }
  Complex v() const { return v_; }
  Eigen::Vector2cd vector() const { return {h_, v_}; }

 private:
  Complex h_{1.0, 0.0};
  Complex v_{0.0, 0.0};
};

/// Pure single-photon internal state: temporal mode (x) polarisation (x) aux.
/// An empty aux vector stands for the common one-dimensional default; states
/// with a non-empty aux are only comparable with states of the same aux size.
class InternalState {
 public:
  InternalState() = default;
  InternalState(TemporalMode temporal, PolarizationState polarization, CVector aux = {});

  const TemporalMode& temporal() const { return temporal_; }
  const PolarizationState& polarization() const { return polarization_; }
  const CVector& aux() const { return aux_; }

  /// Copy with the temporal delay replaced.
  InternalState with_delay(double delay) const;
  /// Copy with the auxiliary vector replaced.
  InternalState with_aux(CVector aux) const;
  /// Copy multiplied by a global phase e^{i chi} (carried on the polarisation).
  InternalState with_global_phase(double chi) const;

 private:
  TemporalMode temporal_ = GaussianTemporalMode{};
  PolarizationState polarization_;
  CVector aux_;
};

/// <t1|t2> = exp(-(t1-t2)^2/(4 sigma^2) - i Omega (t1-t2)).
/// Throws UnsupportedModePair unless widths and centre frequencies agree.
Complex gaussian_overlap(const GaussianTemporalMode& a, const GaussianTemporalMode& b);

/// zeta(dt) = integral of e^{-i dt omega} |psi(omega)|^2 (trapezoid rule).
Complex spectral_overlap(const SampledSpectrum& spectrum, double dt);

/// <a|b> for two temporal modes; spectral modes use zeta(t_b - t_a).
Complex temporal_overlap(const TemporalMode& a, const TemporalMode& b);

Complex overlap(const PolarizationState& a, const PolarizationState& b);

/// <a|b>, the product of temporal, polarisation and auxiliary overlaps.
Complex overlap(const InternalState& a, const InternalState& b);

/// Hermitian positive semi-definite matrix of pairwise overlaps with unit
/// diagonal, S(j, k) = <phi_j|phi_k>.
class GramMatrix {
 public:
  static constexpr double kHermitianTolerance = 1e-12;
  static constexpr double kPsdTolerance = 1e-9;

  GramMatrix() = default;
  /// Validates the invariants; throws DomainError on violation.
  explicit GramMatrix(CMatrix entries);

  static GramMatrix identity(Eigen::Index n) { return GramMatrix(CMatrix::Identity(n, n)); }
  static GramMatrix ones(Eigen::Index n) { return GramMatrix(CMatrix::Ones(n, n)); }

  const CMatrix& matrix() const { return entries_; }
  Eigen::Index size() const { return entries_.rows(); }
  Complex operator()(Eigen::Index j, Eigen::Index k) const { return entries_(j, k); }

  /// Principal submatrix for the listed photons, in the listed order.
  GramMatrix select(std::span<const int> photons) const;

 private:
  CMatrix entries_;
};

GramMatrix gram_matrix(std::span<const InternalState> states);

/// Arg(S12 S23 S31) in [0, 2pi). Throws TriadPhaseUndefined when the
/// cyclic product's modulus is below `tolerance`.
double triad_phase(const GramMatrix& g, double tolerance = kTriadPhaseTolerance);
double triad_phase(Complex s12, Complex s23, Complex s31,
                   double tolerance = kTriadPhaseTolerance);

/// Moduli (r12, r23, r31) of a three-photon Gram matrix.
std::array<double, 3> overlap_moduli(const GramMatrix& g);

/// Triad phases realisable by three states in a two-dimensional internal
/// space with the given overlap moduli. One or two angles in [0, 2pi), or
/// nullopt when no qubit realisation exists. Moduli must lie in (0, 1).
std::optional<std::vector<double>> qubit_triad_phase(double r12, double r23, double r31);

struct DelayInvarianceReport {
  std::vector<double> phases;
  double max_phase_deviation = 0.0;
};

/// Triad phase of three photons sharing `spectrum` for each delay triple,
/// and the largest angular deviation from the first triple's value.
DelayInvarianceReport delay_invariance_test(const SampledSpectrum& spectrum,
                                            std::span<const std::array<double, 3>> delays);

}  // namespace triad
