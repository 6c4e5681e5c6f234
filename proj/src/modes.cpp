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

#include "triad/modes.hpp"

#include <algorithm>
#include <cmath>

#include "triad/errors.hpp"

namespace triad {

namespace {

constexpr double kNormTolerance = 1e-12;

double trapezoid(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return sum;
}

}  // namespace

SampledSpectrum::SampledSpectrum(std::vector<double> frequencies, std::vector<double> intensity)
    : frequencies_(std::move(frequencies)), intensity_(std::move(intensity)) {
  if (frequencies_.size() != intensity_.size()) {
    throw InvalidSpectrum("spectrum: grid and intensity lengths differ");
  }
  if (frequencies_.size() < 2) throw InvalidSpectrum("spectrum: need at least two samples");
  for (std::size_t i = 0; i < frequencies_.size(); ++i) {
    if (!std::isfinite(frequencies_[i]) || !std::isfinite(intensity_[i])) {
      throw InvalidSpectrum("spectrum: non-finite sample");
    }
    if (intensity_[i] < 0.0) throw InvalidSpectrum("spectrum: negative intensity");
    if (i > 0 && !(frequencies_[i] > frequencies_[i - 1])) {
      throw InvalidSpectrum("spectrum: frequency grid is not strictly increasing");
    }
  }
  const double norm = trapezoid(frequencies_, intensity_);
  if (!(norm > 0.0)) throw InvalidSpectrum("spectrum: zero total intensity");
  for (double& v : intensity_) v /= norm;
}

PolarizationState::PolarizationState(Complex h, Complex v) : h_(h), v_(v) {
  const double norm = std::norm(h) + std::norm(v);
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw DomainError("polarisation state is not normalised");
  }
}

PolarizationState PolarizationState::from_angles(double alpha, double eta) {
  return {std::cos(alpha), std::polar(1.0, eta) * std::sin(alpha)};
}

InternalState::InternalState(TemporalMode temporal, PolarizationState polarization, CVector aux)
    : temporal_(std::move(temporal)), polarization_(polarization), aux_(std::move(aux)) {
  if (const auto* g = std::get_if<GaussianTemporalMode>(&temporal_)) {
    if (!(g->sigma > 0.0)) throw DomainError("gaussian mode: sigma must be positive");
  } else {
    const auto& s = std::get<SpectralTemporalMode>(temporal_);
    if (!s.spectrum) throw DomainError("spectral mode: missing spectrum");
  }
  if (aux_.size() > 0 && std::abs(aux_.squaredNorm() - 1.0) > kNormTolerance) {
    throw DomainError("internal state: auxiliary vector is not normalised");
  }
}

InternalState InternalState::with_delay(double delay) const {
  InternalState copy = *this;
  std::visit([delay](auto& mode) { mode.delay = delay; }, copy.temporal_);
  return copy;
}

InternalState InternalState::with_aux(CVector aux) const {
  return InternalState(temporal_, polarization_, std::move(aux));
}

InternalState InternalState::with_global_phase(double chi) const {
  const Complex phase = std::polar(1.0, chi);
  InternalState copy = *this;
  copy.polarization_ = PolarizationState(phase * polarization_.h(), phase * polarization_.v());
  return copy;
}

Complex gaussian_overlap(const GaussianTemporalMode& a, const GaussianTemporalMode& b) {
  if (a.sigma != b.sigma || a.omega != b.omega) {
    throw UnsupportedModePair("gaussian overlap: widths or centre frequencies differ");
  }
  if (!(a.sigma > 0.0)) throw DomainError("gaussian overlap: sigma must be positive");
  const double dt = a.delay - b.delay;
  return std::exp(Complex(-dt * dt / (4.0 * a.sigma * a.sigma), -a.omega * dt));
}

Complex spectral_overlap(const SampledSpectrum& spectrum, double dt) {
  if (!std::isfinite(dt)) throw DomainError("spectral overlap: delay is not finite");
  const auto w = spectrum.frequencies();
  const auto intensity = spectrum.intensity();
  Complex sum = 0.0;
  Complex prev = std::polar(intensity[0], -dt * w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) {
    const Complex cur = std::polar(intensity[i], -dt * w[i]);
    sum += 0.5 * (w[i] - w[i - 1]) * (prev + cur);
    prev = cur;
  }
  return sum;
}

Complex temporal_overlap(const TemporalMode& a, const TemporalMode& b) {
  if (const auto* ga = std::get_if<GaussianTemporalMode>(&a)) {
    const auto* gb = std::get_if<GaussianTemporalMode>(&b);
    if (!gb) throw UnsupportedModePair("temporal overlap: gaussian vs sampled spectrum");
    return gaussian_overlap(*ga, *gb);
  }
  const auto& sa = std::get<SpectralTemporalMode>(a);
  const auto* sb = std::get_if<SpectralTemporalMode>(&b);
  if (!sb) throw UnsupportedModePair("temporal overlap: sampled spectrum vs gaussian");
  if (sa.spectrum != sb->spectrum && !(*sa.spectrum == *sb->spectrum)) {
    throw UnsupportedModePair("temporal overlap: photons have different spectra");
  }
  // <t_a|t_b> = zeta(t_b - t_a)
  return spectral_overlap(*sa.spectrum, sb->delay - sa.delay);
}

Complex overlap(const PolarizationState& a, const PolarizationState& b) {
  return std::conj(a.h()) * b.h() + std::conj(a.v()) * b.v();
}

Complex overlap(const InternalState& a, const InternalState& b) {
  if (a.aux().size() != b.aux().size()) {
    throw UnsupportedModePair("overlap: auxiliary basis sizes differ");
  }
  Complex result = temporal_overlap(a.temporal(), b.temporal()) *
                   overlap(a.polarization(), b.polarization());
  if (a.aux().size() > 0) result *= a.aux().dot(b.aux());  // dot conjugates the left side
  return result;
}

GramMatrix::GramMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (!is_square(entries_)) throw DomainError("gram matrix: not square");
  if (!is_hermitian(entries_, kHermitianTolerance)) {
    throw DomainError("gram matrix: not hermitian");
  }
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    if (std::abs(entries_(i, i) - 1.0) > kHermitianTolerance) {
      throw DomainError("gram matrix: diagonal entry differs from one");
    }
  }
  if (min_eigenvalue(entries_) < -kPsdTolerance) {
    throw DomainError("gram matrix: not positive semi-definite");
  }
}

GramMatrix GramMatrix::select(std::span<const int> photons) const {
  const auto n = static_cast<Eigen::Index>(photons.size());
  CMatrix sub(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) sub(j, k) = entries_(photons[j], photons[k]);
  }
  return GramMatrix(std::move(sub));
}

GramMatrix gram_matrix(std::span<const InternalState> states) {
  if (states.empty()) throw DomainError("gram matrix: no states");
  const auto n = static_cast<Eigen::Index>(states.size());
  CMatrix s(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    s(j, j) = 1.0;
    for (Eigen::Index k = j + 1; k < n; ++k) {
      s(j, k) = overlap(states[j], states[k]);
      s(k, j) = std::conj(s(j, k));
    }
  }
  return GramMatrix(std::move(s));
}

double triad_phase(Complex s12, Complex s23, Complex s31, double tolerance) {
  const Complex cyclic = s12 * s23 * s31;
  if (std::abs(cyclic) < tolerance) {
    throw TriadPhaseUndefined("triad phase: cyclic overlap product vanishes");
  }
  return wrap_angle(std::arg(cyclic));
}

double triad_phase(const GramMatrix& g, double tolerance) {
  if (g.size() != 3) throw DomainError("triad phase: need a 3x3 gram matrix");
  return triad_phase(g(0, 1), g(1, 2), g(2, 0), tolerance);
}

std::array<double, 3> overlap_moduli(const GramMatrix& g) {
  if (g.size() != 3) throw DomainError("overlap moduli: need a 3x3 gram matrix");
  return {std::abs(g(0, 1)), std::abs(g(1, 2)), std::abs(g(2, 0))};
}

std::optional<std::vector<double>> qubit_triad_phase(double r12, double r23, double r31) {
  for (double r : {r12, r23, r31}) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("qubit triad phase: moduli must lie in (0, 1)");
  }
  // |phi1> = |0>, |phi2> = cos a|0> + sin a|1>, |phi3> = cos b|0> + e^{i g} sin b|1>
  // with cos a = r12, cos b = r31; then <phi2|phi3> = c + e^{-i g} s.
  const double c = r12 * r31;
  const double s = std::sqrt((1.0 - r12 * r12) * (1.0 - r31 * r31));
  double cos_gamma = (r23 * r23 - c * c - s * s) / (2.0 * c * s);
  constexpr double kEdge = 1e-12;
  if (std::abs(cos_gamma) > 1.0 + kEdge) return std::nullopt;
  // acos is ill-conditioned at +-1: a rounding error of 1e-16 there moves
  // gamma by 1e-8 and splits the single boundary solution in two.
  if (std::abs(cos_gamma) > 1.0 - kEdge) cos_gamma = std::copysign(1.0, cos_gamma);
  const double gamma = std::acos(cos_gamma);

  std::vector<double> phases;
  for (double g : {gamma, -gamma}) {
    const double phi = wrap_angle(std::arg(Complex(c, 0.0) + std::polar(s, -g)));
    const bool duplicate = std::any_of(phases.begin(), phases.end(), [phi](double p) {
      return angular_distance(p, phi) < 1e-12;
    });
    if (!duplicate) phases.push_back(phi);
  }
  std::sort(phases.begin(), phases.end());
  return phases;
}

DelayInvarianceReport delay_invariance_test(const SampledSpectrum& spectrum,
                                            std::span<const std::array<double, 3>> delays) {
  if (delays.size() < 2) throw DomainError("delay invariance: need at least two delay triples");
  DelayInvarianceReport report;
  report.phases.reserve(delays.size());
  for (const auto& t : delays) {
    // <t_i|t_j> = zeta(t_j - t_i)
    const Complex s12 = spectral_overlap(spectrum, t[1] - t[0]);
    const Complex s23 = spectral_overlap(spectrum, t[2] - t[1]);
    const Complex s31 = spectral_overlap(spectrum, t[0] - t[2]);
    report.phases.push_back(triad_phase(s12, s23, s31));
  }
  for (double phi : report.phases) {
    report.max_phase_deviation =
        std::max(report.max_phase_deviation, angular_distance(phi, report.phases.front()));
  }
  return report;
}

}  // namespace triad
