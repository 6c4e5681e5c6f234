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

#include "triad/mixedstate.hpp"

#include <cmath>
#include <string>

#include "triad/errors.hpp"

namespace triad {

namespace {

constexpr double kDegenerate = 1e-10;

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

InternalDensity::InternalDensity(CMatrix rho) : rho_(std::move(rho)) {
  if (rho_.size() == 0 || !is_hermitian(rho_, kTolerance)) {
    throw DomainError("density: not hermitian");
  }
  if (std::abs(rho_.trace() - 1.0) > kTolerance) throw DomainError("density: trace differs from one");
  if (min_eigenvalue(rho_) < -kTolerance) throw DomainError("density: not positive semi-definite");
}

InternalDensity InternalDensity::pure(const CVector& psi) {
  return InternalDensity(psi * psi.adjoint());
}

double InternalDensity::purity() const { return (rho_ * rho_).trace().real(); }

TemporalBasis gram_schmidt_temporal(const CMatrix& temporal_overlaps) {
  // Validates hermiticity, unit diagonal and positivity.
  const GramMatrix gram(temporal_overlaps);
  const Eigen::Index n = gram.size();
  const CMatrix& s = gram.matrix();

  // |t_i> = sum_j c(i, j)|tau_j>, so <tau_j|t_i> = c(i, j) and
  // <t_k|t_i> = sum_j conj(c(k, j)) c(i, j). Processing column by column gives
  //   c(i, j) = (<t_j|t_i> - sum_{l<j} conj(c(j, l)) c(i, l)) / c(j, j)
  // which for three modes reproduces c(1,0) = <t1|t2>, c(2,0) = <t1|t3>,
  // c(2,1) = alpha = (<t2|t3> - <t2|t1><t1|t3>) / sqrt(1 - |<t1|t2>|^2).
  TemporalBasis basis;
  basis.overlaps = s;
  basis.coefficients = CMatrix::Zero(n, n);
  CMatrix& c = basis.coefficients;
  for (Eigen::Index j = 0; j < n; ++j) {
    double residual = 1.0;
    for (Eigen::Index l = 0; l < j; ++l) residual -= std::norm(c(j, l));
    if (residual < kDegenerate) continue;  // |t_j> already spanned: no new direction
    const double pivot = std::sqrt(residual);
    c(j, j) = pivot;
    ++basis.rank;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Complex v = s(j, i);
      for (Eigen::Index l = 0; l < j; ++l) v -= std::conj(c(j, l)) * c(i, l);
      c(i, j) = v / pivot;
    }
  }
  return basis;
}

double common_mode_weight(double purity, PurityReading reading) {
  if (!(purity > 0.0 && purity <= 1.0)) throw DomainError("purity must lie in (0, 1]");
  if (reading == PurityReading::kCommonModeWeight) return purity;
  if (purity < 0.5) {
    throw DomainError("purity below 1/2 is not reachable with a two-dimensional mixed subspace");
  }
  // p^2 + (1-p)^2 = purity, larger root
  return 0.5 * (1.0 + std::sqrt(2.0 * purity - 1.0));
}

InternalDensity build_density(const CVector& pure_coordinates, int photon, double purity,
                              PurityReading reading, int photon_count) {
  if (photon < 0 || photon >= photon_count) throw DomainError("density: photon index out of range");
  if (std::abs(pure_coordinates.squaredNorm() - 1.0) > 1e-12) {
    throw DomainError("density: pure part is not normalised");
  }
  const double p = common_mode_weight(purity, reading);
  CMatrix mixed = CMatrix::Zero(1 + photon_count, 1 + photon_count);
  mixed(0, 0) = p;
  mixed(1 + photon, 1 + photon) = 1.0 - p;
  const CMatrix pure = pure_coordinates * pure_coordinates.adjoint();
  return InternalDensity(kron(pure, mixed));
}

std::array<CVector, 3> pure_coordinates(std::span<const InternalState, 3> states) {
  CMatrix t(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) t(i, k) = temporal_overlap(states[i].temporal(), states[k].temporal());
  }
  const TemporalBasis basis = gram_schmidt_temporal(t);
  const Eigen::Index aux_dim = states[0].aux().size();
  std::array<CVector, 3> out;
  for (int i = 0; i < 3; ++i) {
    if (states[i].aux().size() != aux_dim) throw DomainError("density: auxiliary sizes differ");
    // A dropped pivot leaves the row short by at most 1e-10 in norm.
    const CVector temporal = basis.coefficients.row(i).transpose().normalized();
    const CVector pol = states[i].polarization().vector();
    const CVector aux = aux_dim > 0 ? states[i].aux() : CVector::Ones(1);
    out[i] = kron(kron(temporal, pol), aux);
  }
  return out;
}

std::array<InternalDensity, 3> build_densities(std::span<const InternalState, 3> states,
                                               double purity, PurityReading reading) {
  const auto coords = pure_coordinates(states);
  return {build_density(coords[0], 0, purity, reading), build_density(coords[1], 1, purity, reading),
          build_density(coords[2], 2, purity, reading)};
}

DensityTraces density_traces(const InternalDensity& rho1, const InternalDensity& rho2,
                             const InternalDensity& rho3) {
  if (rho1.dim() != rho2.dim() || rho1.dim() != rho3.dim()) {
    throw DomainError("mixed probability: densities live in different bases");
  }
  const CMatrix& a = rho1.matrix();
  const CMatrix& b = rho2.matrix();
  const CMatrix& c = rho3.matrix();
  DensityTraces t;
  t.t12 = (a * b).trace().real();
  t.t13 = (a * c).trace().real();
  t.t23 = (b * c).trace().real();
  t.t123 = (a * b * c).trace();
  return t;
}

double mixed_event_probability(const Network& net, const EventSpec& event,
                               const InternalDensity& rho1, const InternalDensity& rho2,
                               const InternalDensity& rho3) {
  const DensityTraces t = density_traces(rho1, rho2, rho3);
  return three_photon_probability(three_photon_permanents(net, event), t.t12, t.t13, t.t23, t.t123);
}

double p111_mixed(const Network& net, const InternalDensity& rho1, const InternalDensity& rho2,
                  const InternalDensity& rho3) {
  if (net.modes() != 3) throw DomainError("p111: need a three-mode network");
  return mixed_event_probability(net, EventSpec({0, 1, 2}, {1, 1, 1}), rho1, rho2, rho3);
}

}  // namespace triad
