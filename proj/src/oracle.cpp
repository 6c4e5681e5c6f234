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

#include "triad/oracle.hpp"

#include <cmath>
#include <string>

#include "triad/errors.hpp"

namespace triad {

namespace {

constexpr double kNullEigenvalue = 1e-12;

void check_photon_count(std::size_t n) {
  if (n > static_cast<std::size_t>(kOracleMaxPhotons)) {
    throw SizeLimit("oracle: " + std::to_string(n) + " photons exceed the cap of " +
                    std::to_string(kOracleMaxPhotons));
  }
}

}  // namespace

double FockState::norm() const {
  double total = 0.0;
  for (const auto& [occ, amp] : amplitudes) total += std::norm(amp);
  return std::sqrt(total);
}

int FockState::photons() const {
  if (amplitudes.empty()) return 0;
  int n = 0;
  for (int k : amplitudes.begin()->first) n += k;
  return n;
}

FockState vacuum(int modes, int internal_dim) {
  if (modes < 1 || internal_dim < 1) throw DomainError("oracle: empty mode space");
  FockState s;
  s.modes = modes;
  s.internal_dim = internal_dim;
  s.amplitudes[std::vector<int>(static_cast<std::size_t>(modes * internal_dim), 0)] = 1.0;
  return s;
}

void apply_creation(FockState& state, const CMatrix& c) {
  if (c.rows() != state.modes || c.cols() != state.internal_dim) {
    throw DomainError("oracle: creation amplitudes have the wrong shape");
  }
  std::map<std::vector<int>, Complex> next;
  for (const auto& [occ, amp] : state.amplitudes) {
    for (int m = 0; m < state.modes; ++m) {
      for (int d = 0; d < state.internal_dim; ++d) {
        const Complex a = c(m, d);
        if (a == Complex(0.0)) continue;
        std::vector<int> raised = occ;
        const auto slot = static_cast<std::size_t>(m * state.internal_dim + d);
        raised[slot] += 1;
        // a^dag |n> = sqrt(n + 1) |n + 1>
        next[raised] += amp * a * std::sqrt(static_cast<double>(raised[slot]));
      }
    }
  }
  state.amplitudes = std::move(next);
}

FockState expand_photons(std::span<const CMatrix> photons) {
  if (photons.empty()) throw DomainError("oracle: no photons");
  check_photon_count(photons.size());
  FockState s = vacuum(static_cast<int>(photons[0].rows()), static_cast<int>(photons[0].cols()));
  for (const auto& c : photons) apply_creation(s, c);
  const double n = s.norm();
  if (!(n > 1e-12)) throw DomainError("oracle: input state has zero norm");
  for (auto& [occ, amp] : s.amplitudes) amp /= n;
  return s;
}

CMatrix internal_coordinates(const GramMatrix& g) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(g.matrix());
  const auto& values = eig.eigenvalues();
  const CMatrix& vectors = eig.eigenvectors();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values(i) > kNullEigenvalue) kept.push_back(i);
  }
  CMatrix x(static_cast<Eigen::Index>(kept.size()), g.size());
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const Eigen::Index i = kept[r];
    x.row(static_cast<Eigen::Index>(r)) = std::sqrt(values(i)) * vectors.col(i).adjoint();
  }
  return x;
}

FockState expand_coordinates(std::span<const CVector> coordinates, std::span<const int> input_modes,
                             int modes) {
  if (coordinates.size() != input_modes.size()) {
    throw DomainError("oracle: one input mode per photon required");
  }
  std::vector<CMatrix> photons;
  for (std::size_t a = 0; a < coordinates.size(); ++a) {
    const int mode = input_modes[a];
    if (mode < 0 || mode >= modes) throw DomainError("oracle: input mode outside the network");
    CMatrix c = CMatrix::Zero(modes, coordinates[a].size());
    c.row(mode) = coordinates[a].transpose();
    photons.push_back(std::move(c));
  }
  return expand_photons(photons);
}

FockState expand_inputs(const GramMatrix& g, std::span<const int> input_modes, int modes) {
  if (g.size() != static_cast<Eigen::Index>(input_modes.size())) {
    throw DomainError("oracle: gram matrix size differs from photon count");
  }
  check_photon_count(input_modes.size());
  const CMatrix x = internal_coordinates(g);
  std::vector<CVector> coords;
  for (Eigen::Index a = 0; a < x.cols(); ++a) coords.emplace_back(x.col(a));
  return expand_coordinates(coords, input_modes, modes);
}

FockState expand_inputs(std::span<const InternalState> states, std::span<const int> input_modes,
                        int modes) {
  return expand_inputs(gram_matrix(states), input_modes, modes);
}

FockState evolve(const FockState& state, const CMatrix& u) {
  if (u.rows() != state.modes || u.cols() != state.modes) {
    throw DomainError("oracle: network size differs from the spatial mode count");
  }
  const int dim = state.internal_dim;
  FockState out;
  out.modes = state.modes;
  out.internal_dim = dim;
  for (const auto& [occ, amp] : state.amplitudes) {
    // Rebuild |n> = prod (a^dag_i)^{n_i} / sqrt(n_i!) |0> with transformed operators.
    FockState term = vacuum(state.modes, dim);
    term.amplitudes.begin()->second = amp;
    for (std::size_t slot = 0; slot < occ.size(); ++slot) {
      const int count = occ[slot];
      if (count == 0) continue;
      const int m = static_cast<int>(slot) / dim;
      const int d = static_cast<int>(slot) % dim;
      CMatrix c = CMatrix::Zero(state.modes, dim);
      c.col(d) = u.col(m);
      double factorial = 1.0;
      for (int k = 1; k <= count; ++k) {
        apply_creation(term, c);
        factorial *= k;
      }
      for (auto& [o, a] : term.amplitudes) a /= std::sqrt(factorial);
    }
    for (const auto& [o, a] : term.amplitudes) out.amplitudes[o] += a;
  }
  return out;
}

std::map<Occupation, double> measure(const FockState& state, std::span<const int> detector,
                                     int detectors) {
  if (static_cast<int>(detector.size()) != state.modes) {
    throw DomainError("oracle: detector map must name every spatial mode");
  }
  std::map<Occupation, double> dist;
  for (const auto& [occ, amp] : state.amplitudes) {
    Occupation s(static_cast<std::size_t>(detectors), 0);
    for (std::size_t slot = 0; slot < occ.size(); ++slot) {
      const int m = static_cast<int>(slot) / state.internal_dim;
      s[static_cast<std::size_t>(detector[static_cast<std::size_t>(m)])] += occ[slot];
    }
    dist[s] += std::norm(amp);
  }
  return dist;
}

std::map<Occupation, double> evolve_and_measure(const FockState& state, const Network& net) {
  std::vector<int> detector(static_cast<std::size_t>(state.modes));
  for (int m = 0; m < state.modes; ++m) detector[static_cast<std::size_t>(m)] = m;
  auto dist = measure(evolve(state, net.matrix()), detector, state.modes);
  // Report every occupation, including exact zeros, in the library's order.
  std::map<Occupation, double> full;
  for (const auto& occ : occupations(state.photons(), state.modes)) {
    const auto it = dist.find(occ);
    full[occ] = it == dist.end() ? 0.0 : it->second;
  }
  return full;
}

std::map<Occupation, double> oracle_output_distribution(const Network& net, const GramMatrix& g,
                                                        std::span<const int> input_modes) {
  return evolve_and_measure(expand_inputs(g, input_modes, net.modes()), net);
}

std::map<Occupation, double> oracle_mixed_distribution(
    const Network& net, std::span<const InternalDensity> densities,
    std::span<const int> input_modes) {
  if (densities.size() != input_modes.size()) {
    throw DomainError("oracle: one input mode per density required");
  }
  check_photon_count(densities.size());
  struct Branch {
    std::vector<double> weights;
    std::vector<CVector> vectors;
  };
  std::vector<Branch> branches;
  for (const auto& rho : densities) {
    if (rho.dim() != densities[0].dim()) throw DomainError("oracle: densities live in different bases");
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho.matrix());
    Branch b;
    for (Eigen::Index i = 0; i < rho.dim(); ++i) {
      if (eig.eigenvalues()(i) > kNullEigenvalue) {
        b.weights.push_back(eig.eigenvalues()(i));
        b.vectors.emplace_back(eig.eigenvectors().col(i));
      }
    }
    branches.push_back(std::move(b));
  }

  std::map<Occupation, double> total;
  std::vector<std::size_t> pick(densities.size(), 0);
  while (true) {
    double w = 1.0;
    std::vector<CVector> coords;
    for (std::size_t a = 0; a < pick.size(); ++a) {
      w *= branches[a].weights[pick[a]];
      coords.push_back(branches[a].vectors[pick[a]]);
    }
    for (const auto& [occ, p] :
         evolve_and_measure(expand_coordinates(coords, input_modes, net.modes()), net)) {
      total[occ] += w * p;
    }
    // odometer over eigen-branches
    std::size_t a = 0;
    while (a < pick.size() && ++pick[a] == branches[a].weights.size()) pick[a++] = 0;
    if (a == pick.size()) break;
  }
  return total;
}

}  // namespace triad
