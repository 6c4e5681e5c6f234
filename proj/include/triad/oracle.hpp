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

// Brute-force Fock-space simulator. Deliberately naive: states are sparse maps
// from internal-resolved occupations to amplitudes, and every photon is
// applied as an explicit superposition of creation operators.

#pragma once

#include <map>
#include <span>
#include <vector>

#include "triad/interference.hpp"
#include "triad/linalg.hpp"
#include "triad/mixedstate.hpp"
#include "triad/modes.hpp"

namespace triad {

inline constexpr int kOracleMaxPhotons = 6;

/// Occupations over (spatial mode, internal index) pairs, flattened as
/// mode * internal_dim + index.
struct FockState {
  int modes = 0;
  int internal_dim = 0;
  std::map<std::vector<int>, Complex> amplitudes;

  double norm() const;
  int photons() const;
};

FockState vacuum(int modes, int internal_dim);

/// Applies sum_{m,d} c(m, d) a^dag_{m,d} in place; c is modes x internal_dim.
void apply_creation(FockState& state, const CMatrix& c);

/// Normalised product of single-photon creation operators; c[a] is photon a's
/// (modes x internal_dim) amplitude matrix.
FockState expand_photons(std::span<const CMatrix> photons);

/// Internal vectors x_a with x_a^dag x_b = g(a, b), from the eigendecomposition
/// g = V L V^dag as x = sqrt(L) V^dag. Null directions are dropped, so the
/// number of rows is the numerical rank.
CMatrix internal_coordinates(const GramMatrix& g);

/// One photon per listed input (repeats allowed) in the given internal states.
FockState expand_inputs(std::span<const InternalState> states, std::span<const int> input_modes,
                        int modes);
FockState expand_inputs(const GramMatrix& g, std::span<const int> input_modes, int modes);
/// Photon a carries the orthonormal-basis coordinates coordinates[a].
FockState expand_coordinates(std::span<const CVector> coordinates, std::span<const int> input_modes,
                             int modes);

/// a^dag_{m,d} -> sum_k u(k, m) a^dag_{k,d}, the same for every internal index.
FockState evolve(const FockState& state, const CMatrix& u);

/// Marginal over internal indices; detector[m] names the outcome slot of
/// spatial mode m (several modes may share a detector).
std::map<Occupation, double> measure(const FockState& state, std::span<const int> detector,
                                     int detectors);

std::map<Occupation, double> evolve_and_measure(const FockState& state, const Network& net);

std::map<Occupation, double> oracle_output_distribution(const Network& net, const GramMatrix& g,
                                                        std::span<const int> input_modes);

/// Mixed photons: convex combination over eigendecompositions of each density.
std::map<Occupation, double> oracle_mixed_distribution(
    const Network& net, std::span<const InternalDensity> densities,
    std::span<const int> input_modes);

}  // namespace triad
