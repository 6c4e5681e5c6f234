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

// Seeded random instances for validation.

#pragma once

#include <random>

#include "triad/interference.hpp"
#include "triad/linalg.hpp"
#include "triad/mixedstate.hpp"
#include "triad/modes.hpp"

namespace triad {

using Rng = std::mt19937_64;

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal absorbed into Q.
CMatrix random_unitary(int n, Rng& rng);

/// Uniformly random unit vector in C^dim.
CVector random_state(int dim, Rng& rng);

/// Gram matrix of n random unit vectors in C^dim.
GramMatrix random_gram(int n, int dim, Rng& rng);

/// Random density matrix of the given dimension and rank.
InternalDensity random_density(int dim, int rank, Rng& rng);

}  // namespace triad
