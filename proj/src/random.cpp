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

#include "triad/random.hpp"

#include <cmath>

#include "triad/errors.hpp"

namespace triad {

namespace {

CMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}

}  // namespace

CMatrix random_unitary(int n, Rng& rng) {
  if (n < 1) throw DomainError("random unitary: size must be positive");
  Eigen::HouseholderQR<CMatrix> qr(ginibre(n, n, rng));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

CVector random_state(int dim, Rng& rng) {
  if (dim < 1) throw DomainError("random state: dimension must be positive");
  CVector v = ginibre(dim, 1, rng).col(0);
  return v.normalized();
}

GramMatrix random_gram(int n, int dim, Rng& rng) {
  CMatrix x(dim, n);
  for (int a = 0; a < n; ++a) x.col(a) = random_state(dim, rng);
  CMatrix s = x.adjoint() * x;
  for (int a = 0; a < n; ++a) s(a, a) = 1.0;  // exact diagonal
  return GramMatrix(0.5 * (s + s.adjoint()));
}

InternalDensity random_density(int dim, int rank, Rng& rng) {
  if (rank < 1 || rank > dim) throw DomainError("random density: rank out of range");
  const CMatrix a = ginibre(dim, rank, rng);
  CMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return InternalDensity(0.5 * (rho + rho.adjoint()));
}

}  // namespace triad
