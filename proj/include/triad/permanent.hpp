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

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include "triad/errors.hpp"
#include "triad/linalg.hpp"

namespace triad {

/// Matrices up to this size use the n! expansion in `permanent`.
inline constexpr Eigen::Index kNaivePermanentMaxSize = 4;

/// Sum over all n! permutations, in lexicographic order.
template <typename Derived>
typename Derived::Scalar permanent_naive(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (!is_square(m)) throw DomainError("permanent: matrix is not square");
  const Eigen::Index n = m.rows();
  if (n == 0) return Scalar(1);

  std::vector<Eigen::Index> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), Eigen::Index{0});
  Scalar total(0);
  do {
    Scalar term(1);
    for (Eigen::Index i = 0; i < n; ++i) term *= m(i, sigma[static_cast<std::size_t>(i)]);
    total += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

/// Ryser's inclusion-exclusion formula walked in Gray-code order, so each
/// step adds or removes a single column from the running row sums.
template <typename Derived>
typename Derived::Scalar permanent_ryser(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (!is_square(m)) throw DomainError("permanent: matrix is not square");
  const Eigen::Index n = m.rows();
  if (n == 0) return Scalar(1);
  if (n > 62) throw SizeLimit("permanent: matrix too large for Ryser enumeration");

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> row_sums =
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n);
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  Scalar total(0);
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const int flip = std::countr_zero(k);
    const std::uint64_t bit = std::uint64_t{1} << flip;
    gray ^= bit;
    if (gray & bit) {
      row_sums += m.col(flip);
    } else {
      row_sums -= m.col(flip);
    }
    const Scalar prod = row_sums.prod();
    // (-1)^(n - |S|)
    if (((n - std::popcount(gray)) & 1) == 0) {
      total += prod;
    } else {
      total -= prod;
    }
  }
  return total;
}

/// Exact permanent: n! enumeration for small matrices, Ryser otherwise.
template <typename Derived>
typename Derived::Scalar permanent(const Eigen::MatrixBase<Derived>& m) {
  if (!is_square(m)) throw DomainError("permanent: matrix is not square");
  if (m.rows() <= kNaivePermanentMaxSize) return permanent_naive(m);
  return permanent_ryser(m);
}

}  // namespace triad
