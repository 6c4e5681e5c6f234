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

#include "triad/interference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "triad/errors.hpp"
#include "triad/permanent.hpp"

namespace triad {

namespace {

constexpr double kImaginaryTolerance = 1e-8;

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

void occupations_rec(int remaining, int mode, Occupation& current, std::vector<Occupation>& out) {
  const int m = static_cast<int>(current.size());
  if (mode == m - 1) {
    current[static_cast<std::size_t>(mode)] = remaining;
    out.push_back(current);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[static_cast<std::size_t>(mode)] = k;
    occupations_rec(remaining - k, mode + 1, current, out);
  }
}

// Network restricted to the event: row j is the j-th output slot, column k
// the k-th photon's input mode.
CMatrix event_matrix(const Network& net, const EventSpec& event) {
  event.check_against(net.modes());
  const auto slots = output_slots(event.occupation());
  const auto n = static_cast<Eigen::Index>(event.photons());
  CMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      m(j, k) = net(slots[static_cast<std::size_t>(j)], event.input_modes()[static_cast<std::size_t>(k)]);
    }
  }
  return m;
}

double checked_real(Complex value, const char* what) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()) ||
      std::abs(value.imag()) >= kImaginaryTolerance) {
    throw NumericalInconsistency(std::string(what) + ": probability has imaginary part " +
                                 std::to_string(value.imag()));
  }
  return value.real();
}

}  // namespace

Network::Network(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.size() == 0 || !is_unitary(matrix_, kUnitaryTolerance)) {
    throw DomainError("network: matrix is not unitary");
  }
}

Network balanced_tritter() {
  const Complex z = std::polar(1.0, kTwoPi / 3.0);
  CMatrix u(3, 3);
  u << 1.0, 1.0, 1.0,
       1.0, z * z, z,
       1.0, z, z * z;
  return Network(u / std::sqrt(3.0));
}

Network balanced_beamsplitter() {
  CMatrix u(2, 2);
  u << 1.0, 1.0,
       1.0, -1.0;
  return Network(u / std::sqrt(2.0));
}

EventSpec::EventSpec(std::vector<int> input_modes, Occupation occupation)
    : input_modes_(std::move(input_modes)), occupation_(std::move(occupation)) {
  std::set<int> seen;
  for (int mode : input_modes_) {
    if (mode < 0) throw DomainError("event: negative input mode");
    if (!seen.insert(mode).second) {
      throw DomainError("event: repeated input mode (one photon per input only)");
    }
  }
  int total = 0;
  for (int s : occupation_) {
    if (s < 0) throw DomainError("event: negative occupation");
    total += s;
  }
  if (total != photons()) throw DomainError("event: occupation does not sum to the photon count");
}

void EventSpec::check_against(int modes) const {
  if (static_cast<int>(occupation_.size()) != modes) {
    throw DomainError("event: occupation length differs from the network size");
  }
  for (int mode : input_modes_) {
    if (mode >= modes) throw DomainError("event: input mode outside the network");
  }
}

std::vector<Occupation> occupations(int photons, int modes) {
  if (photons < 0 || modes < 1) throw DomainError("occupations: bad photon or mode count");
  std::vector<Occupation> out;
  Occupation current(static_cast<std::size_t>(modes), 0);
  occupations_rec(photons, 0, current, out);
  return out;
}

std::vector<int> output_slots(const Occupation& occupation) {
  std::vector<int> slots;
  for (std::size_t mode = 0; mode < occupation.size(); ++mode) {
    for (int k = 0; k < occupation[mode]; ++k) slots.push_back(static_cast<int>(mode));
  }
  return slots;
}

double occupation_factorial(const Occupation& occupation) {
  double f = 1.0;
  for (int s : occupation) {
    for (int k = 2; k <= s; ++k) f *= k;
  }
  return f;
}

Complex multidimensional_permanent(std::span<const CMatrix> slot_kernels) {
  const int n = static_cast<int>(slot_kernels.size());
  for (const auto& k : slot_kernels) {
    if (k.rows() != n || k.cols() != n) throw DomainError("kernel: shape mismatch");
  }
  if (n == 0) return 1.0;
  const auto perms = all_permutations(n);
  Complex total = 0.0;
  for (const auto& sigma : perms) {
    for (const auto& rho : perms) {
      Complex term = 1.0;
      for (int j = 0; j < n; ++j) term *= slot_kernels[static_cast<std::size_t>(j)](rho[static_cast<std::size_t>(j)], sigma[static_cast<std::size_t>(j)]);
      total += term;
    }
  }
  return total;
}

double event_probability(const Network& net, const EventSpec& event, const GramMatrix& g,
                         int max_photons) {
  const int n = event.photons();
  if (n > max_photons) {
    throw SizeLimit("event probability: " + std::to_string(n) + " photons exceed the cap of " +
                    std::to_string(max_photons));
  }
  if (g.size() != n) throw DomainError("event probability: gram matrix size differs from photon count");
  const CMatrix m = event_matrix(net, event);

  // K_j(a, b) = conj(M(j, a)) M(j, b) S(a, b)
  std::vector<CMatrix> kernels;
  kernels.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) {
    CMatrix k = (m.row(j).adjoint() * m.row(j)).cwiseProduct(g.matrix());
    kernels.push_back(std::move(k));
  }
  const Complex raw = multidimensional_permanent(kernels) / occupation_factorial(event.occupation());
  return checked_real(raw, "event probability");
}

ThreePhotonPermanents three_photon_permanents(const Network& net, const EventSpec& event) {
  if (event.photons() != 3) throw DomainError("three-photon expansion: need exactly three photons");
  const CMatrix m = event_matrix(net, event);
  // C_pi(j, i) = M(j, i) conj(M(j, pi_i)); the weight of pi is prod_k S(pi_k, k).
  auto perm_for = [&m](const std::array<int, 3>& pi) {
    CMatrix c(3, 3);
    for (int j = 0; j < 3; ++j) {
      for (int i = 0; i < 3; ++i) c(j, i) = m(j, i) * std::conj(m(j, pi[static_cast<std::size_t>(i)]));
    }
    return permanent(c);
  };
  ThreePhotonPermanents p;
  p.identity = perm_for({0, 1, 2}).real();
  p.swap12 = perm_for({1, 0, 2}).real();
  p.swap13 = perm_for({2, 1, 0}).real();
  p.swap23 = perm_for({0, 2, 1}).real();
  // weight S(2,0) S(0,1) S(1,2) = S12 S23 S31 in one-based labels
  p.cyclic = perm_for({2, 0, 1});
  p.normalization = occupation_factorial(event.occupation());
  return p;
}

double three_photon_probability(const ThreePhotonPermanents& p, double t12, double t13,
                                double t23, Complex t123) {
  const double total = p.identity + t12 * p.swap12 + t13 * p.swap13 + t23 * p.swap23 +
                       2.0 * t123.real() * p.cyclic.real() -
                       2.0 * t123.imag() * p.cyclic.imag();
  return total / p.normalization;
}

double event_probability_expansion(const Network& net, const EventSpec& event,
                                   const GramMatrix& g) {
  if (g.size() != 3) throw DomainError("three-photon expansion: need a 3x3 gram matrix");
  const auto perms = three_photon_permanents(net, event);
  return three_photon_probability(perms, std::norm(g(0, 1)), std::norm(g(0, 2)),
                                  std::norm(g(1, 2)), g(0, 1) * g(1, 2) * g(2, 0));
}

std::map<Occupation, double> output_distribution(const Network& net,
                                                 std::span<const int> input_modes,
                                                 const GramMatrix& g, int max_photons) {
  const std::vector<int> inputs(input_modes.begin(), input_modes.end());
  std::map<Occupation, double> dist;
  for (const auto& occ : occupations(static_cast<int>(inputs.size()), net.modes())) {
    dist[occ] = event_probability(net, EventSpec(inputs, occ), g, max_photons);
  }
  return dist;
}

namespace {

void check_moduli(double r12, double r23, double r31) {
  for (double r : {r12, r23, r31}) {
    // Moduli computed from overlaps may exceed one by rounding.
    if (!(r >= 0.0 && r <= 1.0 + 1e-12)) {
      throw DomainError("tritter closed form: moduli must lie in [0, 1]");
    }
  }
}

}  // namespace

double tritter_p111(double r12, double r23, double r31, double phi) {
  check_moduli(r12, r23, r31);
  return (2.0 + 4.0 * r12 * r23 * r31 * std::cos(phi) - r12 * r12 - r23 * r23 - r31 * r31) / 9.0;
}

TritterBunched tritter_bunched(double r12, double r23, double r31, double phi) {
  check_moduli(r12, r23, r31);
  const double rrr = r12 * r23 * r31;
  TritterBunched b;
  b.p300 = (1.0 + r12 * r12 + r23 * r23 + r31 * r31 + 2.0 * rrr * std::cos(phi)) / 27.0;
  b.p120 = (1.0 - 2.0 * rrr * std::cos(phi - kPi / 3.0)) / 9.0;
  b.p021 = (1.0 - 2.0 * rrr * std::cos(phi + kPi / 3.0)) / 9.0;
  return b;
}

TwoPhotonMarginals two_photon_marginals_tritter(const GramMatrix& g) {
  if (g.size() != 3) throw DomainError("two-photon marginals: need a 3x3 gram matrix");
  const Network tritter = balanced_tritter();
  auto pair = [&](int a, int b, Occupation occ) {
    const std::array<int, 2> photons{a, b};
    return event_probability(tritter, EventSpec({a, b}, std::move(occ)), g.select(photons));
  };
  return {pair(1, 2, {0, 1, 1}), pair(0, 2, {1, 0, 1}), pair(0, 1, {1, 1, 0})};
}

}  // namespace triad
