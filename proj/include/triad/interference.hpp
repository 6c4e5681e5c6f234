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

// Output-event probabilities for partially distinguishable photons in a
// linear network.
//
// Conventions: Network::matrix()(k, j) is the amplitude for a photon entering
// mode j to leave in mode k, i.e. a_j^dag -> sum_k U(k, j) a_k^dag. Occupations
// are listed in output-mode order, so P_{s1 s2 s3} is the probability of s_k
// photons in output k.

#pragma once

#include <map>
#include <span>
#include <vector>

#include "triad/linalg.hpp"
#include "triad/modes.hpp"

namespace triad {

using Occupation = std::vector<int>;

/// Default cap on photons for the permutation double sum, (6!)^2 terms.
inline constexpr int kDefaultMaxPhotons = 6;

class Network {
 public:
  static constexpr double kUnitaryTolerance = 1e-10;

  Network() = default;
  /// Throws DomainError unless `matrix` is unitary within 1e-10.
  explicit Network(CMatrix matrix);

  const CMatrix& matrix() const { return matrix_; }
  int modes() const { return static_cast<int>(matrix_.rows()); }
  Complex operator()(Eigen::Index out, Eigen::Index in) const { return matrix_(out, in); }

 private:
  CMatrix matrix_;
};

/// (1/sqrt3) [[1,1,1],[1,z^2,z],[1,z,z^2]] with z = e^{2 pi i/3}.
Network balanced_tritter();
/// (1/sqrt2) [[1,1],[1,-1]].
Network balanced_beamsplitter();

/// One photon in each listed input mode; `occupation` is the detected
/// output pattern.
class EventSpec {
 public:
  EventSpec(std::vector<int> input_modes, Occupation occupation);

  const std::vector<int>& input_modes() const { return input_modes_; }
  const Occupation& occupation() const { return occupation_; }
  int photons() const { return static_cast<int>(input_modes_.size()); }

  /// Throws DomainError if the event does not fit an m-mode network.
  void check_against(int modes) const;

 private:
  std::vector<int> input_modes_;
  Occupation occupation_;
};

/// All occupations of n photons over m modes, lexicographically descending
/// ((n,0,..) first), which is the order every distribution is reported in.
std::vector<Occupation> occupations(int photons, int modes);

/// Output-mode list with multiplicity, e.g. (1,2,0) -> {0,1,1}.
std::vector<int> output_slots(const Occupation& occupation);

/// prod_j s_j!
double occupation_factorial(const Occupation& occupation);

/// Multidimensional permanent
///   sum_{sigma,rho in S_n} prod_j K_j(rho_j, sigma_j)
/// where K_j is the single-photon transition kernel into the j-th output slot,
/// K_j(a, b) = <psi_a| Pi_slot_j |psi_b>. Summation order is fixed
/// (lexicographic sigma, then rho).
Complex multidimensional_permanent(std::span<const CMatrix> slot_kernels);

/// Probability of `event` through `net` for photons with Gram matrix `g`:
///   (prod s_j!)^{-1} sum_{sigma,rho} prod_j M(j, sigma_j) M*(j, rho_j) S(rho_j, sigma_j)
/// with M the network restricted to the input columns and repeated output rows.
/// Throws SizeLimit above `max_photons`, NumericalInconsistency if the raw sum
/// has |Im| >= 1e-8.
double event_probability(const Network& net, const EventSpec& event, const GramMatrix& g,
                         int max_photons = kDefaultMaxPhotons);

/// Three-photon probability through the six-term permanent expansion
///   sum_pi (prod_k S(pi_k, k)) perm(M o conj(M)[:, pi]) / prod s_j!
/// An independent route to `event_probability` for n = 3.
double event_probability_expansion(const Network& net, const EventSpec& event,
                                   const GramMatrix& g);

/// Network-side factors of the three-photon expansion for one event: the
/// permanents perm(M o conj(M)[:, pi]) for the identity, the three
/// transpositions and the cycle whose Gram weight is S12 S23 S31.
struct ThreePhotonPermanents {
  double identity = 0.0;
  double swap12 = 0.0;
  double swap13 = 0.0;
  double swap23 = 0.0;
  Complex cyclic = 0.0;
  double normalization = 1.0;  ///< prod s_j!
};

ThreePhotonPermanents three_photon_permanents(const Network& net, const EventSpec& event);

/// [perm_id + t12 perm_12 + t13 perm_13 + t23 perm_23
///  + 2 Re(t123) Re(perm_cyc) - 2 Im(t123) Im(perm_cyc)] / prod s_j!
/// For pure states t_ij = |S_ij|^2 and t123 = S12 S23 S31; for mixed states
/// t_ij = Tr(rho_i rho_j) and t123 = Tr(rho_1 rho_2 rho_3).
double three_photon_probability(const ThreePhotonPermanents& perms, double t12, double t13,
                                double t23, Complex t123);

/// Probabilities of every output occupation for one photon per input mode.
std::map<Occupation, double> output_distribution(const Network& net,
                                                 std::span<const int> input_modes,
                                                 const GramMatrix& g,
                                                 int max_photons = kDefaultMaxPhotons);

/// Balanced-tritter coincidence probability,
/// [2 + 4 r12 r23 r31 cos(phi) - r12^2 - r23^2 - r31^2] / 9.
double tritter_p111(double r12, double r23, double r31, double phi);

struct TritterBunched {
  double p300 = 0.0;  ///< each of (3,0,0), (0,3,0), (0,0,3)
  double p120 = 0.0;  ///< each of (1,2,0), (0,1,2), (2,0,1)
  double p021 = 0.0;  ///< each of (0,2,1), (2,1,0), (1,0,2)
};

/// Closed forms for the bunched balanced-tritter events with
/// phi = Arg(S12 S23 S31):
///   P300 = [1 + r12^2 + r23^2 + r31^2 + 2 r12 r23 r31 cos phi] / 27
///   P120 = [1 - 2 r12 r23 r31 cos(phi - pi/3)] / 9
///   P021 = [1 - 2 r12 r23 r31 cos(phi + pi/3)] / 9
TritterBunched tritter_bunched(double r12, double r23, double r31, double phi);

struct TwoPhotonMarginals {
  double p011 = 0.0;  ///< photons 2, 3 into inputs 2, 3; one each in outputs 2, 3
  double p101 = 0.0;  ///< photons 1, 3
  double p110 = 0.0;  ///< photons 1, 2
};

/// Two-photon coincidences through the balanced tritter, each equal to
/// (2 - r_ij^2) / 9, evaluated with `event_probability`.
TwoPhotonMarginals two_photon_marginals_tritter(const GramMatrix& g);

}  // namespace triad
