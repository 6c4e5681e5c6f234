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


#include <cmath>

#include "doctest.h"
#include "triad/errors.hpp"
#include "triad/interference.hpp"
#include "triad/permanent.hpp"
#include "triad/random.hpp"

using namespace triad;

namespace {

const std::vector<int> kInputs{0, 1, 2};

double p(const Network& net, const Occupation& occ, const GramMatrix& g) {
  return event_probability(net, EventSpec(kInputs, occ), g);
}

GramMatrix hom_gram(double r) {
  CMatrix s = CMatrix::Identity(2, 2);
  s(0, 1) = s(1, 0) = r;
  return GramMatrix(s);
}

CMatrix random_phases(int n, Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  CMatrix d = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = std::polar(1.0, angle(rng));
  return d;
}

// M restricted to the input columns with output row k repeated s_k times.
CMatrix submatrix(const Network& net, const std::vector<int>& inputs, const Occupation& occ) {
  const std::vector<int> rows = output_slots(occ);
  CMatrix m(rows.size(), inputs.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < inputs.size(); ++c) m(r, c) = net(rows[r], inputs[c]);
  }
  return m;
}

}  // namespace

TEST_CASE("balanced tritter") {
  const Network t = balanced_tritter();
  CHECK(is_unitary(t.matrix(), 1e-14));
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) CHECK(std::norm(t(j, k)) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }
  const Complex e2 = std::polar(1.0, 2 * kPi / 3), e4 = std::polar(1.0, 4 * kPi / 3);
  CMatrix alt(3, 3);
  alt << 1, 1, 1, 1, e4, e2, 1, e2, e4;
  alt /= std::sqrt(3.0);
  CHECK((alt - t.matrix()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("network validation") {
  CHECK_THROWS_AS(Network(CMatrix::Ones(2, 2)), DomainError);
  CHECK_THROWS_AS(Network(CMatrix::Identity(2, 3)), DomainError);
  CHECK_NOTHROW(Network(CMatrix::Identity(4, 4)));
}

TEST_CASE("event validation") {
  CHECK_THROWS_AS(EventSpec({0, 0}, {2, 0}), DomainError);
  CHECK_THROWS_AS(EventSpec({0, 1}, {1, 0}), DomainError);
  CHECK_THROWS_AS(EventSpec({-1}, {1}), DomainError);
  CHECK_THROWS_AS(event_probability(balanced_tritter(), EventSpec({0, 1}, {1, 1}), GramMatrix::ones(2)),
                  DomainError);
  CHECK_THROWS_AS(event_probability(balanced_tritter(), EventSpec({0, 3}, {1, 1, 0}), GramMatrix::ones(2)),
                  DomainError);
  CHECK_THROWS_AS(event_probability(balanced_tritter(), EventSpec({0, 1}, {1, 1, 0}), GramMatrix::ones(3)),
                  DomainError);
}

TEST_CASE("tritter events") {
  const Network t = balanced_tritter();
  CHECK(std::abs(p(t, {1, 1, 1}, GramMatrix::ones(3)) - 1.0 / 3.0) < 1e-14);
  CHECK(std::abs(p(t, {1, 1, 1}, GramMatrix::identity(3)) - 2.0 / 9.0) < 1e-14);
  CHECK(std::abs(p(t, {1, 2, 0}, GramMatrix::ones(3))) < 1e-14);
  CHECK(std::abs(p(t, {0, 2, 1}, GramMatrix::ones(3))) < 1e-14);
  CHECK(std::abs(p(t, {3, 0, 0}, GramMatrix::ones(3)) - 2.0 / 9.0) < 1e-14);
}

TEST_CASE("beamsplitter HOM dip") {
  const Network bs = balanced_beamsplitter();
  for (int i = 0; i <= 100; ++i) {
    const double r = i / 100.0;
    const double p11 = event_probability(bs, EventSpec({0, 1}, {1, 1}), hom_gram(r));
    CHECK(std::abs(p11 - (1 - r * r) / 2) < 1e-12);
    const double p20 = event_probability(bs, EventSpec({0, 1}, {2, 0}), hom_gram(r));
    CHECK(std::abs(p20 - (1 + r * r) / 4) < 1e-12);
  }
}

TEST_CASE("tritter closed forms") {
  CHECK(std::abs(tritter_p111(1, 1, 1, 0) - 1.0 / 3.0) < 1e-15);
  CHECK(std::abs(tritter_p111(0, 0, 0, 1.234) - 2.0 / 9.0) < 1e-15);
  CHECK(std::abs(tritter_p111(0.5, 0.5, 0.5, kPi) - 1.0 / 12.0) < 1e-15);

  const auto same = tritter_bunched(1, 1, 1, 0);
  CHECK(std::abs(same.p300 - 2.0 / 9.0) < 1e-15);
  CHECK(std::abs(same.p120) < 1e-15);
  CHECK(std::abs(same.p021) < 1e-15);

  const auto dist = tritter_bunched(0, 0, 0, 0.4);
  CHECK(std::abs(dist.p300 - 1.0 / 27.0) < 1e-15);
  CHECK(std::abs(dist.p120 - 1.0 / 9.0) < 1e-15);
  CHECK(std::abs(dist.p021 - 1.0 / 9.0) < 1e-15);

  Rng rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    const double a = u(rng), b = u(rng), c = u(rng), phi = kTwoPi * u(rng);
    const auto bunched = tritter_bunched(a, b, c, phi);
    const double total = tritter_p111(a, b, c, phi) + 3 * (bunched.p300 + bunched.p120 + bunched.p021);
    CHECK(std::abs(total - 1.0) < 1e-12);
  }

  CHECK_THROWS_AS(tritter_p111(1.1, 0.5, 0.5, 0), DomainError);
  CHECK_THROWS_AS(tritter_bunched(0.5, -0.1, 0.5, 0), DomainError);
}

TEST_CASE("closed forms agree with the permanent path") {
  const Network t = balanced_tritter();
  Rng rng(2);
  for (int rep = 0; rep < 300; ++rep) {
    const GramMatrix g = random_gram(3, 1 + rep % 3, rng);
    const auto r = overlap_moduli(g);
    const Complex cyc = g(0, 1) * g(1, 2) * g(2, 0);
    const double phi = std::arg(cyc);
    CHECK(std::abs(tritter_p111(r[0], r[1], r[2], phi) - p(t, {1, 1, 1}, g)) < 1e-12);
    const auto b = tritter_bunched(r[0], r[1], r[2], phi);
    for (const Occupation& o : {Occupation{3, 0, 0}, {0, 3, 0}, {0, 0, 3}}) {
      CHECK(std::abs(b.p300 - p(t, o, g)) < 1e-12);
    }
    for (const Occupation& o : {Occupation{1, 2, 0}, {0, 1, 2}, {2, 0, 1}}) {
      CHECK(std::abs(b.p120 - p(t, o, g)) < 1e-12);
    }
    for (const Occupation& o : {Occupation{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}) {
      CHECK(std::abs(b.p021 - p(t, o, g)) < 1e-12);
    }
    // independent evaluation of the two-photon formula
    const auto m = two_photon_marginals_tritter(g);
    CHECK(std::abs(m.p011 - (2 - r[1] * r[1]) / 9) < 1e-12);
    CHECK(std::abs(m.p101 - (2 - r[2] * r[2]) / 9) < 1e-12);
    CHECK(std::abs(m.p110 - (2 - r[0] * r[0]) / 9) < 1e-12);
  }
}

TEST_CASE("two-photon marginal examples") {
  auto ones = two_photon_marginals_tritter(GramMatrix::ones(3));
  CHECK(std::abs(ones.p011 - 1.0 / 9.0) < 1e-14);
  auto id = two_photon_marginals_tritter(GramMatrix::identity(3));
  CHECK(std::abs(id.p101 - 2.0 / 9.0) < 1e-14);
  CMatrix s = CMatrix::Constant(3, 3, 0.5);
  s.diagonal().setOnes();
  auto half = two_photon_marginals_tritter(GramMatrix(s));
  CHECK(std::abs(half.p110 - 7.0 / 36.0) < 1e-14);
}

TEST_CASE("normalisation over all occupations") {
  Rng rng(3);
  for (int n = 1; n <= 5; ++n) {
    const int m = std::max(3, n);
    const Network net(random_unitary(m, rng));
    std::vector<int> inputs(static_cast<std::size_t>(n));
    std::iota(inputs.begin(), inputs.end(), 0);
    const GramMatrix g = random_gram(n, 2, rng);
    const auto dist = output_distribution(net, inputs, g);
    double total = 0.0;
    for (const auto& [occ, prob] : dist) {
      CHECK(prob > -1e-12);
      total += prob;
    }
    CHECK(std::abs(total - 1.0) < 1e-10);
    CHECK(dist.size() == occupations(n, m).size());
  }
}

TEST_CASE("gauge invariance") {
  Rng rng(4);
  for (int rep = 0; rep < 50; ++rep) {
    const Network net(random_unitary(3, rng));
    const GramMatrix g = random_gram(3, 2, rng);
    const CMatrix d = random_phases(3, rng);
    const GramMatrix h(d * g.matrix() * d.adjoint());
    for (const Occupation& o : occupations(3, 3)) {
      CHECK(std::abs(p(net, o, g) - p(net, o, h)) < 1e-12);
    }
  }
}

TEST_CASE("three-photon expansion agrees with the double sum") {
  Rng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const Network net(random_unitary(3, rng));
    const GramMatrix g = random_gram(3, 1 + rep % 3, rng);
    for (const Occupation& o : occupations(3, 3)) {
      const EventSpec e(kInputs, o);
      CHECK(std::abs(event_probability(net, e, g) - event_probability_expansion(net, e, g)) < 1e-12);
    }
  }
}

TEST_CASE("indistinguishable and distinguishable limits") {
  Rng rng(6);
  for (int n = 2; n <= 4; ++n) {
    const Network net(random_unitary(4, rng));
    std::vector<int> inputs(static_cast<std::size_t>(n));
    std::iota(inputs.begin(), inputs.end(), 0);
    for (const Occupation& o : occupations(n, 4)) {
      const CMatrix m = submatrix(net, inputs, o);
      const double f = occupation_factorial(o);
      const double bosonic = std::norm(permanent(m)) / f;
      const double classical = permanent(Eigen::MatrixXd(m.cwiseAbs2())) / f;
      const EventSpec e(inputs, o);
      CHECK(std::abs(event_probability(net, e, GramMatrix::ones(n)) - bosonic) < 1e-12);
      CHECK(std::abs(event_probability(net, e, GramMatrix::identity(n)) - classical) < 1e-12);
    }
  }
}

TEST_CASE("three-photon probabilities depend on the moduli and the cyclic phase only") {
  Rng rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Network net(random_unitary(3, rng));
  for (int rep = 0; rep < 30; ++rep) {
    const double r12 = 0.2 + 0.5 * u(rng), r23 = 0.2 + 0.5 * u(rng), r31 = 0.2 + 0.5 * u(rng);
    const double phi = kTwoPi * u(rng);
    auto gram = [&](double a, double b) {
      CMatrix s = CMatrix::Identity(3, 3);
      s(0, 1) = std::polar(r12, a);
      s(1, 2) = std::polar(r23, b);
      s(2, 0) = std::polar(r31, phi - a - b);
      s(1, 0) = std::conj(s(0, 1));
      s(2, 1) = std::conj(s(1, 2));
      s(0, 2) = std::conj(s(2, 0));
      return s;
    };
    const CMatrix s0 = gram(0.0, 0.0);
    if (min_eigenvalue(s0) < 0.0) continue;
    const GramMatrix g0(s0);
    const GramMatrix g1(gram(kTwoPi * u(rng), kTwoPi * u(rng)));
    for (const Occupation& o : occupations(3, 3)) CHECK(std::abs(p(net, o, g0) - p(net, o, g1)) < 1e-12);
  }
}

TEST_CASE("size limits") {
  Rng rng(8);
  const Network net(random_unitary(7, rng));
  std::vector<int> inputs{0, 1, 2, 3, 4, 5, 6};
  CHECK_THROWS_AS(event_probability(net, EventSpec(inputs, {7, 0, 0, 0, 0, 0, 0}), GramMatrix::ones(7)),
                  SizeLimit);
  CHECK_THROWS_AS(event_probability_expansion(net, EventSpec({0, 1}, {2, 0, 0, 0, 0, 0, 0}), GramMatrix::ones(2)),
                  DomainError);
}

TEST_CASE("occupation helpers") {
  const auto occ = occupations(3, 3);
  CHECK(occ.size() == 10);
  CHECK(occ.front() == Occupation{3, 0, 0});
  CHECK(occ.back() == Occupation{0, 0, 3});
  CHECK(output_slots({1, 2, 0}) == std::vector<int>{0, 1, 1});
  CHECK(occupation_factorial({3, 2, 0}) == 12.0);
}
