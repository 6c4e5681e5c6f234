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
#include "triad/source.hpp"

using namespace triad;

namespace {

SourceParams noiseless(double lambda, int max_total) {
  SourceParams p;
  p.lambda = lambda;
  p.p_noise_idler = 0.0;
  p.p_noise_signal = 0.0;
  p.max_total_photons = max_total;
  return p;
}

const HeraldedConfiguration* find(const std::vector<HeraldedConfiguration>& cs,
                                  std::array<int, 3> pairs, std::array<int, 3> k, std::array<int, 3> l) {
  for (const auto& c : cs) {
    if (c.term.pairs == pairs && c.term.signal_noise == k && c.term.idler_noise == l) return &c;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("vacuum-only source") {
  const auto e = enumerate_terms(noiseless(0.0, 8));
  REQUIRE(e.terms.size() == 1);
  CHECK(e.terms[0].total_photons() == 0);
  CHECK(e.terms[0].weight == 1.0);
  CHECK(e.deficit == 0.0);
}

TEST_CASE("pair-term weights") {
  const auto e = enumerate_terms(noiseless(0.16, 8));
  const double l2 = 0.16 * 0.16;
  const double expected = std::pow(1 - l2, 3) * std::pow(0.16, 6);
  bool found = false;
  for (const auto& t : e.terms) {
    if (t.pairs == std::array<int, 3>{1, 1, 1}) {
      CHECK(std::abs(t.weight - expected) < 1e-18);
      found = true;
    }
    CHECK(t.total_photons() <= 8);
    CHECK(t.noise_photons() == 0);
  }
  CHECK(found);
}

TEST_CASE("per-source weight factors") {
  SourceParams p;
  const double vac = (1 - p.lambda * p.lambda) * (1 - p.p_noise_idler) * (1 - p.p_noise_signal);
  const double w = emission_weight(p, {1, 0, 2}, {1, 0, 0}, {0, 0, 1});
  const double expected = vac * vac * vac * std::pow(p.lambda, 6) * p.p_noise_signal * p.p_noise_idler;
  CHECK(std::abs(w - expected) / expected < 1e-14);
}

TEST_CASE("truncation at the published parameters") {
  const SourceParams p;
  const auto e = enumerate_terms(p);
  CHECK(e.deficit < 1e-3);
  CHECK(e.deficit > 0.0);
  double total = 0.0;
  for (const auto& t : e.terms) {
    CHECK(t.weight > 0.0);
    CHECK(t.total_photons() <= p.max_total_photons);
    CHECK(t.noise_photons() <= p.max_noise_photons);
    total += t.weight;
  }
  CHECK(std::abs(total - e.retained_weight) < 1e-15);
  CHECK(std::abs(1.0 - total - e.deficit) < 1e-15);
}

TEST_CASE("terms are ordered lexicographically") {
  const auto e = enumerate_terms(SourceParams{});
  auto key = [](const EmissionTerm& t) {
    return std::array<int, 9>{t.pairs[0],       t.pairs[1],       t.pairs[2],
                              t.signal_noise[0], t.signal_noise[1], t.signal_noise[2],
                              t.idler_noise[0],  t.idler_noise[1],  t.idler_noise[2]};
  };
  for (std::size_t i = 1; i < e.terms.size(); ++i) CHECK(key(e.terms[i - 1]) < key(e.terms[i]));
}

TEST_CASE("parameter validation") {
  SourceParams p;
  p.lambda = 1.0;
  CHECK_THROWS_AS(enumerate_terms(p), DomainError);
  p = SourceParams{};
  p.p_noise_idler = -0.1;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = SourceParams{};
  p.max_total_photons = 1;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p = SourceParams{};
  p.purity = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  CHECK_THROWS_AS(heralded_ensemble({}, {0.0, 1.0, 1.0}), DomainError);
}

TEST_CASE("perfect heralding keeps one idler per source") {
  const auto e = enumerate_terms(noiseless(1e-3, 8));
  const auto h = heralded_ensemble(e.terms, {1.0, 1.0, 1.0});
  const auto* c = find(h, {1, 1, 1}, {0, 0, 0}, {0, 0, 0});
  REQUIRE(c != nullptr);
  CHECK(c->herald_probability == 1.0);
  CHECK(c->pair_idlers == std::array<int, 3>{1, 1, 1});
  CHECK(c->idler_photons() == 3);
  // heralding removes every term with an empty source
  for (const auto& x : h) {
    for (int i = 0; i < 3; ++i) CHECK(x.term.pairs[static_cast<std::size_t>(i)] > 0);
  }
  // relative weight lambda^2 per extra pair
  const auto* d = find(h, {2, 1, 1}, {0, 0, 0}, {0, 0, 0});
  REQUIRE(d != nullptr);
  CHECK(std::abs(d->weight / c->weight - 1e-6) < 1e-18);
  CHECK(d->pair_idlers == std::array<int, 3>{2, 1, 1});
}

TEST_CASE("noiseless truncation at six photons") {
  const auto e = enumerate_terms(noiseless(0.16, 6));
  const auto h = heralded_ensemble(e.terms, {1.0, 1.0, 1.0});
  REQUIRE(h.size() == 1);
  CHECK(h[0].term.pairs == std::array<int, 3>{1, 1, 1});
}

TEST_CASE("threshold heralds thin the signal arm") {
  const auto e = enumerate_terms(SourceParams{});
  const std::array<double, 3> eta{0.5, 0.4, 0.3};
  const auto h = heralded_ensemble(e.terms, eta);
  const auto* c = find(h, {1, 1, 1}, {0, 1, 0}, {0, 0, 0});
  REQUIRE(c != nullptr);
  const double expected = 0.5 * (1 - 0.36) * 0.3;
  CHECK(std::abs(c->herald_probability - expected) < 1e-15);
  CHECK(std::abs(c->weight - c->term.weight * expected) < 1e-20);
}

TEST_CASE("an idler noise photon joins the heralded set") {
  const SourceParams p;
  const auto e = enumerate_terms(p);
  const auto h = heralded_ensemble(e.terms, {1.0, 1.0, 1.0});
  const auto* base = find(h, {1, 1, 1}, {0, 0, 0}, {0, 0, 0});
  const auto* noisy = find(h, {1, 1, 1}, {0, 0, 0}, {1, 0, 0});
  REQUIRE(base != nullptr);
  REQUIRE(noisy != nullptr);
  CHECK(noisy->noise_idlers == std::array<int, 3>{1, 0, 0});
  CHECK(noisy->idler_photons() == 4);
  CHECK(std::abs(noisy->weight / base->weight - p.p_noise_idler) < 1e-14);

  // a signal noise photon can herald an empty source; its idler arm is empty
  const auto* fake = find(h, {0, 1, 1}, {1, 0, 0}, {0, 0, 0});
  REQUIRE(fake != nullptr);
  CHECK(fake->pair_idlers == std::array<int, 3>{0, 1, 1});
  CHECK(std::abs(fake->weight / base->weight - p.p_noise_signal / (p.lambda * p.lambda)) < 1e-12);
}
