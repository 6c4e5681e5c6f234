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


#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "triad/cascade.hpp"
#include "triad/errors.hpp"

using namespace triad;

namespace {

// Enumerates every assignment of photons to leaves and every survival
// pattern explicitly.
double brute_force_clicks(int photons, int leaves, double eta, int clicks) {
  int assignments = 1;
  for (int i = 0; i < photons; ++i) assignments *= leaves;
  double total = 0.0;
  for (int a = 0; a < assignments; ++a) {
    for (int alive = 0; alive < (1 << photons); ++alive) {
      double w = 1.0 / assignments;
      std::vector<bool> lit(static_cast<std::size_t>(leaves), false);
      int code = a;
      for (int i = 0; i < photons; ++i) {
        const int leaf = code % leaves;
        code /= leaves;
        if (alive & (1 << i)) {
          w *= eta;
          lit[static_cast<std::size_t>(leaf)] = true;
        } else {
          w *= 1.0 - eta;
        }
      }
      if (std::count(lit.begin(), lit.end(), true) == clicks) total += w;
    }
  }
  return total;
}

double sum(const std::map<Occupation, double>& d) {
  double t = 0.0;
  for (const auto& [k, v] : d) t += v;
  return t;
}

}  // namespace

TEST_CASE("splitter names") {
  CHECK(leaves(Splitter::kNone) == 1);
  CHECK(leaves(Splitter::kBeamsplitter2) == 2);
  CHECK(leaves(Splitter::kTritter3) == 3);
  for (Splitter s : {Splitter::kNone, Splitter::kBeamsplitter2, Splitter::kTritter3}) {
    CHECK(splitter_from_string(to_string(s)) == s);
  }
  CHECK(to_string(Splitter::kBeamsplitter2) == "beamsplitter_2way");
  CHECK_THROWS_AS(splitter_from_string("quadsplitter"), DomainError);
}

TEST_CASE("click counts agree with explicit enumeration") {
  for (int leaf_count : {1, 2, 3}) {
    for (int n = 0; n <= 5; ++n) {
      for (double eta : {1.0, 0.5, 0.13}) {
        double total = 0.0;
        for (int c = 0; c <= leaf_count; ++c) {
          const double p = click_count_probability(n, leaf_count, eta, c);
          CHECK(std::abs(p - brute_force_clicks(n, leaf_count, eta, c)) < 1e-13);
          total += p;
        }
        CHECK(std::abs(total - 1.0) < 1e-13);
      }
    }
  }
}

TEST_CASE("click count special cases") {
  CHECK(click_count_probability(0, 2, 0.5, 0) == 1.0);
  CHECK(click_count_probability(1, 2, 1.0, 1) == 1.0);
  CHECK(std::abs(click_count_probability(2, 2, 1.0, 2) - 0.5) < 1e-15);
  CHECK(std::abs(click_count_probability(3, 3, 1.0, 3) - 2.0 / 9.0) < 1e-15);
  CHECK(std::abs(click_count_probability(2, 1, 0.5, 1) - 0.75) < 1e-15);
  CHECK(click_count_probability(4, 2, 0.5, 3) == 0.0);
}

TEST_CASE("configurations a and b") {
  const auto a = DetectionCascade::config_a(0.7);
  CHECK(a.splitters == std::vector<Splitter>{Splitter::kBeamsplitter2, Splitter::kNone, Splitter::kBeamsplitter2});
  CHECK(a.efficiency == 0.7);
  const auto b = DetectionCascade::config_b(0.7);
  CHECK(b.splitters == std::vector<Splitter>{Splitter::kTritter3, Splitter::kNone, Splitter::kNone});
  CHECK_NOTHROW(a.validate());

  DetectionCascade bad;
  bad.efficiency = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad.efficiency = 1.0;
  bad.splitters.clear();
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("click distributions") {
  const auto a = DetectionCascade::config_a(1.0);
  const auto d = click_distribution(a, Occupation{2, 1, 0});
  CHECK(std::abs(sum(d) - 1.0) < 1e-14);
  CHECK(std::abs(d.at({2, 1, 0}) - 0.5) < 1e-15);
  CHECK(std::abs(d.at({1, 1, 0}) - 0.5) < 1e-15);

  // a convex mixture over occupations of different photon numbers
  const auto lossy = DetectionCascade::config_a(0.5);
  std::map<Occupation, double> mix{{{2, 1, 0}, 0.25}, {{1, 1, 1}, 0.5}, {{0, 4, 0}, 0.25}};
  const auto m = click_distribution(lossy, mix);
  CHECK(std::abs(sum(m) - 1.0) < 1e-14);
  double expected = 0.0;
  for (const auto& [occ, w] : mix) {
    const auto single = click_distribution(lossy, occ);
    if (auto it = single.find({1, 1, 0}); it != single.end()) expected += w * it->second;
  }
  CHECK(std::abs(m.at({1, 1, 0}) - expected) < 1e-15);
  CHECK_THROWS_AS(click_distribution(lossy, Occupation{1, 1}), DomainError);
}

TEST_CASE("click patterns") {
  const auto pa = click_patterns(DetectionCascade::config_a(1.0));
  CHECK(pa.size() == 3 * 2 * 3);
  CHECK(pa.front() == Occupation{2, 1, 2});
  CHECK(pa.back() == Occupation{0, 0, 0});
  const auto pb = click_patterns(DetectionCascade::config_b(1.0));
  CHECK(pb.size() == 4 * 2 * 2);
  CHECK(pb.front() == Occupation{3, 1, 1});
}
