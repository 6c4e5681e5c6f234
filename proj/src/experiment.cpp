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

#include "triad/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "triad/errors.hpp"
#include "triad/oracle.hpp"

namespace triad {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kImaginaryTolerance = 1e-8;
constexpr double kTruncationWarning = 1e-2;

using Distribution = std::map<Occupation, double>;
using Counts = std::array<int, 3>;

Distribution convolve(const Distribution& a, const Distribution& b) {
  Distribution out;
  for (const auto& [oa, pa] : a) {
    if (pa == 0.0) continue;
    for (const auto& [ob, pb] : b) {
      if (pb == 0.0) continue;
      Occupation o = oa;
      for (std::size_t k = 0; k < o.size(); ++k) o[k] += ob[k];
      out[o] += pa * pb;
    }
  }
  return out;
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Everything about one scan point that photon clusters need: coordinates of
// each source's nominal state split by polarisation, and both unitaries.
class PointModel {
 public:
  PointModel(std::span<const InternalState, 3> states, const ExperimentSetup& setup)
      : setup_(setup), coords_(pure_coordinates(states)) {
    aux_dim_ = coords_[0].size() / 6;
    internal_dim_ = 3 * aux_dim_;
    u6_ = CMatrix::Zero(6, 6);
    for (int out = 0; out < 3; ++out) {
      for (int in = 0; in < 3; ++in) {
        u6_(2 * out, 2 * in) = setup.tritter_h(out, in);
        u6_(2 * out + 1, 2 * in + 1) = setup.tritter_v(out, in);
      }
    }
  }

  const std::array<CVector, 3>& coordinates() const { return coords_; }

  // Output distribution of a set of mutually identical-label photons;
  // counts[i] photons from source i enter input i.
  const Distribution& cluster(const Counts& counts) {
    const auto it = cache_.find(counts);
    if (it != cache_.end()) return it->second;
    const int n = counts[0] + counts[1] + counts[2];
    Distribution d;
    if (n == 0) {
      d[Occupation{0, 0, 0}] = 1.0;
    } else if (*std::max_element(counts.begin(), counts.end()) <= 1) {
      d = distinct_inputs(counts);
    } else {
      d = repeated_inputs(counts);
    }
    return cache_.emplace(counts, std::move(d)).first->second;
  }

 private:
  // amplitude of source i's photon on polarisation `pol` and internal index
  Complex amp(int source, int pol, int t, int a) const {
    return coords_[static_cast<std::size_t>(source)]((t * 2 + pol) * aux_dim_ + a);
  }

  Distribution distinct_inputs(const Counts& counts) const {
    std::vector<int> inputs;
    for (int i = 0; i < 3; ++i) {
      if (counts[static_cast<std::size_t>(i)] == 1) inputs.push_back(i);
    }
    const auto n = static_cast<Eigen::Index>(inputs.size());
    // per-polarisation internal overlaps G_pol(a, b)
    std::array<CMatrix, 2> g{CMatrix::Zero(n, n), CMatrix::Zero(n, n)};
    for (int pol = 0; pol < 2; ++pol) {
      for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
          Complex s = 0.0;
          for (int t = 0; t < 3; ++t) {
            for (int x = 0; x < aux_dim_; ++x) {
              s += std::conj(amp(inputs[a], pol, t, x)) * amp(inputs[b], pol, t, x);
            }
          }
          g[pol](a, b) = s;
        }
      }
    }
    const std::array<const Network*, 2> u{&setup_.tritter_h, &setup_.tritter_v};
    Distribution d;
    for (const auto& occ : occupations(static_cast<int>(n), 3)) {
      const auto slots = output_slots(occ);
      std::vector<CMatrix> kernels;
      for (int slot : slots) {
        CMatrix k = CMatrix::Zero(n, n);
        for (int pol = 0; pol < 2; ++pol) {
          for (Eigen::Index a = 0; a < n; ++a) {
            for (Eigen::Index b = 0; b < n; ++b) {
              k(a, b) += std::conj((*u[pol])(slot, inputs[a])) * (*u[pol])(slot, inputs[b]) *
                         g[pol](a, b);
            }
          }
        }
        kernels.push_back(std::move(k));
      }
      const Complex p = multidimensional_permanent(kernels) / occupation_factorial(occ);
      if (std::abs(p.imag()) >= kImaginaryTolerance) {
        throw NumericalInconsistency("simulation: cluster probability has an imaginary part");
      }
      d[occ] = p.real();
    }
    return d;
  }

  Distribution repeated_inputs(const Counts& counts) const {
    std::vector<CMatrix> photons;
    for (int i = 0; i < 3; ++i) {
      CMatrix c = CMatrix::Zero(6, internal_dim_);
      for (int pol = 0; pol < 2; ++pol) {
        for (int t = 0; t < 3; ++t) {
          for (int x = 0; x < aux_dim_; ++x) c(2 * i + pol, t * aux_dim_ + x) = amp(i, pol, t, x);
        }
      }
      for (int k = 0; k < counts[static_cast<std::size_t>(i)]; ++k) photons.push_back(c);
    }
    const FockState out = evolve(expand_photons(photons), u6_);
    const std::array<int, 6> detector{0, 0, 1, 1, 2, 2};
    Distribution measured = measure(out, detector, 3);
    Distribution d;
    for (const auto& occ : occupations(static_cast<int>(photons.size()), 3)) {
      const auto it = measured.find(occ);
      d[occ] = it == measured.end() ? 0.0 : it->second;
    }
    return d;
  }

  const ExperimentSetup& setup_;
  std::array<CVector, 3> coords_;
  int aux_dim_ = 1;
  int internal_dim_ = 3;
  CMatrix u6_;
  std::map<Counts, Distribution> cache_;
};

// Idler-side distribution of one heralded configuration, mixing over which
// pair photons sit in the common auxiliary mode.
Distribution configuration_distribution(PointModel& model, const HeraldedConfiguration& c,
                                        double p) {
  Distribution total;
  Counts common{};
  std::function<void(std::size_t, double)> branch = [&](std::size_t source, double weight) {
    if (source == 3) {
      Distribution d = model.cluster(common);
      for (std::size_t i = 0; i < 3; ++i) {
        Counts own{};
        own[i] = c.pair_idlers[i] - common[i];
        if (own[i] > 0) d = convolve(d, model.cluster(own));
        Counts single{};
        single[i] = 1;
        for (int k = 0; k < c.noise_idlers[i]; ++k) d = convolve(d, model.cluster(single));
      }
      for (const auto& [occ, q] : d) total[occ] += weight * q;
      return;
    }
    const int n = c.pair_idlers[source];
    for (int j = 0; j <= n; ++j) {
      const double w = binomial(n, j) * std::pow(p, j) * std::pow(1.0 - p, n - j);
      if (w == 0.0) continue;
      common[source] = j;
      branch(source + 1, weight * w);
    }
    common[source] = 0;
  };
  branch(0, 1.0);
  return total;
}

// Heralded configurations restricted to the injected sources, merged by
// idler content.
std::vector<HeraldedConfiguration> injected_configurations(const std::vector<EmissionTerm>& terms,
                                                           const ExperimentSetup& setup) {
  std::map<std::pair<Counts, Counts>, HeraldedConfiguration> merged;
  for (const auto& t : terms) {
    double herald = 1.0;
    Counts pairs{};
    Counts noise{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!setup.injected[i]) continue;
      herald *= 1.0 - std::pow(1.0 - setup.herald_efficiency[i], t.pairs[i] + t.signal_noise[i]);
      pairs[i] = t.pairs[i];
      noise[i] = t.idler_noise[i];
    }
    if (herald == 0.0) continue;
    auto& c = merged[{pairs, noise}];
    c.pair_idlers = pairs;
    c.noise_idlers = noise;
    c.weight += t.weight * herald;
  }
  std::vector<HeraldedConfiguration> out;
  for (auto& [key, c] : merged) {
    c.herald_probability = 0.0;  // merged over terms; only the weight is meaningful
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string to_string(Recipe r) {
  switch (r) {
    case Recipe::kAllH: return "all_H";
    case Recipe::kStaticPi: return "static_pi";
    case Recipe::kDynamic: return "dynamic";
    case Recipe::kCustom: return "custom";
  }
  return "all_H";
}

Recipe recipe_from_string(const std::string& name) {
  if (name == "all_H") return Recipe::kAllH;
  if (name == "static_pi") return Recipe::kStaticPi;
  if (name == "dynamic") return Recipe::kDynamic;
  if (name == "custom") return Recipe::kCustom;
  throw DomainError("unknown recipe '" + name + "'");
}

std::array<InternalState, 3> prepare(const Preparation& prep) {
  std::array<PolarizationState, 3> pol;
  switch (prep.recipe) {
    case Recipe::kAllH:
      pol = {PolarizationState::horizontal(), PolarizationState::horizontal(),
             PolarizationState::horizontal()};
      break;
    case Recipe::kStaticPi:
      pol = {PolarizationState::horizontal(), PolarizationState(0.5, kSqrt3 / 2.0),
             PolarizationState(0.5, -kSqrt3 / 2.0)};
      break;
    case Recipe::kDynamic:
      pol = {PolarizationState(std::cos(2.0 * prep.theta), Complex(0.0, std::sin(2.0 * prep.theta))),
             PolarizationState(kSqrt3 / 2.0, 0.5), PolarizationState(kSqrt3 / 2.0, -0.5)};
      break;
    case Recipe::kCustom:
      pol = prep.polarizations;
      break;
  }
  std::array<InternalState, 3> states;
  for (std::size_t i = 0; i < 3; ++i) {
    TemporalMode t = GaussianTemporalMode{prep.delays[i], prep.sigma, prep.omega};
    if (prep.spectrum) t = SpectralTemporalMode{prep.spectrum, prep.delays[i]};
    states[i] = InternalState(std::move(t), pol[i]);
  }
  return states;
}

double delay_condition(double theta, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("delay condition: sigma must be positive");
  const double arg = 2.0 + std::cos(4.0 * theta);
  return sigma * std::sqrt(std::max(0.0, 2.0 * std::log(arg)));
}

double theta_for_triad_phase(double phi) {
  const double psi = -0.5 * phi;
  return 0.5 * std::atan2(kSqrt3 * std::sin(psi), std::cos(psi));
}

Preparation dynamic_preparation(double theta, double sigma) {
  Preparation prep;
  prep.recipe = Recipe::kDynamic;
  prep.theta = theta;
  prep.sigma = sigma;
  prep.delays = {-delay_condition(theta, sigma), 0.0, 0.0};
  return prep;
}

const Series& ScanResult::at(const std::string& name) const {
  for (const auto& s : series) {
    if (s.name == name) return s;
  }
  throw DomainError("scan result has no series '" + name + "'");
}

bool ScanResult::has(const std::string& name) const {
  return std::any_of(series.begin(), series.end(), [&](const Series& s) { return s.name == name; });
}

std::string event_name(const std::string& prefix, const Occupation& occupation) {
  std::string name = prefix;
  for (int s : occupation) name += std::to_string(s);
  return name;
}

std::vector<std::string> ideal_event_columns() {
  return {"P111", "P011", "P101", "P110", "P300", "P030", "P003",
          "P210", "P201", "P120", "P021", "P102", "P012"};
}

std::vector<double> ideal_event_row(const Network& net, std::span<const InternalState, 3> states) {
  if (net.modes() != 3) throw DomainError("ideal events: need a three-mode network");
  const GramMatrix g = gram_matrix(std::span<const InternalState>(states.data(), 3));
  auto pair = [&](int a, int b) {
    const std::array<int, 2> photons{a, b};
    Occupation occ{0, 0, 0};
    occ[static_cast<std::size_t>(a)] = 1;
    occ[static_cast<std::size_t>(b)] = 1;
    return event_probability(net, EventSpec({a, b}, occ), g.select(photons));
  };
  std::vector<double> row{event_probability(net, EventSpec({0, 1, 2}, {1, 1, 1}), g), pair(1, 2),
                          pair(0, 2), pair(0, 1)};
  const std::vector<Occupation> bunched{{3, 0, 0}, {0, 3, 0}, {0, 0, 3}, {2, 1, 0}, {2, 0, 1},
                                        {1, 2, 0}, {0, 2, 1}, {1, 0, 2}, {0, 1, 2}};
  for (const auto& occ : bunched) row.push_back(event_probability(net, EventSpec({0, 1, 2}, occ), g));
  return row;
}

namespace {

ScanResult ideal_scan(const std::string& x_name, std::span<const double> x,
                      const std::vector<std::array<InternalState, 3>>& points) {
  const Network tritter = balanced_tritter();
  ScanResult result;
  result.x_name = x_name;
  result.x.assign(x.begin(), x.end());
  for (const auto& name : ideal_event_columns()) result.series.push_back({name, {}});
  for (const auto& states : points) {
    const auto row = ideal_event_row(tritter, states);
    for (std::size_t k = 0; k < row.size(); ++k) result.series[k].values.push_back(row[k]);
  }
  result.heralded_weight = 1.0;
  return result;
}

std::vector<std::array<InternalState, 3>> delay_points(const Preparation& base,
                                                       std::span<const double> tau) {
  std::vector<std::array<InternalState, 3>> points;
  for (double t : tau) {
    Preparation prep = base;
    prep.delays = {-0.5 * t, 0.0, 0.5 * t};
    points.push_back(prepare(prep));
  }
  return points;
}

Preparation delay_base(Recipe recipe, double sigma) {
  if (recipe != Recipe::kAllH && recipe != Recipe::kStaticPi) {
    throw DomainError("delay scan: recipe must be all_H or static_pi");
  }
  Preparation prep;
  prep.recipe = recipe;
  prep.sigma = sigma;
  return prep;
}

std::vector<std::array<InternalState, 3>> triad_points(std::span<const double> phi, double sigma) {
  std::vector<std::array<InternalState, 3>> points;
  for (double target : phi) {
    auto states = prepare(dynamic_preparation(theta_for_triad_phase(target), sigma));
    const double got = triad_phase(gram_matrix(std::span<const InternalState>(states.data(), 3)));
    if (angular_distance(got, wrap_angle(target)) > 1e-9) {
      throw NumericalInconsistency("triad scan: prepared triad phase misses its target");
    }
    points.push_back(states);
  }
  return points;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return v;
}

}  // namespace

ScanResult scan_delays(Recipe recipe, std::span<const double> tau_grid, double sigma) {
  return scan_delays(delay_base(recipe, sigma), tau_grid);
}

ScanResult scan_delays(const Preparation& base, std::span<const double> tau_grid) {
  return ideal_scan("tau", tau_grid, delay_points(base, tau_grid));
}

ScanResult scan_triad(std::span<const double> phi_grid, double sigma) {
  return ideal_scan("phi", phi_grid, triad_points(phi_grid, sigma));
}

std::vector<double> default_tau_grid(double sigma) { return linspace(-12.0 * sigma, 12.0 * sigma, 61); }

std::vector<double> default_phi_grid() { return linspace(0.0, kTwoPi, 33); }

void ExperimentSetup::validate() const {
  source.validate();
  cascade.validate();
  if (cascade.outputs() != 3) throw DomainError("experiment: cascade must cover three outputs");
  if (tritter_h.modes() != 3 || tritter_v.modes() != 3) {
    throw DomainError("experiment: tritters must be 3x3");
  }
  for (double eta : herald_efficiency) {
    if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("experiment: herald efficiency must lie in (0, 1]");
  }
  if (std::none_of(injected.begin(), injected.end(), [](bool b) { return b; })) {
    throw DomainError("experiment: no source injected");
  }
  if (threads < 0) throw DomainError("experiment: thread count must be non-negative");
}

bool ExperimentSetup::polarization_dependent() const {
  return (tritter_h.matrix() - tritter_v.matrix()).cwiseAbs().maxCoeff() > 0.0;
}

ExperimentSetup ideal_setup() {
  ExperimentSetup s;
  s.source.lambda = 1e-6;
  s.source.purity = 1.0;
  s.source.p_noise_idler = 0.0;
  s.source.p_noise_signal = 0.0;
  s.herald_efficiency = {1.0, 1.0, 1.0};
  s.cascade = DetectionCascade{};
  return s;
}

PointDistribution simulate_point(std::span<const InternalState, 3> states,
                                 const ExperimentSetup& setup,
                                 const std::vector<HeraldedConfiguration>& configurations) {
  PointModel model(states, setup);
  const double p = common_mode_weight(setup.source.purity, setup.purity_reading);
  const bool trace_path = !setup.polarization_dependent();

  PointDistribution out;
  double total_weight = 0.0;
  for (const auto& c : configurations) {
    if (c.weight == 0.0) continue;
    total_weight += c.weight;
    Distribution d;
    const bool single_triple = c.pair_idlers == Counts{1, 1, 1} && c.noise_idlers == Counts{0, 0, 0};
    if (single_triple && trace_path) {
      const auto& x = model.coordinates();
      const InternalDensity r1 = build_density(x[0], 0, setup.source.purity, setup.purity_reading);
      const InternalDensity r2 = build_density(x[1], 1, setup.source.purity, setup.purity_reading);
      const InternalDensity r3 = build_density(x[2], 2, setup.source.purity, setup.purity_reading);
      for (const auto& occ : occupations(3, 3)) {
        d[occ] = mixed_event_probability(setup.tritter_h, EventSpec({0, 1, 2}, occ), r1, r2, r3);
      }
    } else {
      d = configuration_distribution(model, c, p);
    }
    for (const auto& [occ, q] : d) out.occupations[occ] += c.weight * q;
  }
  if (!(total_weight > 0.0)) throw DomainError("simulation: no heralded events");
  for (auto& [occ, q] : out.occupations) q /= total_weight;
  out.clicks = click_distribution(setup.cascade, out.occupations);
  return out;
}

ScanResult simulate_counts(const std::string& x_name, std::span<const double> x,
                           std::span<const std::array<InternalState, 3>> points,
                           const ExperimentSetup& setup) {
  setup.validate();
  if (x.size() != points.size()) throw DomainError("simulation: grid and points differ in length");
  const EmissionEnsemble ensemble = enumerate_terms(setup.source);
  const auto configurations = injected_configurations(ensemble.terms, setup);

  std::vector<PointDistribution> results(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        results[i] = simulate_point(points[i], setup, configurations);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned threads = setup.threads > 0 ? static_cast<unsigned>(setup.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, points.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  ScanResult result;
  result.x_name = x_name;
  result.x.assign(x.begin(), x.end());
  result.truncation_deficit = ensemble.deficit;
  result.truncation_warning = ensemble.deficit > kTruncationWarning;
  for (const auto& c : configurations) result.heralded_weight += c.weight;

  std::vector<Occupation> triple{{1, 1, 1}};
  for (const auto& occ : occupations(3, 3)) {
    if (occ != Occupation{1, 1, 1}) triple.push_back(occ);
  }
  for (const auto& occ : triple) {
    Series s{event_name("P", occ), {}};
    for (const auto& r : results) {
      const auto it = r.occupations.find(occ);
      s.values.push_back(it == r.occupations.end() ? 0.0 : it->second);
    }
    result.series.push_back(std::move(s));
  }
  for (const auto& pattern : click_patterns(setup.cascade)) {
    Series s{event_name("N", pattern), {}};
    for (const auto& r : results) {
      const auto it = r.clicks.find(pattern);
      s.values.push_back(it == r.clicks.end() ? 0.0 : it->second);
    }
    result.series.push_back(std::move(s));
  }
  return result;
}

ScanResult simulate_delay_scan(Recipe recipe, std::span<const double> tau_grid, double sigma,
                               const ExperimentSetup& setup) {
  return simulate_delay_scan(delay_base(recipe, sigma), tau_grid, setup);
}

ScanResult simulate_delay_scan(const Preparation& base, std::span<const double> tau_grid,
                               const ExperimentSetup& setup) {
  const auto points = delay_points(base, tau_grid);
  return simulate_counts("tau", tau_grid, points, setup);
}

ScanResult simulate_triad_scan(std::span<const double> phi_grid, double sigma,
                               const ExperimentSetup& setup) {
  const auto points = triad_points(phi_grid, sigma);
  return simulate_counts("phi", phi_grid, points, setup);
}

double suppression_visibility(const ScanResult& scan, const std::string& series) {
  if (scan.x.size() < 2) throw DomainError("visibility: need at least two grid points");
  const auto& values = scan.at(series).values;
  std::size_t centre = 0;
  std::size_t far = 0;
  for (std::size_t i = 1; i < scan.x.size(); ++i) {
    if (std::abs(scan.x[i]) < std::abs(scan.x[centre])) centre = i;
    if (std::abs(scan.x[i]) > std::abs(scan.x[far])) far = i;
  }
  if (!(values[far] > 0.0)) throw DomainError("visibility: reference level vanishes");
  return 1.0 - values[centre] / values[far];
}

}  // namespace triad
