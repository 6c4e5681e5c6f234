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

#include "triad/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "triad/oracle.hpp"

namespace triad::cli {

using nlohmann::json;

namespace {

std::string escape(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

// View of one JSON object that only admits the listed keys.
class Object {
 public:
  Object(const json& j, std::string pointer, std::set<std::string> allowed)
      : j_(j), pointer_(std::move(pointer)) {
    if (!j_.is_object()) throw ConfigError(pointer_, "expected an object");
    for (const auto& [key, value] : j_.items()) {
      if (!allowed.count(key)) throw ConfigError(at(key), "unknown key");
    }
  }

  std::string at(const std::string& key) const { return pointer_ + "/" + escape(key); }
  bool has(const std::string& key) const { return j_.contains(key); }
  const json& raw(const std::string& key) const { return j_.at(key); }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return as_number(raw(key), at(key));
  }

  int integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_number_integer()) throw ConfigError(at(key), "expected an integer");
    return v.get<int>();
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_number_unsigned()) throw ConfigError(at(key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::string string(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(at(key), "expected a string");
    return v.get<std::string>();
  }

  static double as_number(const json& v, const std::string& pointer) {
    if (!v.is_number()) throw ConfigError(pointer, "expected a number");
    return v.get<double>();
  }

  std::vector<double> numbers(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_array()) throw ConfigError(at(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(as_number(v[i], at(key) + "/" + std::to_string(i)));
    }
    return out;
  }

  template <typename T, std::size_t N>
  std::array<T, N> fixed(const std::string& key, std::array<T, N> fallback) const {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_array() || v.size() != N) {
      throw ConfigError(at(key), "expected an array of " + std::to_string(N) + " entries");
    }
    std::array<T, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
      const std::string p = at(key) + "/" + std::to_string(i);
      if constexpr (std::is_same_v<T, bool>) {
        if (!v[i].is_boolean()) throw ConfigError(p, "expected a boolean");
        out[i] = v[i].get<bool>();
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v[i].is_string()) throw ConfigError(p, "expected a string");
        out[i] = v[i].get<std::string>();
      } else {
        out[i] = static_cast<T>(as_number(v[i], p));
      }
    }
    return out;
  }

 private:
  const json& j_;
  std::string pointer_;
};

Complex parse_complex(const json& v, const std::string& pointer) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(pointer, "expected [re, im]");
  return {Object::as_number(v[0], pointer + "/0"), Object::as_number(v[1], pointer + "/1")};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Network parse_network(const json& v, const std::string& pointer) {
  if (!v.is_array() || v.size() != 3) throw ConfigError(pointer, "expected a 3x3 matrix of [re, im]");
  CMatrix m(3, 3);
  for (std::size_t r = 0; r < 3; ++r) {
    const std::string row = pointer + "/" + std::to_string(r);
    if (!v[r].is_array() || v[r].size() != 3) throw ConfigError(row, "expected three entries");
    for (std::size_t c = 0; c < 3; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_complex(v[r][c], row + "/" + std::to_string(c));
    }
  }
  try {
    return Network(m);
  } catch (const DomainError& e) {
    throw ConfigError(pointer, e.what());
  }
}

json network_json(const Network& net) {
  json rows = json::array();
  for (int r = 0; r < 3; ++r) {
    json row = json::array();
    for (int c = 0; c < 3; ++c) row.push_back(complex_json(net(r, c)));
    rows.push_back(row);
  }
  return rows;
}

template <typename Fn>
auto guarded(const std::string& pointer, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(pointer, e.what());
  }
}

RunMode mode_from_string(const std::string& s, const std::string& pointer) {
  if (s == "ideal-scan") return RunMode::kIdealScan;
  if (s == "experiment") return RunMode::kExperiment;
  if (s == "validate") return RunMode::kValidate;
  if (s == "qubit-analysis") return RunMode::kQubitAnalysis;
  throw ConfigError(pointer, "mode must be one of ideal-scan, experiment, validate, qubit-analysis");
}

OutputFormat format_from_string(const std::string& s, const std::string& pointer) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  throw ConfigError(pointer, "format must be csv or json");
}

PurityReading reading_from_string(const std::string& s, const std::string& pointer) {
  if (s == "state_purity") return PurityReading::kStatePurity;
  if (s == "common_mode_weight") return PurityReading::kCommonModeWeight;
  throw ConfigError(pointer, "purity_reading must be state_purity or common_mode_weight");
}

std::string to_string(PurityReading r) {
  return r == PurityReading::kStatePurity ? "state_purity" : "common_mode_weight";
}

void parse_preparation(const json& j, RunConfig& c) {
  const Object o(j, "/preparation", {"recipe", "sigma", "omega", "theta", "polarizations", "spectrum"});
  Preparation& p = c.preparation;
  p.recipe = guarded(o.at("recipe"), [&] { return recipe_from_string(o.string("recipe", "all_H")); });
  p.sigma = o.number("sigma", 1.0);
  if (!(p.sigma > 0.0)) throw ConfigError(o.at("sigma"), "must be positive");
  p.omega = o.number("omega", 0.0);
  p.theta = o.number("theta", 0.0);
  if (o.has("polarizations")) {
    const json& v = o.raw("polarizations");
    if (!v.is_array() || v.size() != 3) throw ConfigError(o.at("polarizations"), "expected three entries");
    for (std::size_t i = 0; i < 3; ++i) {
      const std::string ptr = o.at("polarizations") + "/" + std::to_string(i);
      const Object pol(v[i], ptr, {"h", "v"});
      if (!pol.has("h") || !pol.has("v")) throw ConfigError(ptr, "needs both h and v");
      const Complex h = parse_complex(pol.raw("h"), pol.at("h"));
      const Complex vv = parse_complex(pol.raw("v"), pol.at("v"));
      p.polarizations[i] = guarded(ptr, [&] { return PolarizationState(h, vv); });
    }
  } else if (p.recipe == Recipe::kCustom) {
    throw ConfigError(o.at("polarizations"), "required for the custom recipe");
  }
  if (o.has("spectrum")) {
    const Object s(o.raw("spectrum"), o.at("spectrum"), {"frequencies", "intensity"});
    if (!s.has("frequencies") || !s.has("intensity")) {
      throw ConfigError(o.at("spectrum"), "needs frequencies and intensity");
    }
    SpectrumConfig sc{s.numbers("frequencies"), s.numbers("intensity")};
    p.spectrum = guarded(o.at("spectrum"), [&] {
      return std::make_shared<const SampledSpectrum>(sc.frequencies, sc.intensity);
    });
    c.spectrum = std::move(sc);
    if (p.recipe == Recipe::kDynamic) {
      throw ConfigError(o.at("spectrum"), "the dynamic recipe needs Gaussian temporal modes");
    }
  }
}

void parse_grid(const json* j, RunConfig& c) {
  const bool triad = c.preparation.recipe == Recipe::kDynamic;
  const std::string natural = triad ? "phi" : "tau";
  GridConfig& g = c.grid;
  if (!j) {
    g.variable = natural;
  } else {
    const Object o(*j, "/grid", {"variable", "values", "start", "stop", "points"});
    g.variable = o.string("variable", natural);
    if (g.variable != "tau" && g.variable != "phi") {
      throw ConfigError(o.at("variable"), "must be tau or phi");
    }
    if (c.mode == RunMode::kIdealScan || c.mode == RunMode::kExperiment) {
      if (g.variable == "phi" && !triad) {
        throw ConfigError(o.at("variable"), "phi scans need the dynamic recipe");
      }
    }
    if (o.has("values")) {
      if (o.has("start") || o.has("stop") || o.has("points")) {
        throw ConfigError("/grid", "give either values or start/stop/points");
      }
      g.values = o.numbers("values");
      if (g.values.empty()) throw ConfigError(o.at("values"), "must not be empty");
      return;
    }
    const double sigma = c.preparation.sigma;
    g.start = o.number("start", g.variable == "tau" ? -12.0 * sigma : 0.0);
    g.stop = o.number("stop", g.variable == "tau" ? 12.0 * sigma : kTwoPi);
    g.points = o.integer("points", g.variable == "tau" ? 61 : 33);
    if (g.points < 2) throw ConfigError(o.at("points"), "need at least two points");
    return;
  }
  const double sigma = c.preparation.sigma;
  g.start = g.variable == "tau" ? -12.0 * sigma : 0.0;
  g.stop = g.variable == "tau" ? 12.0 * sigma : kTwoPi;
  g.points = g.variable == "tau" ? 61 : 33;
}

void parse_source(const json& j, RunConfig& c) {
  const Object o(j, "/source",
                 {"lambda", "purity", "purity_reading", "p_noise_idler", "p_noise_signal",
                  "max_total_photons", "max_noise_photons", "herald_efficiency", "injected"});
  SourceParams& s = c.setup.source;
  s.lambda = o.number("lambda", s.lambda);
  s.purity = o.number("purity", s.purity);
  s.p_noise_idler = o.number("p_noise_idler", s.p_noise_idler);
  s.p_noise_signal = o.number("p_noise_signal", s.p_noise_signal);
  s.max_total_photons = o.integer("max_total_photons", s.max_total_photons);
  s.max_noise_photons = o.integer("max_noise_photons", s.max_noise_photons);
  c.setup.purity_reading =
      reading_from_string(o.string("purity_reading", "state_purity"), o.at("purity_reading"));
  c.setup.herald_efficiency = o.fixed("herald_efficiency", c.setup.herald_efficiency);
  c.setup.injected = o.fixed("injected", c.setup.injected);
  guarded("/source", [&] {
    s.validate();
    common_mode_weight(s.purity, c.setup.purity_reading);
    return 0;
  });
}

void parse_cascade(const json& j, RunConfig& c) {
  const Object o(j, "/cascade", {"splitters", "efficiency"});
  DetectionCascade& d = c.setup.cascade;
  if (o.has("splitters")) {
    const auto names = o.fixed<std::string, 3>("splitters", {"none", "none", "none"});
    for (std::size_t i = 0; i < 3; ++i) {
      d.splitters[i] = guarded(o.at("splitters") + "/" + std::to_string(i),
                               [&] { return splitter_from_string(names[i]); });
    }
  }
  d.efficiency = o.number("efficiency", d.efficiency);
  guarded("/cascade", [&] {
    d.validate();
    return 0;
  });
}

void parse_network(const json& j, RunConfig& c) {
  const Object o(j, "/network", {"tritter_h", "tritter_v"});
  if (o.has("tritter_h")) c.setup.tritter_h = parse_network(o.raw("tritter_h"), o.at("tritter_h"));
  if (o.has("tritter_v")) c.setup.tritter_v = parse_network(o.raw("tritter_v"), o.at("tritter_v"));
  c.custom_tritter = o.has("tritter_h") || o.has("tritter_v");
}

}  // namespace

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::kIdealScan: return "ideal-scan";
    case RunMode::kExperiment: return "experiment";
    case RunMode::kValidate: return "validate";
    case RunMode::kQubitAnalysis: return "qubit-analysis";
  }
  return "ideal-scan";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::kCsv ? "csv" : "json"; }

std::vector<double> GridConfig::expand() const {
  if (!values.empty()) return values;
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) v[static_cast<std::size_t>(i)] = start + (stop - start) * i / (points - 1);
  return v;
}

RunConfig parse_config(const json& j) {
  const Object top(j, "",
                   {"mode", "format", "output", "seed", "threads", "preparation", "grid", "source",
                    "cascade", "network", "validate", "qubit", "provenance"});
  RunConfig c;
  if (!top.has("mode")) throw ConfigError("/mode", "required");
  c.mode = mode_from_string(top.string("mode", ""), "/mode");
  c.format = format_from_string(top.string("format", "csv"), "/format");
  c.seed = top.unsigned_integer("seed", c.seed);
  c.threads = top.integer("threads", 0);
  if (c.threads < 0) throw ConfigError("/threads", "must be non-negative");
  c.setup.threads = c.threads;

  if (top.has("output")) {
    const Object o(top.raw("output"), "/output", {"directory", "stem"});
    c.out_dir = o.string("directory", c.out_dir);
    c.stem = o.string("stem", c.stem);
    if (c.stem.empty() || c.stem.find('/') != std::string::npos) {
      throw ConfigError("/output/stem", "must be a non-empty file name");
    }
  }

  parse_preparation(top.has("preparation") ? top.raw("preparation") : json::object(), c);
  parse_grid(top.has("grid") ? &top.raw("grid") : nullptr, c);
  parse_source(top.has("source") ? top.raw("source") : json::object(), c);
  parse_cascade(top.has("cascade") ? top.raw("cascade") : json::object(), c);
  if (top.has("network")) parse_network(top.raw("network"), c);

  if (top.has("validate")) {
    const Object o(top.raw("validate"), "/validate", {"instances", "max_photons", "tolerance"});
    c.validate.instances = o.integer("instances", c.validate.instances);
    c.validate.max_photons = o.integer("max_photons", c.validate.max_photons);
    if (c.validate.instances < 1) throw ConfigError("/validate/instances", "must be positive");
    if (c.validate.max_photons < 1 || c.validate.max_photons > kOracleMaxPhotons) {
      throw ConfigError("/validate/max_photons", "must lie in [1, 6]");
    }
    c.validate.tolerance = o.number("tolerance", c.validate.tolerance);
    if (!(c.validate.tolerance >= 0.0)) throw ConfigError("/validate/tolerance", "must be non-negative");
  }
  if (top.has("qubit")) {
    const Object o(top.raw("qubit"), "/qubit", {"moduli", "measured_phi", "tolerance"});
    c.qubit.moduli = o.fixed("moduli", c.qubit.moduli);
    for (std::size_t i = 0; i < 3; ++i) {
      if (!(c.qubit.moduli[i] > 0.0 && c.qubit.moduli[i] < 1.0)) {
        throw ConfigError("/qubit/moduli/" + std::to_string(i), "must lie in (0, 1)");
      }
    }
    if (o.has("measured_phi")) c.qubit.measured_phi = o.number("measured_phi", 0.0);
    c.qubit.tolerance = o.number("tolerance", c.qubit.tolerance);
    if (!(c.qubit.tolerance >= 0.0)) throw ConfigError("/qubit/tolerance", "must be non-negative");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  json j;
  j["mode"] = to_string(c.mode);
  j["format"] = to_string(c.format);
  j["output"] = {{"directory", c.out_dir}, {"stem", c.stem}};
  j["seed"] = c.seed;
  j["threads"] = c.threads;

  const Preparation& p = c.preparation;
  json prep = {{"recipe", to_string(p.recipe)}, {"sigma", p.sigma}, {"omega", p.omega},
               {"theta", p.theta}};
  if (p.recipe == Recipe::kCustom) {
    json pols = json::array();
    for (const auto& pol : p.polarizations) {
      pols.push_back({{"h", complex_json(pol.h())}, {"v", complex_json(pol.v())}});
    }
    prep["polarizations"] = pols;
  }
  if (c.spectrum) {
    prep["spectrum"] = {{"frequencies", c.spectrum->frequencies}, {"intensity", c.spectrum->intensity}};
  }
  j["preparation"] = prep;

  json grid = {{"variable", c.grid.variable}};
  if (!c.grid.values.empty()) {
    grid["values"] = c.grid.values;
  } else {
    grid["start"] = c.grid.start;
    grid["stop"] = c.grid.stop;
    grid["points"] = c.grid.points;
  }
  j["grid"] = grid;

  const SourceParams& s = c.setup.source;
  j["source"] = {{"lambda", s.lambda},
                 {"purity", s.purity},
                 {"purity_reading", to_string(c.setup.purity_reading)},
                 {"p_noise_idler", s.p_noise_idler},
                 {"p_noise_signal", s.p_noise_signal},
                 {"max_total_photons", s.max_total_photons},
                 {"max_noise_photons", s.max_noise_photons},
                 {"herald_efficiency", c.setup.herald_efficiency},
                 {"injected", c.setup.injected}};

  json splitters = json::array();
  for (Splitter sp : c.setup.cascade.splitters) splitters.push_back(to_string(sp));
  j["cascade"] = {{"splitters", splitters}, {"efficiency", c.setup.cascade.efficiency}};
  if (c.custom_tritter) {
    j["network"] = {{"tritter_h", network_json(c.setup.tritter_h)},
                    {"tritter_v", network_json(c.setup.tritter_v)}};
  }
  j["validate"] = {{"instances", c.validate.instances},
                   {"max_photons", c.validate.max_photons},
                   {"tolerance", c.validate.tolerance}};
  json qubit = {{"moduli", c.qubit.moduli}, {"tolerance", c.qubit.tolerance}};
  if (c.qubit.measured_phi) qubit["measured_phi"] = *c.qubit.measured_phi;
  j["qubit"] = qubit;
  return j;
}

}  // namespace triad::cli
