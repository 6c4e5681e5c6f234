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


#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "triad/cli/app.hpp"
#include "triad/cli/config.hpp"
#include "triad/cli/output.hpp"

using namespace triad;
using namespace triad::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("triadsim_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void dump(const fs::path& p, const json& j) { std::ofstream(p) << j.dump(2); }

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "triadsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_app(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, sep);) out.push_back(cell);
  return out;
}

std::string pointer_of(const json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.pointer();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("version") {
  const Result r = run({"version"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("triadsim ", 0) == 0);
}

TEST_CASE("ideal triad scan writes the documented columns") {
  const fs::path dir = scratch("ideal");
  dump(dir / "cfg.json", {{"mode", "ideal-scan"}, {"preparation", {{"recipe", "dynamic"}}}});
  const Result r = run({"run", (dir / "cfg.json").string(), "--out-dir", dir.string()});
  REQUIRE(r.code == kExitOk);
  std::istringstream csv(slurp(dir / "triadsim_events.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "phi,P111,P011,P101,P110,P300,P030,P003,P210,P201,P120,P021,P102,P012");
  std::vector<std::vector<std::string>> rows;
  for (std::string line; std::getline(csv, line);) rows.push_back(split(line, ','));
  REQUIRE(rows.size() == 33);
  CHECK(std::abs(std::stod(rows[16][0]) - kPi) < 1e-15);
  CHECK(std::abs(std::stod(rows[16][1]) - 1.0 / 12.0) < 1e-12);
  CHECK(std::abs(std::stod(rows[0][1]) - 7.0 / 36.0) < 1e-12);
  CHECK(fs::exists(dir / "triadsim_metadata.json"));
  CHECK(fs::exists(dir / "triadsim_timestamp.txt"));
  CHECK(slurp(dir / "triadsim_events.csv").find('\r') == std::string::npos);
}

TEST_CASE("identical configurations give byte-identical outputs") {
  const fs::path dir = scratch("determinism");
  const json cfg = {{"mode", "experiment"},
                    {"preparation", {{"recipe", "all_H"}}},
                    {"grid", {{"values", {-3.0, 0.0, 3.0}}}},
                    {"source", {{"max_total_photons", 7}}}};
  dump(dir / "cfg.json", cfg);
  REQUIRE(run({"run", (dir / "cfg.json").string(), "--out-dir", (dir / "a").string(), "--threads", "1"}).code ==
          kExitOk);
  REQUIRE(run({"run", (dir / "cfg.json").string(), "--out-dir", (dir / "b").string(), "--threads", "2"}).code ==
          kExitOk);
  for (const char* f : {"triadsim_occupations.csv", "triadsim_clicks.csv"}) {
    const std::string a = slurp(dir / "a" / f);
    CHECK(!a.empty());
    CHECK(a == slurp(dir / "b" / f));
  }
}

TEST_CASE("metadata reproduces the run") {
  const fs::path dir = scratch("roundtrip");
  const json cfg = {{"mode", "ideal-scan"},
                    {"format", "json"},
                    {"output", {{"directory", (dir / "first").string()}, {"stem", "scan"}}},
                    {"preparation", {{"recipe", "static_pi"}, {"sigma", 0.7}}},
                    {"grid", {{"start", -4.0}, {"stop", 4.0}, {"points", 9}}}};
  dump(dir / "cfg.json", cfg);
  REQUIRE(run({"run", (dir / "cfg.json").string()}).code == kExitOk);
  const json meta = json::parse(slurp(dir / "first" / "scan_metadata.json"));
  CHECK(meta.at("provenance").contains("library_version"));
  CHECK(meta.at("source").at("purity_reading") == "state_purity");

  // the metadata file is itself a configuration
  const RunConfig again = parse_config(meta);
  CHECK(to_json(again) == to_json(parse_config(cfg)));
  REQUIRE(run({"run", (dir / "first" / "scan_metadata.json").string(), "--out-dir", (dir / "second").string()})
              .code == kExitOk);
  CHECK(slurp(dir / "first" / "scan_events.json") == slurp(dir / "second" / "scan_events.json"));
}

TEST_CASE("config errors exit with code 2") {
  const fs::path dir = scratch("errors");
  dump(dir / "unknown.json", {{"mode", "ideal-scan"}, {"preparation", {{"recipe", "all_H"}, {"sigmaa", 1}}}});
  Result r = run({"run", (dir / "unknown.json").string(), "--out-dir", dir.string()});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("/preparation/sigmaa") != std::string::npos);

  std::ofstream(dir / "broken.json") << "{\"mode\": ";
  CHECK(run({"run", (dir / "broken.json").string()}).code == kExitConfig);
  CHECK(run({"run", (dir / "missing.json").string()}).code == kExitConfig);
  CHECK(run({"frobnicate"}).code == kExitConfig);
  CHECK(run({"run", (dir / "unknown.json").string(), "--format", "xml"}).code == kExitConfig);

  dump(dir / "purity.json", {{"mode", "experiment"}, {"source", {{"purity", 0.3}}}});
  r = run({"run", (dir / "purity.json").string(), "--out-dir", dir.string()});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("/source") != std::string::npos);
}

TEST_CASE("error pointers") {
  CHECK(pointer_of(json::object()) == "/mode");
  CHECK(pointer_of({{"mode", "scan"}}) == "/mode");
  CHECK(pointer_of({{"mode", "ideal-scan"}, {"extra", 1}}) == "/extra");
  CHECK(pointer_of({{"mode", "ideal-scan"}, {"grid", {{"variable", "phi"}}}}) == "/grid/variable");
  CHECK(pointer_of({{"mode", "experiment"}, {"cascade", {{"splitters", {"none", "none", "x"}}}}}) ==
        "/cascade/splitters/2");
  CHECK(pointer_of({{"mode", "ideal-scan"}, {"preparation", {{"recipe", "custom"}}}}) ==
        "/preparation/polarizations");
  CHECK(pointer_of({{"mode", "ideal-scan"},
                    {"preparation",
                     {{"recipe", "custom"},
                      {"polarizations", {{{"h", {1, 0}}, {"v", {0, 0}}}, {{"h", {1, 0}}, {"v", {1, 0}}},
                                         {{"h", {1, 0}}, {"v", {0, 0}}}}}}}}) == "/preparation/polarizations/1");
  CHECK(pointer_of({{"mode", "ideal-scan"}, {"network", {{"tritter_h", {{{1, 0}}}}}}}) == "/network/tritter_h");
  CHECK(pointer_of({{"mode", "validate"}, {"validate", {{"max_photons", 7}}}}) == "/validate/max_photons");
  CHECK(pointer_of({{"mode", "qubit-analysis"}, {"qubit", {{"moduli", {0.5, 1.0, 0.5}}}}}) ==
        "/qubit/moduli/1");
  CHECK(pointer_of({{"mode", "ideal-scan"}, {"provenance", {{"anything", 1}}}}) == "<accepted>");
}

TEST_CASE("validate mode and numerical failures") {
  const fs::path dir = scratch("validate");
  Result r = run({"validate", "--instances", "40"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("max deviation") != std::string::npos);

  // A zero tolerance cannot be met, which is reported as a numerical failure.
  CHECK(run({"validate", "--instances", "5", "--tolerance", "0"}).code == kExitNumerical);
  dump(dir / "strict.json", {{"mode", "validate"}, {"validate", {{"instances", 5}, {"tolerance", 0.0}}}});
  r = run({"run", (dir / "strict.json").string(), "--out-dir", dir.string()});
  CHECK(r.code == kExitNumerical);
  CHECK(r.err.find("numerical inconsistency") != std::string::npos);

  dump(dir / "ok.json", {{"mode", "validate"}, {"validate", {{"instances", 20}}}});
  CHECK(run({"run", (dir / "ok.json").string(), "--out-dir", dir.string()}).code == kExitOk);
  const std::string table = slurp(dir / "triadsim_validation.csv");
  CHECK(table.rfind("instances,events,max_deviation,max_total_error\n", 0) == 0);
}

TEST_CASE("qubit analysis") {
  const fs::path dir = scratch("qubit");
  dump(dir / "q.json", {{"mode", "qubit-analysis"},
                        {"format", "json"},
                        {"qubit", {{"moduli", {0.5, 0.5, 0.5}}, {"measured_phi", 3.1}}}});
  Result r = run({"run", (dir / "q.json").string(), "--out-dir", dir.string()});
  REQUIRE(r.code == kExitOk);
  const json q = json::parse(slurp(dir / "triadsim_qubit.json"));
  REQUIRE(q.at("qubit_phases").size() == 1);
  CHECK(std::abs(q.at("qubit_phases")[0].get<double>() - kPi) < 1e-12);
  CHECK(q.at("verdict") == "compatible");

  dump(dir / "far.json", {{"mode", "qubit-analysis"}, {"qubit", {{"moduli", {0.5, 0.5, 0.5}}, {"measured_phi", 1.0}}}});
  r = run({"run", (dir / "far.json").string(), "--out-dir", dir.string()});
  CHECK(r.out.find("incompatible") != std::string::npos);

  dump(dir / "none.json", {{"mode", "qubit-analysis"}, {"qubit", {{"moduli", {0.9, 0.05, 0.9}}}}});
  r = run({"run", (dir / "none.json").string(), "--out-dir", dir.string()});
  CHECK(r.out.find("no-qubit-realization") != std::string::npos);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(-2.0) == "-2");
  CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
}

TEST_CASE("scan writers") {
  ScanResult s;
  s.x_name = "tau";
  s.x = {0.0, 1.5};
  s.series = {{"P111", {0.25, 0.5}}, {"N111", {1.0, 0.0}}};
  CHECK(scan_csv(s) == "tau,P111,N111\n0,0.25,1\n1.5,0.5,0\n");
  CHECK(scan_csv(s, series_with_prefix(s, "N")) == "tau,N111\n0,1\n1.5,0\n");
  const json j = scan_json(s);
  CHECK(j.at("x_name") == "tau");
  CHECK(j.at("series")[1].at("name") == "N111");
}
