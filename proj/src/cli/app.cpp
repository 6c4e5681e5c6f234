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

#include "triad/cli/app.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <limits>

#include "CLI11.hpp"
#include "triad/cli/output.hpp"
#include "triad/validation.hpp"
#include "triad/version.hpp"

namespace triad::cli {

using nlohmann::json;

namespace {

std::string extension(OutputFormat f) { return f == OutputFormat::kCsv ? ".csv" : ".json"; }

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

class Writer {
 public:
  explicit Writer(const RunConfig& c) : config_(c) {
    std::filesystem::create_directories(c.out_dir);
  }

  std::string path(const std::string& suffix) const {
    return (std::filesystem::path(config_.out_dir) / (config_.stem + suffix)).string();
  }

  void scan(const std::string& family, const ScanResult& s, const std::vector<std::string>& names) {
    const std::string p = path("_" + family + extension(config_.format));
    if (config_.format == OutputFormat::kCsv) {
      write_file(p, scan_csv(s, names));
    } else {
      write_file(p, scan_json(s, names).dump(2) + "\n");
    }
    files.push_back(p);
  }

  void table(const std::string& family, const std::vector<std::string>& header,
             const std::vector<std::vector<double>>& rows, const json& as_json) {
    const std::string p = path("_" + family + extension(config_.format));
    if (config_.format == OutputFormat::kCsv) {
      std::string text;
      for (std::size_t k = 0; k < header.size(); ++k) text += (k ? "," : "") + header[k];
      text += '\n';
      for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) text += (k ? "," : "") + format_number(row[k]);
        text += '\n';
      }
      write_file(p, text);
    } else {
      write_file(p, as_json.dump(2) + "\n");
    }
    files.push_back(p);
  }

  std::vector<std::string> files;

 private:
  const RunConfig& config_;
};

void provenance_from_scan(json& prov, const ScanResult& s) {
  prov["truncation_deficit"] = s.truncation_deficit;
  prov["truncation_warning"] = s.truncation_warning;
  prov["heralded_weight"] = s.heralded_weight;
}

}  // namespace

std::vector<std::string> execute(const RunConfig& c, std::ostream& out) {
  Writer w(c);
  json prov = {{"library_version", kVersion}};
  const auto grid = c.grid.expand();

  switch (c.mode) {
    case RunMode::kIdealScan: {
      const ScanResult s = c.grid.variable == "phi" ? scan_triad(grid, c.preparation.sigma)
                                                    : scan_delays(c.preparation, grid);
      w.scan("events", s, ideal_event_columns());
      provenance_from_scan(prov, s);
      out << "ideal scan over " << grid.size() << " points of " << c.grid.variable << "\n";
      break;
    }
    case RunMode::kExperiment: {
      ExperimentSetup setup = c.setup;
      setup.threads = c.threads;
      const ScanResult s = c.grid.variable == "phi"
                               ? simulate_triad_scan(grid, c.preparation.sigma, setup)
                               : simulate_delay_scan(c.preparation, grid, setup);
      w.scan("occupations", s, series_with_prefix(s, "P"));
      w.scan("clicks", s, series_with_prefix(s, "N"));
      provenance_from_scan(prov, s);
      out << "experiment over " << grid.size() << " points; truncation deficit "
          << format_number(s.truncation_deficit) << "\n";
      if (s.truncation_warning) out << "warning: truncation deficit above 1e-2\n";
      break;
    }
    case RunMode::kValidate: {
      const auto r = oracle_equivalence(c.validate.instances, c.seed, c.validate.max_photons);
      w.table("validation", {"instances", "events", "max_deviation", "max_total_error"},
              {{static_cast<double>(r.instances), static_cast<double>(r.events), r.max_deviation,
                r.max_total_error}},
              {{"instances", r.instances},
               {"events", r.events},
               {"max_deviation", r.max_deviation},
               {"max_total_error", r.max_total_error}});
      prov["max_deviation"] = r.max_deviation;
      out << "oracle equivalence: " << r.instances << " instances, " << r.events
          << " events, max deviation " << format_number(r.max_deviation) << "\n";
      if (!(r.max_deviation < c.validate.tolerance)) {
        throw NumericalInconsistency("oracle equivalence failed: max deviation " +
                                     format_number(r.max_deviation));
      }
      break;
    }
    case RunMode::kQubitAnalysis: {
      const auto& m = c.qubit.moduli;
      const auto phases = qubit_triad_phase(m[0], m[1], m[2]);
      std::vector<std::vector<double>> rows;
      json j = {{"moduli", m}};
      std::string verdict = "no-qubit-realization";
      if (phases) {
        j["qubit_phases"] = *phases;
        bool compatible = false;
        for (double phi : *phases) {
          double distance = std::numeric_limits<double>::quiet_NaN();
          if (c.qubit.measured_phi) {
            distance = angular_distance(phi, wrap_angle(*c.qubit.measured_phi));
            compatible = compatible || distance <= c.qubit.tolerance;
          }
          rows.push_back({phi, distance, distance <= c.qubit.tolerance ? 1.0 : 0.0});
        }
        verdict = !c.qubit.measured_phi ? "not-assessed" : compatible ? "compatible" : "incompatible";
      } else {
        j["qubit_phases"] = json::array();
      }
      if (c.qubit.measured_phi) j["measured_phi"] = *c.qubit.measured_phi;
      j["tolerance"] = c.qubit.tolerance;
      j["verdict"] = verdict;
      w.table("qubit", {"phi_2d", "distance_to_measured", "compatible"}, rows, j);
      prov["verdict"] = verdict;
      out << "qubit triad phases:";
      if (phases) {
        for (double phi : *phases) out << " " << format_number(phi);
      } else {
        out << " none";
      }
      out << "\nverdict: " << verdict << "\n";
      break;
    }
  }

  json meta = to_json(c);
  prov["outputs"] = w.files;
  meta["provenance"] = prov;
  const std::string meta_path = w.path("_metadata.json");
  write_file(meta_path, meta.dump(2) + "\n");
  const std::string stamp_path = w.path("_timestamp.txt");
  write_file(stamp_path, iso_timestamp() + "\n");
  w.files.push_back(meta_path);
  w.files.push_back(stamp_path);
  return w.files;
}

int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Three-photon interference simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string format;
  std::string out_dir;
  int threads = -1;
  auto* run = app.add_subcommand("run", "Run a JSON configuration");
  run->add_option("config", config_path, "Configuration file")->required();
  run->add_option("--format", format, "Output format (csv or json)")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--out-dir", out_dir, "Output directory");
  run->add_option("--threads", threads, "Worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

  int instances = 500;
  std::uint64_t seed = 1;
  int max_photons = 4;
  double tolerance = kValidationTolerance;
  auto* validate = app.add_subcommand("validate", "Oracle-equivalence self-test");
  validate->add_option("--instances", instances, "Random instances")->check(CLI::PositiveNumber);
  validate->add_option("--seed", seed, "Random seed");
  validate->add_option("--max-photons", max_photons, "Largest photon number")
      ->check(CLI::Range(1, 6));
  validate->add_option("--tolerance", tolerance, "Largest accepted deviation")
      ->check(CLI::NonNegativeNumber);

  app.add_subcommand("version", "Print the library version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (app.got_subcommand("version")) {
      out << "triadsim " << kVersion << "\n";
      return kExitOk;
    }
    if (app.got_subcommand("validate")) {
      const auto r = oracle_equivalence(instances, seed, max_photons);
      out << "oracle equivalence: " << r.instances << " instances, " << r.events
          << " events, max deviation " << format_number(r.max_deviation) << "\n";
      if (r.max_deviation < tolerance) return kExitOk;
      err << "numerical inconsistency: max deviation not below " << format_number(tolerance) << "\n";
      return kExitNumerical;
    }
    RunConfig c = load_config(config_path);
    if (!format.empty()) c.format = format == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;
    if (!out_dir.empty()) c.out_dir = out_dir;
    if (threads >= 0) c.threads = threads;
    execute(c, out);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalInconsistency& e) {
    err << "numerical inconsistency: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DomainError& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InvalidSpectrum& e) {
    err << "invalid spectrum: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UnsupportedModePair& e) {
    err << "unsupported mode pair: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SizeLimit& e) {
    err << "size limit: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace triad::cli
