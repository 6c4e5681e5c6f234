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

#include "triad/cli/output.hpp"

#include <fstream>
#include <locale>
#include <sstream>

#include "triad/errors.hpp"

namespace triad::cli {

namespace {

std::vector<const Series*> pick(const ScanResult& scan, const std::vector<std::string>& names) {
  std::vector<const Series*> out;
  if (names.empty()) {
    for (const auto& s : scan.series) out.push_back(&s);
  } else {
    for (const auto& n : names) out.push_back(&scan.at(n));
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;  // default float format is %g
  return os.str();
}

std::string scan_csv(const ScanResult& scan, const std::vector<std::string>& names) {
  const auto columns = pick(scan, names);
  std::string out = scan.x_name;
  for (const auto* s : columns) out += "," + s->name;
  out += '\n';
  for (std::size_t i = 0; i < scan.x.size(); ++i) {
    out += format_number(scan.x[i]);
    for (const auto* s : columns) out += "," + format_number(s->values[i]);
    out += '\n';
  }
  return out;
}

nlohmann::json scan_json(const ScanResult& scan, const std::vector<std::string>& names) {
  nlohmann::json series = nlohmann::json::array();
  for (const auto* s : pick(scan, names)) series.push_back({{"name", s->name}, {"values", s->values}});
  return {{"x_name", scan.x_name}, {"x", scan.x}, {"series", series}};
}

std::vector<std::string> series_with_prefix(const ScanResult& scan, const std::string& prefix) {
  std::vector<std::string> out;
  for (const auto& s : scan.series) {
    if (s.name.rfind(prefix, 0) == 0) out.push_back(s.name);
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace triad::cli
