// Copyright 2026 The robnet Authors
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


#include "robnet/ingest/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "robnet/error.hpp"
#include "robnet/format.hpp"

namespace robnet::ingest {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

ScenarioSet read_scenarios(std::istream& in, int expected_kappa, std::string tag) {
  ScenarioSet set;
  set.tag = std::move(tag);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("scenario file is empty");
  strip_cr(line);
  const auto header = split(line);
  if (header.size() < 2 || header[0] != "timestamp")
    throw ValidationError("scenario header must start with \"timestamp\" and name one column "
                          "per commodity");
  const std::size_t kappa = header.size() - 1;
  if (expected_kappa >= 0 && kappa != static_cast<std::size_t>(expected_kappa))
    throw ValidationError("scenario file has " + std::to_string(kappa) +
                          " commodity columns, expected " + std::to_string(expected_kappa));
  std::vector<double> row(kappa);
  std::size_t line_no = 1;
  set.demands = RowMatrix(0, kappa);
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != kappa + 1)
      throw ValidationError("line " + std::to_string(line_no) + ": " +
                            std::to_string(cells.size() - 1) + " values, expected " +
                            std::to_string(kappa));
    for (std::size_t k = 0; k < kappa; ++k) {
      if (!parse_number(cells[k + 1], row[k]) || !std::isfinite(row[k]))
        throw ValidationError("line " + std::to_string(line_no) + ", column " +
                              std::string(header[k + 1]) + ": not a number");
      if (row[k] < 0.0)
        throw ValidationError("line " + std::to_string(line_no) + ", column " +
                              std::string(header[k + 1]) + ": negative demand");
    }
    set.timestamps.emplace_back(cells[0]);
    set.demands.append_row(row);
  }
  if (set.size() == 0) throw ValidationError("scenario file has no data rows");
  return set;
}

ScenarioSet load_scenarios(const std::filesystem::path& path, int expected_kappa,
                           std::string tag) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open scenario file " + path.string());
  if (tag.empty()) tag = path.stem().string();
  try {
    return read_scenarios(in, expected_kappa, std::move(tag));
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_scenarios(std::ostream& out, const ScenarioSet& set) {
  std::string buf = "timestamp";
  for (std::size_t k = 0; k < set.kappa(); ++k) buf += ",k" + std::to_string(k);
  buf += '\n';
  for (std::size_t t = 0; t < set.size(); ++t) {
    buf += t < set.timestamps.size() ? set.timestamps[t] : std::to_string(t);
    for (double v : set.scenario(t)) {
      buf += ',';
      append_number(buf, v);
    }
    buf += '\n';
    if (buf.size() > (1u << 20)) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
}

double total_demand(std::span<const double> d) {
  double s = 0.0;
  for (double v : d) s += v;
  return s;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ValidationError("quantile of an empty list");
  if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

ScenarioSet quantile_filter(const ScenarioSet& set, double q) {
  if (set.size() == 0) throw ValidationError("quantile_filter: empty scenario set");
  if (!(q > 0.0 && q <= 1.0)) throw ValidationError("quantile_filter: q must lie in (0, 1]");
  std::vector<double> totals(set.size());
  for (std::size_t t = 0; t < set.size(); ++t) totals[t] = total_demand(set.scenario(t));
  const double cutoff = quantile(totals, q);
  ScenarioSet out;
  out.tag = set.tag;
  out.demands = RowMatrix(0, set.kappa());
  for (std::size_t t = 0; t < set.size(); ++t) {
    if (totals[t] > cutoff) continue;
    out.demands.append_row(set.scenario(t));
    if (t < set.timestamps.size()) out.timestamps.push_back(set.timestamps[t]);
  }
  return out;
}

}  // namespace robnet::ingest
