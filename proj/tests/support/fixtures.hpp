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


#pragma once

// Small networks and synthetic demand series shared by unit and acceptance
// tests.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "robnet/ingest/scenarios.hpp"
#include "robnet/netcore/network.hpp"

namespace robnet::testing {

inline netcore::Network make_network(int n, const std::vector<std::pair<int, int>>& links,
                                     double capacity = 0.0, double cost = 1.0) {
  std::vector<netcore::Node> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back({i, "n" + std::to_string(i)});
  std::vector<netcore::Edge> edges;
  for (const auto& [u, v] : links)
    edges.push_back({static_cast<int>(edges.size()), u, v, capacity, cost});
  return netcore::Network(std::move(nodes), std::move(edges));
}

// Edges 0-1, 0-2, 1-2 (ids in that order), unit cost, nothing installed.
inline netcore::Network triangle() { return make_network(3, {{0, 1}, {0, 2}, {1, 2}}); }

// Ring 0-1-...-(n-1)-0 followed by the given chords.
inline netcore::Network ring_with_chords(int n, const std::vector<std::pair<int, int>>& chords) {
  std::vector<std::pair<int, int>> links;
  for (int i = 0; i < n; ++i) links.emplace_back(i, (i + 1) % n);
  links.insert(links.end(), chords.begin(), chords.end());
  return make_network(n, links);
}

inline netcore::Network six_node_network() { return ring_with_chords(6, {{0, 3}, {1, 4}}); }
inline netcore::Network eight_node_network() { return ring_with_chords(8, {{0, 4}, {2, 6}}); }

// Diurnal demand: per-commodity base level times a daily cycle (288 steps)
// times lognormal noise, with occasional spikes.
inline ingest::ScenarioSet synthetic_scenarios(int kappa, int count, std::uint64_t seed,
                                               std::string tag = "synthetic") {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> base_dist(1.0, 10.0);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
  std::lognormal_distribution<double> noise(0.0, 0.25);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> base(kappa), phase(kappa);
  for (int k = 0; k < kappa; ++k) {
    base[k] = base_dist(rng);
    phase[k] = phase_dist(rng);
  }
  ingest::ScenarioSet set;
  set.tag = std::move(tag);
  set.demands = RowMatrix(0, kappa);
  std::vector<double> row(kappa);
  for (int t = 0; t < count; ++t) {
    const double angle = 2.0 * std::numbers::pi * (t % 288) / 288.0;
    for (int k = 0; k < kappa; ++k) {
      row[k] = base[k] * (1.0 + 0.5 * std::sin(angle + phase[k])) * noise(rng);
      if (unit(rng) < 0.01) row[k] *= 2.0;
    }
    set.demands.append_row(row);
    set.timestamps.push_back("t" + std::to_string(t));
  }
  return set;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& stem) {
    std::random_device rd;
    const auto base = std::filesystem::temp_directory_path();
    do {
      path_ = base / (stem + "_" + std::to_string(rd()));
    } while (std::filesystem::exists(path_));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

}  // namespace robnet::testing
