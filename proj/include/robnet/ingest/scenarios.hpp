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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "robnet/matrix.hpp"

namespace robnet::ingest {

// T demand vectors of dimension kappa, one per measurement interval.
struct ScenarioSet {
  RowMatrix demands;  // T x kappa, entries >= 0
  std::vector<std::string> timestamps;
  std::string tag;

  std::size_t size() const { return demands.rows(); }
  std::size_t kappa() const { return demands.cols(); }
  std::span<const double> scenario(std::size_t t) const { return demands.row(t); }
};

// Reads the wide CSV layout "timestamp,k0,...,k{kappa-1}". Throws
// ValidationError on an empty file, a wrong column count or a negative or
// malformed entry. `expected_kappa` < 0 accepts whatever the header says.
ScenarioSet read_scenarios(std::istream& in, int expected_kappa, std::string tag = {});
ScenarioSet load_scenarios(const std::filesystem::path& path, int expected_kappa,
                           std::string tag = {});

void write_scenarios(std::ostream& out, const ScenarioSet& set);

double total_demand(std::span<const double> d);

// Linear interpolation between order statistics at position q * (n - 1).
double quantile(std::vector<double> values, double q);

// Keeps scenarios whose total demand is at most the q-quantile of totals.
ScenarioSet quantile_filter(const ScenarioSet& set, double q);

}  // namespace robnet::ingest
