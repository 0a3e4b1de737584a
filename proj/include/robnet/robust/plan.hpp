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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "robnet/lp/solver.hpp"
#include "robnet/netcore/network.hpp"
#include "robnet/robust/models.hpp"

namespace robnet::robust {

struct CapacityPlan {
  std::vector<double> x;  // per edge, >= 0
  double cost = 0.0;
  std::string model;        // "nominal", "discrete" or "affine"
  std::string param_name;   // "K", "M" or empty
  long param = 0;
  std::uint64_t seed = 0;
  double lambda = 1.0;
  double build_seconds = 0.0;
  double solve_seconds = 0.0;
};

double plan_cost(const netcore::Network& network, std::span<const double> x);

// Reads x from an optimal solution; values in [-1e-9, 0) are clamped to 0.
// Throws SolverError for a non-optimal solution or a clearly negative x.
CapacityPlan extract_first_stage(const lp::LpSolution& solution, const RobustModel& model,
                                 const netcore::Network& network);

struct AffinePolicy {
  std::vector<std::vector<double>> phi;                 // [k][p]
  std::vector<std::vector<std::vector<double>>> big_phi;  // [k][p][l]

  // phi_kp + sum_l Phi_kpl d_l for every (k, p).
  std::vector<std::vector<double>> flows(std::span<const double> demand) const;
};

AffinePolicy extract_policy(const lp::LpSolution& solution, const RobustModel& model);

// {"x":[...],"cost":..,"model":..,"param":{"K":..},"seed":..,"lambda":..,"build_s":..,"solve_s":..}
void write_plan(std::ostream& out, const CapacityPlan& plan);
CapacityPlan read_plan(std::istream& in);
CapacityPlan load_plan(const std::filesystem::path& path);

}  // namespace robnet::robust
