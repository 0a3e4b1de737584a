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

#include "robnet/ingest/scenarios.hpp"
#include "robnet/lp/solver.hpp"
#include "robnet/netcore/network.hpp"
#include "robnet/netcore/paths.hpp"
#include "robnet/robust/plan.hpp"

namespace robnet::eval {

// min sum_k h_k s.t. h_k + sum_p f_kp >= d_k, sum_{k,p: e in p} f_kp <= u_e + x_e.
// The LP skeleton is built once; each call fills in the right-hand sides.
class UnmetDemandModel {
 public:
  UnmetDemandModel(const netcore::Network& network, const netcore::PathSet& paths);

  double solve(std::span<const double> x, std::span<const double> demand,
               const lp::Backend& backend) const;

 private:
  lp::LinearProgram skeleton_;
  std::vector<double> installed_;
  int kappa_ = 0;
};

double unmet_demand(const netcore::Network& network, const netcore::PathSet& paths,
                    std::span<const double> x, std::span<const double> demand,
                    const lp::Backend& backend);
double unmet_demand(const netcore::Network& network, const netcore::PathSet& paths,
                    std::span<const double> x, std::span<const double> demand);

struct Metrics {
  double avg = 0.0;
  double cvar75 = 0.0;  // mean of the largest 25%
  double cvar95 = 0.0;  // mean of the largest 5%
  double max = 0.0;
};

// Mean of the ceil(fraction * n) largest values.
double tail_mean(std::span<const double> values, double fraction);

Metrics compute_metrics(std::span<const double> values);

robust::CapacityPlan scale_plan(const robust::CapacityPlan& plan, double lambda);

// lo, lo + (hi - lo) / steps, ..., hi
std::vector<double> lambda_grid(double lo = 0.5, double hi = 1.5, int steps = 40);

struct EvalRecord {
  std::string plan_id;
  std::string model;
  std::string param;  // "K=100", "M=5" or empty
  double lambda = 1.0;
  std::string dataset;
  double cost = 0.0;
  Metrics metrics;
  std::size_t scenarios = 0;
  double wall_seconds = 0.0;
};

struct EvalOptions {
  int workers = 1;
  std::string backend = "auto";
  std::filesystem::path dump_dir;  // per-scenario values when non-empty
};

// Records ordered by lambda, then dataset. Scenario order never affects the
// result.
std::vector<EvalRecord> evaluate(const robust::CapacityPlan& plan, const std::string& plan_id,
                                 std::span<const ingest::ScenarioSet> datasets,
                                 std::span<const double> lambdas,
                                 const netcore::Network& network, const netcore::PathSet& paths,
                                 const EvalOptions& options = {});

// Per-scenario unmet demand for one capacity vector, computed by `workers`
// threads.
std::vector<double> unmet_per_scenario(const UnmetDemandModel& model, std::span<const double> x,
                                       const ingest::ScenarioSet& set, const lp::Backend& backend,
                                       int workers);

inline constexpr const char* kEvaluationHeader =
    "plan_id,model,param,lambda,dataset,cost,avg,cvar75,cvar95,max,n_scenarios,wall_s";

void write_evaluation_header(std::ostream& out);
void write_evaluation_rows(std::ostream& out, std::span<const EvalRecord> records);
std::vector<EvalRecord> read_evaluation_csv(std::istream& in);

}  // namespace robnet::eval
