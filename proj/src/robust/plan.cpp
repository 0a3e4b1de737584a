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


#include "robnet/robust/plan.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "robnet/error.hpp"

namespace robnet::robust {

double plan_cost(const netcore::Network& network, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(network.num_edges()))
    throw ValidationError("plan has " + std::to_string(x.size()) + " entries for " +
                          std::to_string(network.num_edges()) + " edges");
  double cost = 0.0;
  for (const auto& e : network.edges()) cost += e.cost * x[e.id];
  return cost;
}

CapacityPlan extract_first_stage(const lp::LpSolution& solution, const RobustModel& model,
                                 const netcore::Network& network) {
  if (!solution.optimal())
    throw SolverError("cannot extract a plan from a " + std::string(lp::to_string(solution.status)) +
                      " solution");
  CapacityPlan plan;
  plan.model = std::string(to_string(model.kind));
  for (int var : model.x) {
    double v = solution.values.at(var);
    if (v < -1e-9)
      throw SolverError("capacity variable " + model.lp.variable(var).name + " is negative (" +
                        std::to_string(v) + ")");
    if (v < 0.0) v = 0.0;
    plan.x.push_back(v);
  }
  plan.cost = plan_cost(network, plan.x);
  plan.solve_seconds = solution.solve_seconds;
  return plan;
}

std::vector<std::vector<double>> AffinePolicy::flows(std::span<const double> demand) const {
  std::vector<std::vector<double>> out(phi.size());
  for (std::size_t k = 0; k < phi.size(); ++k) {
    for (std::size_t p = 0; p < phi[k].size(); ++p) {
      double f = phi[k][p];
      const auto& slope = big_phi[k][p];
      for (std::size_t l = 0; l < slope.size(); ++l) f += slope[l] * demand[l];
      out[k].push_back(f);
    }
  }
  return out;
}

AffinePolicy extract_policy(const lp::LpSolution& solution, const RobustModel& model) {
  if (model.kind != ModelKind::Affine) throw ValidationError("not an affine model");
  if (!solution.optimal()) throw SolverError("cannot extract a policy from a non-optimal solution");
  AffinePolicy policy;
  policy.phi.resize(model.phi.size());
  policy.big_phi.resize(model.big_phi.size());
  for (std::size_t k = 0; k < model.phi.size(); ++k) {
    for (std::size_t p = 0; p < model.phi[k].size(); ++p) {
      policy.phi[k].push_back(solution.values.at(model.phi[k][p]));
      std::vector<double> slope;
      for (int var : model.big_phi[k][p]) slope.push_back(var >= 0 ? solution.values.at(var) : 0.0);
      policy.big_phi[k].push_back(std::move(slope));
    }
  }
  return policy;
}

void write_plan(std::ostream& out, const CapacityPlan& plan) {
  nlohmann::ordered_json doc;
  doc["x"] = plan.x;
  doc["cost"] = plan.cost;
  doc["model"] = plan.model;
  doc["param"] = nlohmann::ordered_json::object();
  if (!plan.param_name.empty()) doc["param"][plan.param_name] = plan.param;
  doc["seed"] = plan.seed;
  if (plan.lambda != 1.0) doc["lambda"] = plan.lambda;
  doc["build_s"] = plan.build_seconds;
  doc["solve_s"] = plan.solve_seconds;
  out << doc.dump() << '\n';
}

CapacityPlan read_plan(std::istream& in) {
  CapacityPlan plan;
  try {
    const auto doc = nlohmann::json::parse(in);
    plan.x = doc.at("x").get<std::vector<double>>();
    plan.cost = doc.at("cost").get<double>();
    plan.model = doc.at("model").get<std::string>();
    if (doc.contains("param")) {
      for (const auto& [key, value] : doc["param"].items()) {
        plan.param_name = key;
        plan.param = value.get<long>();
      }
    }
    plan.seed = doc.value("seed", std::uint64_t{0});
    plan.lambda = doc.value("lambda", 1.0);
    plan.build_seconds = doc.value("build_s", 0.0);
    plan.solve_seconds = doc.value("solve_s", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("plan JSON: ") + e.what());
  }
  for (double v : plan.x)
    if (!(v >= 0.0)) throw ValidationError("plan JSON: negative capacity");
  return plan;
}

CapacityPlan load_plan(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open plan " + path.string());
  try {
    return read_plan(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace robnet::robust
