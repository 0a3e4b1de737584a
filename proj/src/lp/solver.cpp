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

#include "robnet/lp/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "robnet/lp/dense_simplex.hpp"
#include "robnet/lp/external_solver.hpp"
#include "robnet/lp/revised_simplex.hpp"

namespace robnet::lp {

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
  }
  return "unknown";
}

double LpSolution::value(const LinearProgram& lp, std::string_view name) const {
  const int j = lp.find_variable(name);
  if (j < 0 || static_cast<std::size_t>(j) >= values.size())
    throw std::out_of_range("no value for variable '" + std::string(name) + "'");
  return values[j];
}

namespace {

// Tableau size (rows x columns, after bound rows and slacks) above which the
// dense backend is not worth it.
constexpr double kDenseCellLimit = 4.0e4;

class AutoBackend final : public Backend {
 public:
  explicit AutoBackend(SolverOptions options) : dense_(options), revised_(options) {}
  std::string_view name() const override { return "auto"; }
  LpSolution solve(const LinearProgram& lp) const override {
    double rows = lp.num_constraints();
    for (const auto& v : lp.variables())
      if (std::isfinite(v.lower) && std::isfinite(v.upper)) rows += 1.0;
    const double cols = 2.0 * lp.num_variables() + rows;
    if ((rows + 1.0) * (cols + 1.0) <= kDenseCellLimit) return dense_.solve(lp);
    return revised_.solve(lp);
  }

 private:
  DenseSimplex dense_;
  RevisedSimplex revised_;
};

}  // namespace

std::unique_ptr<Backend> make_backend(std::string_view name, SolverOptions options) {
  if (name == "dense") return std::make_unique<DenseSimplex>(options);
  if (name == "revised") return std::make_unique<RevisedSimplex>(options);
  if (name == "auto" || name.empty()) return std::make_unique<AutoBackend>(options);
  constexpr std::string_view kExternal = "external:";
  if (name.starts_with(kExternal))
    return std::make_unique<ExternalSolver>(std::string(name.substr(kExternal.size())), options);
  throw std::invalid_argument("unknown LP backend '" + std::string(name) + "'");
}

LpSolution solve(const LinearProgram& lp, SolverOptions options) {
  return AutoBackend(options).solve(lp);
}

}  // namespace robnet::lp
