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

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "robnet/lp/linear_program.hpp"

namespace robnet::lp {

enum class Status { Optimal, Infeasible, Unbounded };

std::string_view to_string(Status status);

struct LpSolution {
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> values;  // indexed like LinearProgram::variables(); empty unless Optimal
  double solve_seconds = 0.0;
  double max_violation = 0.0;
  long iterations = 0;
  std::string backend;

  bool optimal() const { return status == Status::Optimal; }
  double value(const LinearProgram& lp, std::string_view name) const;
};

struct SolverOptions {
  double feasibility_tol = 1e-7;  // absolute
  double optimality_tol = 1e-7;   // relative
  long max_iterations = 0;        // 0: backend default, scaled with problem size
};

// A single synchronous solve call. Implementations keep no state between
// calls and may be used from several threads at once.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string_view name() const = 0;
  virtual LpSolution solve(const LinearProgram& lp) const = 0;
};

// Known names: "dense", "revised", "auto", and "external:<command>" (see
// external_solver.hpp). Throws std::invalid_argument for anything else.
std::unique_ptr<Backend> make_backend(std::string_view name, SolverOptions options = {});

// Convenience entry point using the "auto" backend.
LpSolution solve(const LinearProgram& lp, SolverOptions options = {});

}  // namespace robnet::lp
