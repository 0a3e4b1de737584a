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

#include <string>

#include "robnet/lp/solver.hpp"

namespace robnet::lp {

// Adapter for an out-of-process solver. The model is exported in LP format
// to a temporary file and `command <model.lp> <solution.txt>` is run through
// the shell. The command must write
//
//   status optimal|infeasible|unbounded
//   objective <value>
//   <variable name> <value>      (one line per variable, optimal only)
//
// tools/highs_lp_solve.py implements this protocol on top of highspy.
class ExternalSolver final : public Backend {
 public:
  ExternalSolver(std::string command, SolverOptions options = {})
      : command_(std::move(command)), options_(options) {}
  std::string_view name() const override { return "external"; }
  LpSolution solve(const LinearProgram& lp) const override;

 private:
  std::string command_;
  SolverOptions options_;
};

}  // namespace robnet::lp
