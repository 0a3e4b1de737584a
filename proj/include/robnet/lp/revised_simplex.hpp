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

#include "robnet/lp/solver.hpp"

namespace robnet::lp {

// Sparse bounded dual simplex.
//
// Works on the computational form [A  -I] z = 0 with one logical per row
// carrying the row bounds. Phase 1 solves the boxed auxiliary problem whose
// optimum is a dual feasible basis; phase 2 runs the dual simplex with dual
// steepest-edge pricing on slightly perturbed costs, after which the true
// costs are restored and any remaining dual infeasibility is removed with
// primal simplex iterations (Bland's rule once degenerate pivots pile up).
//
// The basis is factorized with Eigen's SparseLU and updated in product form
// between refactorizations.
class RevisedSimplex final : public Backend {
 public:
  explicit RevisedSimplex(SolverOptions options = {}) : options_(options) {}
  std::string_view name() const override { return "revised"; }
  LpSolution solve(const LinearProgram& lp) const override;

 private:
  SolverOptions options_;
};

}  // namespace robnet::lp
