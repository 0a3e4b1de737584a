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

// Two-phase tableau simplex with Bland's rule on every pivot. Quadratic
// memory in the problem size; meant for small models and as a reference
// for the revised backend.
class DenseSimplex final : public Backend {
 public:
  explicit DenseSimplex(SolverOptions options = {}) : options_(options) {}
  std::string_view name() const override { return "dense"; }
  LpSolution solve(const LinearProgram& lp) const override;

 private:
  SolverOptions options_;
};

}  // namespace robnet::lp
