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

#include <stdexcept>
#include <string>

namespace robnet {

// Malformed input files or violated type invariants.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model could not be solved to optimality (infeasible, unbounded, or the
// backend gave up).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The simplex lost numerical accuracy (singular basis, iteration limit,
// residual check failed). Never reported as a solve status.
class NumericalError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace robnet
