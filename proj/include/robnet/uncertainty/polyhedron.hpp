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

#include <cstddef>
#include <span>
#include <vector>

#include "robnet/matrix.hpp"

namespace robnet::uncertainty {

struct HyperplaneInfo {
  double weight = 0.0;           // penalty weight in effect when the row was fitted
  double score = 0.0;            // objective value reached by the fit
  double train_violation = 0.0;  // fraction of training points with v.d > b
};

// { d : V d <= b,  lower <= d <= upper }.
//
// Rows of V have unit Euclidean norm. `witness`, when non-empty, is a point
// known to lie in the set (the clipped training mean for fitted sets).
struct Polyhedron {
  RowMatrix v;  // M x kappa
  std::vector<double> b;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<HyperplaneInfo> info;  // one per row
  std::vector<double> witness;

  std::size_t kappa() const { return lower.size(); }
  std::size_t num_rows() const { return b.size(); }

  // Box [lower, upper] with no hyperplanes.
  static Polyhedron box(std::vector<double> lower, std::vector<double> upper);

  // First `m` hyperplanes only (the bounds and witness are kept).
  Polyhedron prefix(std::size_t m) const;

  void append_row(std::span<const double> normal, double offset, HyperplaneInfo meta = {});

  // Throws ValidationError if dimensions disagree, bounds cross, or a row is
  // not unit-norm (within 1e-9).
  void validate() const;
};

// lower - tol <= d <= upper + tol and V d <= b + tol.
bool contains(const Polyhedron& poly, std::span<const double> d, double tol = 1e-9);

}  // namespace robnet::uncertainty
