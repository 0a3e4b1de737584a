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

#include <span>
#include <string_view>
#include <vector>

#include "robnet/lp/linear_program.hpp"
#include "robnet/uncertainty/polyhedron.hpp"

namespace robnet::lp {

// Variables and constraints added to an LP by dualize_max.
//
// For  max { c.d : V d <= b, lower <= d <= upper }  the block introduces
// alpha (one per polyhedron row), beta_up and beta_lo (one per demand
// component), all >= 0, and the linking rows
//
//   sum_i V(i,l) alpha_i + beta_up_l - beta_lo_l = c_l      for every l,
//
// so that `bound` = b.alpha + upper.beta_up - lower.beta_lo is an upper
// bound on the inner maximum for every feasible assignment, and equals it
// at the minimum.
struct DualBlock {
  std::vector<int> alpha;
  std::vector<int> beta_up;
  std::vector<int> beta_lo;
  std::vector<int> linking;  // constraint indices, one per component
  LinearExpr bound;

  std::size_t num_variables() const { return alpha.size() + beta_up.size() + beta_lo.size(); }
};

// Appends the dual block for objective `c` (affine expressions in the
// existing LP variables) to `lp`. New names are `<prefix>_a_<i>`,
// `<prefix>_bu_<l>`, `<prefix>_bl_<l>` and `<prefix>_link_<l>`.
// Throws ValidationError when c and the polyhedron disagree in dimension.
DualBlock dualize_max(LinearProgram& lp, std::span<const LinearExpr> c,
                      const uncertainty::Polyhedron& poly, std::string_view prefix);

// Numeric objective convenience.
DualBlock dualize_max(LinearProgram& lp, std::span<const double> c,
                      const uncertainty::Polyhedron& poly, std::string_view prefix);

}  // namespace robnet::lp
