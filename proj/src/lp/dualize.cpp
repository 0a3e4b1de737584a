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

#include "robnet/lp/dualize.hpp"

#include <string>

#include "robnet/error.hpp"

namespace robnet::lp {

DualBlock dualize_max(LinearProgram& lp, std::span<const LinearExpr> c,
                      const uncertainty::Polyhedron& poly, std::string_view prefix) {
  const std::size_t kappa = poly.kappa();
  if (c.size() != kappa)
    throw ValidationError("dualize_max: objective has " + std::to_string(c.size()) +
                          " components, polyhedron has " + std::to_string(kappa));
  if (poly.upper.size() != kappa || poly.v.rows() != poly.num_rows() ||
      (poly.num_rows() > 0 && poly.v.cols() != kappa))
    throw ValidationError("dualize_max: inconsistent polyhedron dimensions");

  const std::string pre(prefix);
  DualBlock block;
  const std::size_t rows = poly.num_rows();
  block.alpha.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i)
    block.alpha.push_back(lp.add_variable(pre + "_a_" + std::to_string(i), 0.0, kInf));
  for (std::size_t l = 0; l < kappa; ++l)
    block.beta_up.push_back(lp.add_variable(pre + "_bu_" + std::to_string(l), 0.0, kInf));
  for (std::size_t l = 0; l < kappa; ++l)
    block.beta_lo.push_back(lp.add_variable(pre + "_bl_" + std::to_string(l), 0.0, kInf));

  for (std::size_t l = 0; l < kappa; ++l) {
    // sum_i V(i,l) alpha_i + beta_up_l - beta_lo_l - c_l(vars) = c_l(constant)
    std::vector<Term> terms;
    terms.reserve(rows + 2 + c[l].terms.size());
    for (std::size_t i = 0; i < rows; ++i) {
      const double vil = poly.v(i, l);
      if (vil != 0.0) terms.push_back({block.alpha[i], vil});
    }
    terms.push_back({block.beta_up[l], 1.0});
    terms.push_back({block.beta_lo[l], -1.0});
    for (const auto& t : c[l].terms) terms.push_back({t.var, -t.coef});
    block.linking.push_back(lp.add_constraint(pre + "_link_" + std::to_string(l),
                                              std::move(terms), Relation::Equal,
                                              c[l].constant));
  }

  for (std::size_t i = 0; i < rows; ++i)
    if (poly.b[i] != 0.0) block.bound.add(block.alpha[i], poly.b[i]);
  for (std::size_t l = 0; l < kappa; ++l) {
    if (poly.upper[l] != 0.0) block.bound.add(block.beta_up[l], poly.upper[l]);
    if (poly.lower[l] != 0.0) block.bound.add(block.beta_lo[l], -poly.lower[l]);
  }
  return block;
}

DualBlock dualize_max(LinearProgram& lp, std::span<const double> c,
                      const uncertainty::Polyhedron& poly, std::string_view prefix) {
  std::vector<LinearExpr> exprs;
  exprs.reserve(c.size());
  for (double v : c) exprs.emplace_back(v);
  return dualize_max(lp, exprs, poly, prefix);
}

}  // namespace robnet::lp
