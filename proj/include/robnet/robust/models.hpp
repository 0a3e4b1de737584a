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
#include <string>
#include <vector>

#include "robnet/lp/dualize.hpp"
#include "robnet/lp/linear_program.hpp"
#include "robnet/matrix.hpp"
#include "robnet/netcore/network.hpp"
#include "robnet/netcore/paths.hpp"
#include "robnet/uncertainty/polyhedron.hpp"

namespace robnet::robust {

enum class ModelKind { Nominal, Discrete, Affine };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view text);

// Variable layout: x_e first (one per edge), then the model-specific blocks.
struct RobustModel {
  ModelKind kind = ModelKind::Nominal;
  lp::LinearProgram lp;
  std::vector<int> x;  // variable index of x_e

  // Affine model only: phi[k][p] and Phi[k][p][l] (-1 where sparsified away).
  std::vector<std::vector<int>> phi;
  std::vector<std::vector<std::vector<int>>> big_phi;
};

// min c.x s.t. sum_p f_kp >= d_k, sum_{k,p: e in p} f_kp <= u_e + x_e.
RobustModel build_nominal(const netcore::Network& network, const netcore::PathSet& paths,
                          std::span<const double> demand);

// One flow block per scenario row, all sharing x.
RobustModel build_discrete(const netcore::Network& network, const netcore::PathSet& paths,
                           const RowMatrix& scenarios);

struct AffineOptions {
  // Drop Phi_kpl when no path of commodity l shares an edge with a path of
  // commodity k (l == k is always kept).
  bool sparsify = false;
};

// Affine decision rule f_kp(d) = phi_kp + sum_l Phi_kpl d_l with every inner
// optimization over the polyhedron replaced by its LP dual.
RobustModel build_affine(const netcore::Network& network, const netcore::PathSet& paths,
                         const uncertainty::Polyhedron& poly, AffineOptions options = {});

// |E| + K * sum_k |P_k|
std::size_t discrete_variable_count(const netcore::Network& network, const netcore::PathSet& paths,
                                    std::size_t scenarios);

}  // namespace robnet::robust
