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


#include "robnet/robust/models.hpp"

#include <algorithm>
#include <string>

#include "robnet/error.hpp"
#include "robnet/lp/solver.hpp"

namespace robnet::robust {

namespace {

using lp::kInf;
using lp::LinearExpr;
using lp::Relation;
using lp::Term;

std::string name(std::string_view stem, std::initializer_list<std::size_t> ids) {
  std::string s(stem);
  for (std::size_t id : ids) {
    s += '_';
    s += std::to_string(id);
  }
  return s;
}

void check_inputs(const netcore::Network& network, const netcore::PathSet& paths,
                  std::size_t kappa) {
  if (paths.num_edges() != network.num_edges())
    throw ValidationError("path set was built for a different network");
  if (static_cast<std::size_t>(paths.num_commodities()) != kappa)
    throw ValidationError("demand dimension " + std::to_string(kappa) + " does not match " +
                          std::to_string(paths.num_commodities()) + " commodities");
}

void check_routable(const netcore::PathSet& paths, std::span<const double> demand,
                    std::size_t scenario) {
  for (std::size_t k = 0; k < demand.size(); ++k) {
    if (demand[k] > 0.0 && paths.paths(static_cast<int>(k)).empty())
      throw ValidationError("commodity " + std::to_string(k) + " has demand in scenario " +
                            std::to_string(scenario) + " but no path");
  }
}

std::vector<int> add_capacity_variables(lp::LinearProgram& lp, const netcore::Network& network) {
  std::vector<int> x;
  for (const auto& e : network.edges()) x.push_back(lp.add_variable(name("x", {static_cast<std::size_t>(e.id)}), 0.0, kInf));
  return x;
}

void set_cost_objective(lp::LinearProgram& lp, const netcore::Network& network,
                        const std::vector<int>& x) {
  std::vector<Term> obj;
  for (const auto& e : network.edges())
    if (e.cost != 0.0) obj.push_back({x[e.id], e.cost});
  lp.set_objective(lp::Sense::Minimize, std::move(obj));
}

// Flow variables and the coverage/capacity rows of one scenario.
void add_flow_block(lp::LinearProgram& lp, const netcore::Network& network,
                    const netcore::PathSet& paths, const std::vector<int>& x,
                    std::span<const double> demand, std::string_view tag) {
  const int kappa = paths.num_commodities();
  std::vector<std::vector<int>> f(kappa);
  const std::string fname = "f" + std::string(tag);
  for (int k = 0; k < kappa; ++k) {
    for (std::size_t p = 0; p < paths.paths(k).size(); ++p)
      f[k].push_back(lp.add_variable(name(fname, {static_cast<std::size_t>(k), p}), 0.0, kInf));
  }
  const std::string cover = "cover" + std::string(tag);
  for (int k = 0; k < kappa; ++k) {
    std::vector<Term> terms;
    for (int v : f[k]) terms.push_back({v, 1.0});
    lp.add_constraint(name(cover, {static_cast<std::size_t>(k)}), std::move(terms),
                      Relation::GreaterEqual, demand[k]);
  }
  const std::string cap = "cap" + std::string(tag);
  for (const auto& e : network.edges()) {
    std::vector<Term> terms;
    for (const auto& use : paths.uses(e.id)) terms.push_back({f[use.commodity][use.path], 1.0});
    terms.push_back({x[e.id], -1.0});
    lp.add_constraint(name(cap, {static_cast<std::size_t>(e.id)}), std::move(terms),
                      Relation::LessEqual, e.capacity);
  }
}

// interacts[k][l]: some path of k shares an edge with some path of l.
std::vector<std::vector<bool>> interaction(const netcore::PathSet& paths) {
  const int kappa = paths.num_commodities();
  std::vector<std::vector<bool>> out(kappa, std::vector<bool>(kappa, false));
  for (int e = 0; e < paths.num_edges(); ++e) {
    const auto uses = paths.uses(e);
    for (const auto& a : uses)
      for (const auto& b : uses) out[a.commodity][b.commodity] = true;
  }
  for (int k = 0; k < kappa; ++k) out[k][k] = true;
  return out;
}

void require_nonempty(const uncertainty::Polyhedron& poly) {
  poly.validate();
  if (!poly.witness.empty()) {
    if (!uncertainty::contains(poly, poly.witness, 1e-9))
      throw ValidationError("uncertainty polyhedron is empty: stored witness violates a row");
    return;
  }
  lp::LinearProgram check;
  for (std::size_t l = 0; l < poly.kappa(); ++l)
    check.add_variable(name("d", {l}), poly.lower[l], poly.upper[l]);
  for (std::size_t i = 0; i < poly.num_rows(); ++i) {
    std::vector<Term> terms;
    for (std::size_t l = 0; l < poly.kappa(); ++l)
      if (poly.v(i, l) != 0.0) terms.push_back({static_cast<int>(l), poly.v(i, l)});
    check.add_constraint(name("h", {i}), std::move(terms), Relation::LessEqual, poly.b[i]);
  }
  if (lp::solve(check).status != lp::Status::Optimal)
    throw ValidationError("uncertainty polyhedron is empty");
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Nominal: return "nominal";
    case ModelKind::Discrete: return "discrete";
    case ModelKind::Affine: return "affine";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view text) {
  if (text == "nominal") return ModelKind::Nominal;
  if (text == "discrete") return ModelKind::Discrete;
  if (text == "affine") return ModelKind::Affine;
  throw ValidationError("unknown model kind \"" + std::string(text) + "\"");
}

RobustModel build_nominal(const netcore::Network& network, const netcore::PathSet& paths,
                          std::span<const double> demand) {
  check_inputs(network, paths, demand.size());
  check_routable(paths, demand, 0);
  RobustModel model;
  model.kind = ModelKind::Nominal;
  model.x = add_capacity_variables(model.lp, network);
  add_flow_block(model.lp, network, paths, model.x, demand, "");
  set_cost_objective(model.lp, network, model.x);
  return model;
}

RobustModel build_discrete(const netcore::Network& network, const netcore::PathSet& paths,
                           const RowMatrix& scenarios) {
  if (scenarios.rows() == 0) throw ValidationError("discrete model needs at least one scenario");
  check_inputs(network, paths, scenarios.cols());
  for (std::size_t i = 0; i < scenarios.rows(); ++i) check_routable(paths, scenarios.row(i), i);
  RobustModel model;
  model.kind = ModelKind::Discrete;
  model.x = add_capacity_variables(model.lp, network);
  for (std::size_t i = 0; i < scenarios.rows(); ++i)
    add_flow_block(model.lp, network, paths, model.x, scenarios.row(i), std::to_string(i));
  set_cost_objective(model.lp, network, model.x);
  return model;
}

RobustModel build_affine(const netcore::Network& network, const netcore::PathSet& paths,
                         const uncertainty::Polyhedron& poly, AffineOptions options) {
  const std::size_t kappa = poly.kappa();
  check_inputs(network, paths, kappa);
  require_nonempty(poly);
  for (std::size_t k = 0; k < kappa; ++k) {
    if (poly.upper[k] > 0.0 && paths.paths(static_cast<int>(k)).empty())
      throw ValidationError("commodity " + std::to_string(k) + " may carry demand but has no path");
  }

  RobustModel model;
  model.kind = ModelKind::Affine;
  auto& lp = model.lp;
  model.x = add_capacity_variables(lp, network);

  const int nk = static_cast<int>(kappa);
  model.phi.resize(nk);
  for (int k = 0; k < nk; ++k) {
    for (std::size_t p = 0; p < paths.paths(k).size(); ++p)
      model.phi[k].push_back(lp.add_variable(name("phi", {static_cast<std::size_t>(k), p}), -kInf, kInf));
  }
  const auto interacts = options.sparsify ? interaction(paths)
                                          : std::vector<std::vector<bool>>();
  model.big_phi.resize(nk);
  for (int k = 0; k < nk; ++k) {
    model.big_phi[k].resize(paths.paths(k).size());
    for (std::size_t p = 0; p < paths.paths(k).size(); ++p) {
      auto& row = model.big_phi[k][p];
      row.assign(kappa, -1);
      for (std::size_t l = 0; l < kappa; ++l) {
        if (options.sparsify && !interacts[k][l]) continue;
        row[l] = lp.add_variable(name("Phi", {static_cast<std::size_t>(k), p, l}), -kInf, kInf);
      }
    }
  }

  std::vector<LinearExpr> c(kappa);
  auto reset = [&] {
    for (auto& expr : c) expr = LinearExpr();
  };

  // Demand coverage: sum_p phi_kp >= max_d sum_l (1[l=k] - sum_p Phi_kpl) d_l.
  for (int k = 0; k < nk; ++k) {
    reset();
    c[k].constant = 1.0;
    for (const auto& row : model.big_phi[k])
      for (std::size_t l = 0; l < kappa; ++l)
        if (row[l] >= 0) c[l].add(row[l], -1.0);
    const auto block = lp::dualize_max(lp, c, poly, name("cv", {static_cast<std::size_t>(k)}));
    LinearExpr lhs;
    for (int v : model.phi[k]) lhs.add(v, 1.0);
    LinearExpr bound = block.bound;
    bound *= -1.0;
    lhs += bound;
    lp.add_constraint(name("cover", {static_cast<std::size_t>(k)}), lhs, Relation::GreaterEqual, 0.0);
  }

  // Edge capacity: sum phi + max_d sum_l (sum Phi_kpl) d_l <= u_e + x_e.
  for (const auto& e : network.edges()) {
    reset();
    for (const auto& use : paths.uses(e.id)) {
      const auto& row = model.big_phi[use.commodity][use.path];
      for (std::size_t l = 0; l < kappa; ++l)
        if (row[l] >= 0) c[l].add(row[l], 1.0);
    }
    const auto block = lp::dualize_max(lp, c, poly, name("cp", {static_cast<std::size_t>(e.id)}));
    LinearExpr lhs;
    for (const auto& use : paths.uses(e.id)) lhs.add(model.phi[use.commodity][use.path], 1.0);
    lhs += block.bound;
    lhs.add(model.x[e.id], -1.0);
    lp.add_constraint(name("cap", {static_cast<std::size_t>(e.id)}), lhs, Relation::LessEqual,
                      e.capacity);
  }

  // Flow nonnegativity: phi_kp - max_d sum_l (-Phi_kpl) d_l >= 0.
  for (int k = 0; k < nk; ++k) {
    for (std::size_t p = 0; p < model.phi[k].size(); ++p) {
      reset();
      const auto& row = model.big_phi[k][p];
      for (std::size_t l = 0; l < kappa; ++l)
        if (row[l] >= 0) c[l].add(row[l], -1.0);
      const auto block =
          lp::dualize_max(lp, c, poly, name("nn", {static_cast<std::size_t>(k), p}));
      LinearExpr lhs;
      lhs.add(model.phi[k][p], 1.0);
      LinearExpr bound = block.bound;
      bound *= -1.0;
      lhs += bound;
      lp.add_constraint(name("nonneg", {static_cast<std::size_t>(k), p}), lhs,
                        Relation::GreaterEqual, 0.0);
    }
  }

  set_cost_objective(lp, network, model.x);
  return model;
}

std::size_t discrete_variable_count(const netcore::Network& network, const netcore::PathSet& paths,
                                    std::size_t scenarios) {
  return static_cast<std::size_t>(network.num_edges()) + scenarios * paths.total_paths();
}

}  // namespace robnet::robust
