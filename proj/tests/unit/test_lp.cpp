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

#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>

#include "doctest.h"
#include "robnet/error.hpp"
#include "robnet/lp/dense_simplex.hpp"
#include "robnet/lp/dualize.hpp"
#include "robnet/lp/external_solver.hpp"
#include "robnet/lp/lp_writer.hpp"
#include "robnet/lp/revised_simplex.hpp"
#include "support/oracles.hpp"

using namespace robnet;
using namespace robnet::lp;

namespace {

const char* kBackends[] = {"dense", "revised"};

LinearProgram min_x_ge_3() {
  LinearProgram lp;
  const int x = lp.add_variable("x", -kInf, kInf);
  lp.add_constraint("c", {{x, 1.0}}, Relation::GreaterEqual, 3.0);
  lp.set_objective(Sense::Minimize, {{x, 1.0}});
  return lp;
}

// Random LP with a known feasible point and bounded objective (all
// variables boxed or the objective pushes against finite bounds).
LinearProgram random_lp(std::mt19937_64& rng, int nvars, int ncons, bool bounded) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> kind(0, 5);
  LinearProgram lp;
  std::vector<double> point(nvars);
  for (int j = 0; j < nvars; ++j) {
    point[j] = 3.0 * u(rng);
    double lo = -kInf, hi = kInf;
    switch (kind(rng)) {
      case 0: break;  // free
      case 1: lo = point[j] - 2.0 * std::abs(u(rng)); break;
      case 2: hi = point[j] + 2.0 * std::abs(u(rng)); break;
      case 3: lo = point[j] - 1.0; hi = point[j] + std::abs(u(rng)); break;
      default: lo = std::floor(point[j]) - 1.0; break;
    }
    if (bounded) {
      if (lo == -kInf) lo = point[j] - 5.0;
      if (hi == kInf) hi = point[j] + 5.0;
    }
    lp.add_variable("v" + std::to_string(j), lo, hi);
  }
  for (int i = 0; i < ncons; ++i) {
    std::vector<Term> terms;
    double act = 0.0;
    for (int j = 0; j < nvars; ++j) {
      if (std::abs(u(rng)) < 0.4) continue;
      const double a = std::round(4.0 * u(rng) * 100.0) / 100.0;
      terms.push_back({j, a});
      act += a * point[j];
    }
    const int rel = kind(rng) % 3;
    const double slack = std::abs(u(rng));
    if (rel == 0) lp.add_constraint("r" + std::to_string(i), terms, Relation::LessEqual, act + slack);
    else if (rel == 1) lp.add_constraint("r" + std::to_string(i), terms, Relation::GreaterEqual, act - slack);
    else lp.add_constraint("r" + std::to_string(i), terms, Relation::Equal, act);
  }
  std::vector<Term> obj;
  for (int j = 0; j < nvars; ++j) obj.push_back({j, u(rng)});
  lp.set_objective(u(rng) < 0 ? Sense::Minimize : Sense::Maximize, obj);
  return lp;
}

uncertainty::Polyhedron random_polyhedron(std::mt19937_64& rng, int kappa, int rows) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> lo(kappa), hi(kappa), mid(kappa);
  for (int l = 0; l < kappa; ++l) {
    lo[l] = 2.0 * u(rng);
    hi[l] = lo[l] + 0.5 + 3.0 * u(rng);
    mid[l] = 0.5 * (lo[l] + hi[l]);
  }
  auto poly = uncertainty::Polyhedron::box(lo, hi);
  poly.witness = mid;
  for (int i = 0; i < rows; ++i) {
    std::vector<double> v(kappa);
    double norm = 0.0;
    for (auto& x : v) {
      x = g(rng);
      norm += x * x;
    }
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;
    poly.append_row(v, dot(v, mid) + 0.6 * u(rng));
  }
  return poly;
}

double primal_max(const uncertainty::Polyhedron& poly, const std::vector<double>& c,
                  const Backend& backend) {
  LinearProgram lp;
  const int k = static_cast<int>(c.size());
  std::vector<Term> obj;
  for (int l = 0; l < k; ++l) {
    lp.add_variable("d" + std::to_string(l), poly.lower[l], poly.upper[l]);
    obj.push_back({l, c[l]});
  }
  for (std::size_t i = 0; i < poly.num_rows(); ++i) {
    std::vector<Term> t;
    for (int l = 0; l < k; ++l) t.push_back({l, poly.v(i, l)});
    lp.add_constraint("h" + std::to_string(i), t, Relation::LessEqual, poly.b[i]);
  }
  lp.set_objective(Sense::Maximize, obj);
  const auto sol = backend.solve(lp);
  REQUIRE(sol.optimal());
  return sol.objective;
}

double dual_min(const uncertainty::Polyhedron& poly, const std::vector<double>& c,
                const Backend& backend, LpSolution* out = nullptr, LinearProgram* lp_out = nullptr) {
  LinearProgram lp;
  const DualBlock block = dualize_max(lp, std::span<const double>(c), poly, "q");
  lp.set_objective(Sense::Minimize, block.bound.terms, block.bound.constant);
  const auto sol = backend.solve(lp);
  REQUIRE(sol.optimal());
  if (out) *out = sol;
  if (lp_out) *lp_out = lp;
  return sol.objective;
}

std::vector<std::vector<double>> polyhedron_rows(const uncertainty::Polyhedron& poly,
                                                 std::vector<double>& h) {
  const std::size_t k = poly.kappa();
  std::vector<std::vector<double>> g;
  h.clear();
  for (std::size_t i = 0; i < poly.num_rows(); ++i) {
    g.emplace_back(poly.v.row(i).begin(), poly.v.row(i).end());
    h.push_back(poly.b[i]);
  }
  for (std::size_t l = 0; l < k; ++l) {
    std::vector<double> e(k, 0.0);
    e[l] = 1.0;
    g.push_back(e);
    h.push_back(poly.upper[l]);
    e[l] = -1.0;
    g.push_back(e);
    h.push_back(-poly.lower[l]);
  }
  return g;
}

}  // namespace

TEST_CASE("linear program bookkeeping") {
  LinearProgram lp;
  const int x = lp.add_variable("x");
  CHECK_THROWS_AS(lp.add_variable("x"), ValidationError);
  lp.add_constraint("c", {{x, 1.0}, {x, 2.0}}, Relation::LessEqual, 4.0);
  CHECK(lp.constraint(0).terms.size() == 1);
  CHECK(lp.constraint(0).terms[0].coef == 3.0);
  lp.add_constraint("bad", {{7, 1.0}}, Relation::LessEqual, 1.0);
  CHECK_THROWS_AS(lp.validate(), ValidationError);
}

TEST_CASE("solve: small examples on every backend") {
  for (const char* name : kBackends) {
    CAPTURE(name);
    const auto backend = make_backend(name);

    const auto s1 = backend->solve(min_x_ge_3());
    REQUIRE(s1.optimal());
    CHECK(s1.objective == doctest::Approx(3.0).epsilon(1e-9));

    LinearProgram infeasible;
    const int x = infeasible.add_variable("x", -kInf, kInf);
    infeasible.add_constraint("lo", {{x, 1.0}}, Relation::GreaterEqual, 1.0);
    infeasible.add_constraint("hi", {{x, 1.0}}, Relation::LessEqual, 0.0);
    infeasible.set_objective(Sense::Minimize, {{x, 1.0}});
    CHECK(backend->solve(infeasible).status == Status::Infeasible);

    LinearProgram box;
    const int a = box.add_variable("x", 0.0, 2.0);
    const int b = box.add_variable("y", 0.0, 2.0);
    box.set_objective(Sense::Maximize, {{a, 1.0}, {b, 1.0}});
    const auto s3 = backend->solve(box);
    REQUIRE(s3.optimal());
    CHECK(s3.objective == doctest::Approx(4.0));
    CHECK(s3.values[a] == doctest::Approx(2.0));
    CHECK(s3.values[b] == doctest::Approx(2.0));

    LinearProgram unbounded;
    const int u = unbounded.add_variable("u", 0.0, kInf);
    const int w = unbounded.add_variable("w", 0.0, kInf);
    unbounded.add_constraint("r", {{u, 1.0}, {w, -1.0}}, Relation::LessEqual, 1.0);
    unbounded.set_objective(Sense::Maximize, {{u, 1.0}});
    CHECK(backend->solve(unbounded).status == Status::Unbounded);

    LinearProgram eq;
    const int p = eq.add_variable("p", -kInf, 5.0);
    const int q = eq.add_variable("q", -kInf, kInf);
    eq.add_constraint("sum", {{p, 1.0}, {q, 1.0}}, Relation::Equal, 2.0);
    eq.add_constraint("diff", {{p, 1.0}, {q, -1.0}}, Relation::GreaterEqual, -4.0);
    eq.set_objective(Sense::Minimize, {{p, 1.0}, {q, 2.0}});
    const auto s5 = backend->solve(eq);
    REQUIRE(s5.optimal());
    CHECK(s5.values[p] == doctest::Approx(5.0));
    CHECK(s5.values[q] == doctest::Approx(-3.0));
    CHECK(s5.objective == doctest::Approx(-1.0));

    LinearProgram empty;
    const int e = empty.add_variable("e", -1.0, 3.0);
    empty.set_objective(Sense::Minimize, {{e, -2.0}});
    const auto s6 = backend->solve(empty);
    REQUIRE(s6.optimal());
    CHECK(s6.objective == doctest::Approx(-6.0));
  }
}

TEST_CASE("revised and dense backends agree on random LPs") {
  std::mt19937_64 rng(2024);
  const auto dense = make_backend("dense");
  const auto revised = make_backend("revised");
  int optimal = 0, other = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const bool bounded = trial % 3 != 0;
    const int nvars = 2 + trial % 9;
    const int ncons = 1 + (trial * 7) % 12;
    LinearProgram lp = random_lp(rng, nvars, ncons, bounded);
    CAPTURE(trial);
    const auto a = dense->solve(lp);
    const auto b = revised->solve(lp);
    REQUIRE(a.status == b.status);
    if (a.optimal()) {
      ++optimal;
      CHECK(std::abs(a.objective - b.objective) <= 1e-6 * (1.0 + std::abs(a.objective)));
      CHECK(b.max_violation <= 1e-7);
    } else {
      ++other;
    }
  }
  CHECK(optimal > 150);
  CHECK(other > 0);
}

TEST_CASE("revised simplex copes with degenerate transportation structure") {
  // Many zero costs and equal supplies make every vertex highly degenerate.
  LinearProgram lp;
  const int n = 12;
  std::vector<int> x;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      x.push_back(lp.add_variable("x_" + std::to_string(i) + "_" + std::to_string(j)));
  for (int i = 0; i < n; ++i) {
    std::vector<Term> row, col;
    for (int j = 0; j < n; ++j) {
      row.push_back({x[i * n + j], 1.0});
      col.push_back({x[j * n + i], 1.0});
    }
    lp.add_constraint("s_" + std::to_string(i), row, Relation::LessEqual, 1.0);
    lp.add_constraint("t_" + std::to_string(i), col, Relation::GreaterEqual, 1.0);
  }
  std::vector<Term> obj;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) obj.push_back({x[i * n + j], static_cast<double>((i * 7 + j * 3) % 5)});
  lp.set_objective(Sense::Minimize, obj);
  const auto a = make_backend("dense")->solve(lp);
  const auto b = make_backend("revised")->solve(lp);
  REQUIRE(a.optimal());
  REQUIRE(b.optimal());
  CHECK(b.objective == doctest::Approx(a.objective).epsilon(1e-9));
}

TEST_CASE("dualize_max: box examples") {
  DenseSimplex dense;
  auto box = uncertainty::Polyhedron::box({0.0, 0.0}, {2.0, 2.0});
  LpSolution sol;
  LinearProgram lp;
  CHECK(dual_min(box, {1.0, -1.0}, dense, &sol, &lp) == doctest::Approx(2.0));
  CHECK(sol.value(lp, "q_bu_0") == doctest::Approx(1.0));
  CHECK(sol.value(lp, "q_bu_1") == doctest::Approx(0.0));
  CHECK(sol.value(lp, "q_bu_1") - sol.value(lp, "q_bl_1") >= -1.0 - 1e-9);
  CHECK(dual_min(box, {0.0, 0.0}, dense) == doctest::Approx(0.0));

  LinearProgram shape;
  const auto block = dualize_max(shape, std::span<const double>(std::vector<double>{1.0, 2.0}),
                                 box, "b");
  CHECK(block.num_variables() == 4);  // M + 2 kappa
  CHECK(block.linking.size() == 2);
  std::vector<double> three{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(dualize_max(shape, std::span<const double>(three), box, "x"), ValidationError);
}

TEST_CASE("dualize_max: strong duality against vertex enumeration") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 1.0);
  const auto revised = make_backend("revised");
  DenseSimplex dense;
  for (int trial = 0; trial < 40; ++trial) {
    const int kappa = 2 + trial % 3;
    const int rows = trial % 3;
    const auto poly = random_polyhedron(rng, kappa, rows);
    std::vector<double> c(kappa);
    for (auto& x : c) x = g(rng);
    std::vector<double> h;
    const auto rowsg = polyhedron_rows(poly, h);
    const double oracle = testing::max_by_vertex_enumeration(rowsg, h, c);
    const double primal = primal_max(poly, c, dense);
    const double dual = dual_min(poly, c, *revised);
    CAPTURE(trial);
    CHECK(std::abs(oracle - primal) <= 1e-6 * (1.0 + std::abs(oracle)));
    CHECK(std::abs(oracle - dual) <= 1e-6 * (1.0 + std::abs(oracle)));
  }
}

TEST_CASE("dualize_max: weak duality at feasible dual points") {
  // Any feasible dual assignment bounds c.d from above for every contained d.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int kappa = 3;
    const auto poly = random_polyhedron(rng, kappa, 2);
    std::vector<double> c(kappa);
    for (auto& x : c) x = g(rng);
    // A feasible dual point: alpha random, then beta_up/lo cover the rest.
    std::vector<double> alpha(poly.num_rows());
    for (auto& a : alpha) a = u(rng);
    double bound = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) bound += poly.b[i] * alpha[i];
    for (int l = 0; l < kappa; ++l) {
      double need = c[l];
      for (std::size_t i = 0; i < alpha.size(); ++i) need -= poly.v(i, l) * alpha[i];
      const double shared = u(rng);
      const double lo = std::max(-need, 0.0) + shared;
      const double up = std::max(need, 0.0) + shared + u(rng);
      bound += poly.upper[l] * up - poly.lower[l] * lo;
    }
    for (int s = 0; s < 200; ++s) {
      std::vector<double> d(kappa);
      for (int l = 0; l < kappa; ++l) d[l] = poly.lower[l] + u(rng) * (poly.upper[l] - poly.lower[l]);
      if (!uncertainty::contains(poly, d)) continue;
      CHECK(dot(c, d) <= bound + 1e-9);
    }
  }
}

TEST_CASE("LP format export") {
  LinearProgram lp;
  const int x = lp.add_variable("x", 0.0, kInf);
  const int y = lp.add_variable("y", -kInf, kInf);
  const int z = lp.add_variable("z", 1.0, 4.0);
  const int w = lp.add_variable("w", -kInf, 3.0);
  lp.add_constraint("c1", {{x, 2.0}, {y, -1.0}}, Relation::GreaterEqual, 1.5);
  lp.add_constraint("c2", {{y, 1.0}, {z, 1.0}, {w, 1.0}}, Relation::Equal, 2.0);
  lp.set_objective(Sense::Minimize, {{x, 1.0}, {z, -0.5}});
  const std::string expected =
      "\\ exported by robnet\n"
      "Minimize\n"
      " obj: x - 0.5 z\n"
      "Subject To\n"
      " c1: 2 x - y >= 1.5\n"
      " c2: y + z + w = 2\n"
      "Bounds\n"
      " y free\n"
      " 1 <= z <= 4\n"
      " -inf <= w <= 3\n"
      "End\n";
  CHECK(to_lp_format(lp) == expected);

  LinearProgram bad;
  bad.add_variable("x[1]");
  CHECK_THROWS_AS(to_lp_format(bad), ValidationError);
  CHECK(is_lp_identifier("Phi_1_2_3"));
  CHECK_FALSE(is_lp_identifier("3x"));
}

TEST_CASE("external backend agrees with the bundled simplex when highspy is available") {
  if (std::system("python3 -c 'import highspy' > /dev/null 2>&1") != 0) {
    MESSAGE("highspy not installed; external backend cross-check skipped");
    return;
  }
  const std::string cmd = std::string("python3 ") + ROBNET_SOURCE_DIR + "/tools/highs_lp_solve.py";
  ExternalSolver external(cmd);
  RevisedSimplex revised;
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    LinearProgram lp = random_lp(rng, 3 + trial % 6, 2 + trial % 7, true);
    const auto a = external.solve(lp);
    const auto b = revised.solve(lp);
    REQUIRE(a.status == b.status);
    if (a.optimal())
      CHECK(std::abs(a.objective - b.objective) <= 1e-6 * (1.0 + std::abs(a.objective)));
  }
}
