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

#include "robnet/lp/dense_simplex.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "robnet/error.hpp"

namespace robnet::lp {
namespace {

constexpr double kPivotEps = 1e-9;
constexpr double kCostEps = 1e-9;

// How an original variable is recovered from the nonnegative standard-form
// columns: x = offset + sign * col_pos - col_neg.
struct VarMap {
  double offset = 0.0;
  double sign = 1.0;
  int col_pos = -1;
  int col_neg = -1;  // only for free variables
};

struct Row {
  std::vector<std::pair<int, double>> coefs;
  Relation relation;
  double rhs;
};

class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), a_((rows + 1) * (cols + 1), 0.0) {}

  double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * (cols_ + 1) + j]; }
  double& rhs(int i) { return at(i, cols_); }
  // Row `rows_` is the reduced-cost row; its rhs entry holds -objective.
  double& cost(int j) { return at(rows_, j); }

  void pivot(int r, int q) {
    const double p = at(r, q);
    double* prow = &at(r, 0);
    for (int j = 0; j <= cols_; ++j) prow[j] /= p;
    prow[q] = 1.0;
    for (int i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      double* row = &at(i, 0);
      const double f = row[q];
      if (f == 0.0) continue;
      for (int j = 0; j <= cols_; ++j) row[j] -= f * prow[j];
      row[q] = 0.0;
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_;
  int cols_;
  std::vector<double> a_;
};

enum class PhaseResult { Optimal, Unbounded };

// Bland's rule: lowest-index improving column enters; among tied ratios the
// row whose basic column has the lowest index leaves.
PhaseResult run_bland(Tableau& t, std::vector<int>& basis, int allowed_cols, long& iterations,
                      long max_iterations) {
  for (;;) {
    int q = -1;
    for (int j = 0; j < allowed_cols; ++j) {
      if (t.cost(j) < -kCostEps) {
        q = j;
        break;
      }
    }
    if (q < 0) return PhaseResult::Optimal;
    int r = -1;
    double best = 0.0;
    for (int i = 0; i < t.rows(); ++i) {
      const double a = t.at(i, q);
      if (a <= kPivotEps) continue;
      const double ratio = t.rhs(i) / a;
      if (r < 0 || ratio < best - 1e-12 ||
          (ratio <= best + 1e-12 && basis[i] < basis[r])) {
        r = i;
        best = ratio;
      }
    }
    if (r < 0) return PhaseResult::Unbounded;
    t.pivot(r, q);
    basis[r] = q;
    if (++iterations > max_iterations)
      throw NumericalError("dense simplex: iteration limit reached");
  }
}

}  // namespace

LpSolution DenseSimplex::solve(const LinearProgram& lp) const {
  const auto start = std::chrono::steady_clock::now();
  lp.validate();

  const int n = lp.num_variables();
  const auto& vars = lp.variables();
  std::vector<VarMap> map(n);
  std::vector<double> col_cost;
  std::vector<Row> rows;
  const double sense = lp.sense() == Sense::Minimize ? 1.0 : -1.0;
  const std::vector<double> c = lp.objective_coefficients();

  int ncols = 0;
  for (int j = 0; j < n; ++j) {
    const auto& v = vars[j];
    VarMap& m = map[j];
    if (std::isfinite(v.lower)) {
      m.offset = v.lower;
      m.col_pos = ncols++;
      col_cost.push_back(sense * c[j]);
      if (std::isfinite(v.upper))
        rows.push_back({{{m.col_pos, 1.0}}, Relation::LessEqual, v.upper - v.lower});
    } else if (std::isfinite(v.upper)) {
      m.offset = v.upper;
      m.sign = -1.0;
      m.col_pos = ncols++;
      col_cost.push_back(-sense * c[j]);
    } else {
      m.col_pos = ncols++;
      m.col_neg = ncols++;
      col_cost.push_back(sense * c[j]);
      col_cost.push_back(-sense * c[j]);
    }
  }
  for (const auto& con : lp.constraints()) {
    Row row{{}, con.relation, con.rhs};
    for (const auto& t : con.terms) {
      const VarMap& m = map[t.var];
      row.rhs -= t.coef * m.offset;
      row.coefs.emplace_back(m.col_pos, m.sign * t.coef);
      if (m.col_neg >= 0) row.coefs.emplace_back(m.col_neg, -t.coef);
    }
    rows.push_back(std::move(row));
  }
  for (auto& row : rows) {
    if (row.rhs < 0.0) {
      row.rhs = -row.rhs;
      for (auto& [j, a] : row.coefs) a = -a;
      if (row.relation == Relation::LessEqual) row.relation = Relation::GreaterEqual;
      else if (row.relation == Relation::GreaterEqual) row.relation = Relation::LessEqual;
    }
  }

  const int m = static_cast<int>(rows.size());
  int nslack = 0, nart = 0;
  for (const auto& row : rows) {
    if (row.relation != Relation::Equal) ++nslack;
    if (row.relation != Relation::LessEqual) ++nart;
  }
  const int first_slack = ncols;
  const int first_art = ncols + nslack;
  const int total = first_art + nart;

  Tableau t(m, total);
  std::vector<int> basis(m, -1);
  int slack = first_slack, art = first_art;
  for (int i = 0; i < m; ++i) {
    for (const auto& [j, a] : rows[i].coefs) t.at(i, j) += a;
    t.rhs(i) = rows[i].rhs;
    switch (rows[i].relation) {
      case Relation::LessEqual:
        t.at(i, slack) = 1.0;
        basis[i] = slack++;
        break;
      case Relation::GreaterEqual:
        t.at(i, slack++) = -1.0;
        t.at(i, art) = 1.0;
        basis[i] = art++;
        break;
      case Relation::Equal:
        t.at(i, art) = 1.0;
        basis[i] = art++;
        break;
    }
  }

  const long max_iter = options_.max_iterations > 0 ? options_.max_iterations : 1'000'000;
  long iterations = 0;
  LpSolution sol;
  sol.backend = std::string(name());

  double rhs_scale = 1.0;
  for (int i = 0; i < m; ++i) rhs_scale = std::max(rhs_scale, t.rhs(i));

  if (nart > 0) {
    for (int i = 0; i < m; ++i) {
      if (basis[i] < first_art) continue;
      for (int j = 0; j <= total; ++j) {
        if (j >= first_art && j < total) continue;
        t.cost(j) -= t.at(i, j);
      }
    }
    run_bland(t, basis, total, iterations, max_iter);
    if (-t.cost(total) > options_.feasibility_tol * rhs_scale) {
      sol.status = Status::Infeasible;
      sol.iterations = iterations;
      sol.solve_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return sol;
    }
    // Pivot zero-valued artificials out where possible; rows where no
    // structural entry remains are redundant and keep their artificial.
    for (int i = 0; i < m; ++i) {
      if (basis[i] < first_art) continue;
      for (int j = 0; j < first_art; ++j) {
        if (std::abs(t.at(i, j)) > kPivotEps) {
          t.pivot(i, j);
          basis[i] = j;
          break;
        }
      }
    }
  }

  // Phase 2 reduced costs.
  for (int j = 0; j <= total; ++j) t.cost(j) = 0.0;
  for (int j = 0; j < ncols; ++j) t.cost(j) = col_cost[j];
  for (int i = 0; i < m; ++i) {
    const int b = basis[i];
    const double cb = b < ncols ? col_cost[b] : 0.0;
    if (cb == 0.0) continue;
    for (int j = 0; j <= total; ++j) t.cost(j) -= cb * t.at(i, j);
  }
  // Artificial columns may not re-enter.
  const PhaseResult result = run_bland(t, basis, first_art, iterations, max_iter);
  sol.iterations = iterations;
  if (result == PhaseResult::Unbounded) {
    sol.status = Status::Unbounded;
    sol.solve_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sol;
  }

  std::vector<double> colval(total, 0.0);
  for (int i = 0; i < m; ++i) colval[basis[i]] = t.rhs(i);
  sol.values.resize(n);
  for (int j = 0; j < n; ++j) {
    const VarMap& mp = map[j];
    double x = mp.offset + mp.sign * colval[mp.col_pos];
    if (mp.col_neg >= 0) x -= colval[mp.col_neg];
    sol.values[j] = x;
  }
  sol.status = Status::Optimal;
  sol.objective = lp.evaluate_objective(sol.values);
  sol.max_violation = lp.max_violation(sol.values);
  if (sol.max_violation > options_.feasibility_tol * rhs_scale)
    throw NumericalError("dense simplex: solution violates constraints by " +
                         std::to_string(sol.max_violation));
  sol.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sol;
}

}  // namespace robnet::lp
