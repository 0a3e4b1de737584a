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

#include "robnet/lp/revised_simplex.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>

#include "robnet/error.hpp"

namespace robnet::lp {
namespace {

constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-8;
constexpr double kDropTol = 1e-14;
constexpr int kRefactorInterval = 100;
constexpr double kPerturbBase = 5e-7;

// Computational form: min cost^T z  s.t.  [A  -I] z = 0,  lower <= z <= upper.
// Columns 0..n-1 are the (scaled) structurals, n..n+m-1 the row logicals.
struct Problem {
  int m = 0;
  int n = 0;
  std::vector<int> col_start, col_row;
  std::vector<double> col_val;
  std::vector<int> row_start, row_col;
  std::vector<double> row_val;
  std::vector<double> cost, lower, upper;
  std::vector<double> col_scale, row_scale;
  double sense = 1.0;
};

double pow2_round(double s) { return std::exp2(std::round(std::log2(s))); }

Problem build_problem(const LinearProgram& lp) {
  Problem p;
  p.m = lp.num_constraints();
  p.n = lp.num_variables();
  const int m = p.m, n = p.n;
  p.sense = lp.sense() == Sense::Minimize ? 1.0 : -1.0;

  // Geometric-mean scaling in powers of two, a few alternating passes.
  p.row_scale.assign(m, 1.0);
  p.col_scale.assign(n, 1.0);
  const auto& cons = lp.constraints();
  for (int pass = 0; pass < 4; ++pass) {
    std::vector<double> cmin(n, kInf), cmax(n, 0.0);
    for (int i = 0; i < m; ++i) {
      double rmin = kInf, rmax = 0.0;
      for (const auto& t : cons[i].terms) {
        const double a = std::abs(t.coef) * p.col_scale[t.var];
        rmin = std::min(rmin, a);
        rmax = std::max(rmax, a);
      }
      if (rmax > 0.0) p.row_scale[i] = pow2_round(1.0 / std::sqrt(rmin * rmax));
      for (const auto& t : cons[i].terms) {
        const double a = std::abs(t.coef) * p.row_scale[i];
        cmin[t.var] = std::min(cmin[t.var], a);
        cmax[t.var] = std::max(cmax[t.var], a);
      }
    }
    for (int j = 0; j < n; ++j)
      if (cmax[j] > 0.0) p.col_scale[j] = pow2_round(1.0 / std::sqrt(cmin[j] * cmax[j]));
  }

  std::vector<int> count(n, 0);
  for (const auto& c : cons)
    for (const auto& t : c.terms) ++count[t.var];
  p.col_start.assign(n + 1, 0);
  for (int j = 0; j < n; ++j) p.col_start[j + 1] = p.col_start[j] + count[j];
  const int nnz = p.col_start[n];
  p.col_row.resize(nnz);
  p.col_val.resize(nnz);
  p.row_start.assign(m + 1, 0);
  p.row_col.resize(nnz);
  p.row_val.resize(nnz);
  std::vector<int> fill(p.col_start.begin(), p.col_start.end() - 1);
  int k = 0;
  for (int i = 0; i < m; ++i) {
    for (const auto& t : cons[i].terms) {
      const double a = t.coef * p.row_scale[i] * p.col_scale[t.var];
      p.row_col[k] = t.var;
      p.row_val[k] = a;
      ++k;
      p.col_row[fill[t.var]] = i;
      p.col_val[fill[t.var]] = a;
      ++fill[t.var];
    }
    p.row_start[i + 1] = k;
  }

  p.cost.assign(n + m, 0.0);
  p.lower.assign(n + m, 0.0);
  p.upper.assign(n + m, 0.0);
  for (const auto& t : lp.objective_terms()) p.cost[t.var] += p.sense * t.coef * p.col_scale[t.var];
  for (int j = 0; j < n; ++j) {
    const auto& v = lp.variable(j);
    p.lower[j] = v.lower / p.col_scale[j];
    p.upper[j] = v.upper / p.col_scale[j];
  }
  for (int i = 0; i < m; ++i) {
    const double rhs = cons[i].rhs * p.row_scale[i];
    switch (cons[i].relation) {
      case Relation::LessEqual: p.lower[n + i] = -kInf; p.upper[n + i] = rhs; break;
      case Relation::GreaterEqual: p.lower[n + i] = rhs; p.upper[n + i] = kInf; break;
      case Relation::Equal: p.lower[n + i] = rhs; p.upper[n + i] = rhs; break;
    }
  }
  return p;
}

// LU of the basis matrix plus a product-form eta file.
class BasisFactor {
 public:
  explicit BasisFactor(int m) : m_(m), work_(m) {}

  bool factorize(const Problem& p, const std::vector<int>& basis) {
    etas_.clear();
    if (m_ == 0) return true;
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(m_ * 3);
    for (int r = 0; r < m_; ++r) {
      const int j = basis[r];
      if (j >= p.n) {
        trips.emplace_back(j - p.n, r, -1.0);
      } else {
        for (int k = p.col_start[j]; k < p.col_start[j + 1]; ++k)
          trips.emplace_back(p.col_row[k], r, p.col_val[k]);
      }
    }
    Eigen::SparseMatrix<double> b(m_, m_);
    b.setFromTriplets(trips.begin(), trips.end());
    b.makeCompressed();
    lu_.analyzePattern(b);
    lu_.factorize(b);
    if (lu_.info() != Eigen::Success) return false;
    // Residual probe catches numerically singular factors that SparseLU
    // accepts.
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(m_);
    Eigen::VectorXd rhs = b * ones;
    Eigen::VectorXd x = lu_.solve(rhs);
    if (!x.allFinite()) return false;
    return (x - ones).lpNorm<Eigen::Infinity>() <= 1e-6;
  }

  void ftran(std::vector<double>& v) {
    if (m_ == 0) return;
    Eigen::Map<Eigen::VectorXd> vm(v.data(), m_);
    work_ = lu_.solve(vm);
    vm = work_;
    for (const auto& eta : etas_) {
      const double yr = v[eta.row] / eta.pivot;
      v[eta.row] = yr;
      if (yr == 0.0) continue;
      for (std::size_t k = 0; k < eta.index.size(); ++k) v[eta.index[k]] -= eta.value[k] * yr;
    }
  }

  void btran(std::vector<double>& v) {
    if (m_ == 0) return;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = v[it->row];
      for (std::size_t k = 0; k < it->index.size(); ++k) s -= it->value[k] * v[it->index[k]];
      v[it->row] = s / it->pivot;
    }
    Eigen::Map<Eigen::VectorXd> vm(v.data(), m_);
    work_ = lu_.transpose().solve(vm);
    vm = work_;
  }

  // Records B_new = B_old * E where column `row` of E is `alpha` (= B_old^{-1} a_q).
  void update(int row, const std::vector<double>& alpha) {
    Eta eta;
    eta.row = row;
    eta.pivot = alpha[row];
    for (int i = 0; i < m_; ++i) {
      if (i != row && std::abs(alpha[i]) > kDropTol) {
        eta.index.push_back(i);
        eta.value.push_back(alpha[i]);
      }
    }
    etas_.push_back(std::move(eta));
  }

  int updates() const { return static_cast<int>(etas_.size()); }

 private:
  struct Eta {
    int row = 0;
    double pivot = 1.0;
    std::vector<int> index;
    std::vector<double> value;
  };
  int m_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
  Eigen::VectorXd work_;
};

enum class State : std::uint8_t { Basic, AtLower, AtUpper, AtZero };

enum class LoopResult { Optimal, Infeasible, Unbounded };

class Engine {
 public:
  Engine(const Problem& p, const SolverOptions& options)
      : p_(p),
        m_(p.m),
        total_(p.n + p.m),
        factor_(p.m),
        cost_(p.cost),
        lower_(p.lower),
        upper_(p.upper),
        basis_(p.m),
        state_(total_, State::AtLower),
        x_(total_, 0.0),
        d_(total_, 0.0),
        weight_(p.m, 1.0),
        rho_(p.m, 0.0),
        col_(p.m, 0.0),
        tau_(p.m, 0.0),
        row_alpha_(total_, 0.0),
        in_row_(total_, 0) {
    max_iterations_ = options.max_iterations > 0
                          ? options.max_iterations
                          : 20L * (total_ + m_) + 100'000L;
  }

  Status run() {
    for (int i = 0; i < m_; ++i) {
      basis_[i] = p_.n + i;
      state_[p_.n + i] = State::Basic;
    }
    if (!crash_free_columns()) {
      for (int j = 0; j < total_; ++j) state_[j] = State::AtLower;
      for (int i = 0; i < m_; ++i) {
        basis_[i] = p_.n + i;
        state_[p_.n + i] = State::Basic;
      }
    }
    refactor_or_throw();
    compute_duals();
    for (int j = 0; j < total_; ++j)
      if (state_[j] != State::Basic) place_nonbasic(j);

    if (!dual_feasible()) {
      if (!dual_phase1()) return resolve_dual_infeasible();
    }

    perturb_costs();
    compute_primal();
    LoopResult r = dual_loop();
    if (r == LoopResult::Infeasible) return Status::Infeasible;

    // Remove perturbation and shifts, then clean up with primal simplex.
    for (int round = 0; round < 4; ++round) {
      cost_ = p_.cost;
      refactor_or_throw();
      compute_primal();
      compute_duals();
      if (primal_infeasibility() > kPrimalTol) {
        repair_dual_feasibility();
        r = dual_loop();
        if (r == LoopResult::Infeasible) return Status::Infeasible;
        continue;
      }
      if (max_dual_infeasibility() <= kDualTol) return Status::Optimal;
      r = primal_loop();
      if (r == LoopResult::Unbounded) return Status::Unbounded;
    }
    cost_ = p_.cost;
    refactor_or_throw();
    compute_primal();
    compute_duals();
    if (primal_infeasibility() <= 1e3 * kPrimalTol && max_dual_infeasibility() <= 1e2 * kDualTol)
      return Status::Optimal;
    throw NumericalError("revised simplex: could not reach a primal and dual feasible basis");
  }

  const std::vector<double>& values() const { return x_; }
  long iterations() const { return iterations_; }

 private:
  bool is_free(int j) const { return lower_[j] == -kInf && upper_[j] == kInf; }

  // On a singular factorization, falls back to the last basis that factored
  // and tightens the pivot tolerance. Callers recompute primal and dual values.
  void refactor_or_throw() {
    if (factor_.factorize(p_, basis_)) {
      good_basis_ = basis_;
      good_state_ = state_;
      return;
    }
    if (good_basis_.empty() || ++recoveries_ > 20 ||
        (basis_ == good_basis_ && state_ == good_state_))
      throw NumericalError("revised simplex: singular basis matrix");
    basis_ = good_basis_;
    state_ = good_state_;
    for (int j = 0; j < total_; ++j)
      if (state_[j] != State::Basic) set_nonbasic_value(j);
    std::fill(weight_.begin(), weight_.end(), 1.0);
    pivot_tol_ = std::min(pivot_tol_ * 10.0, 1e-5);
    if (!factor_.factorize(p_, basis_))
      throw NumericalError("revised simplex: singular basis matrix");
  }

  // Swaps free structurals into the slack basis. A column may only take a
  // row that no earlier crashed column touches, so the crashed block is
  // triangular. Returns false if the result still fails to factor.
  bool crash_free_columns() {
    std::vector<int> row_count(m_, 0);
    for (int i = 0; i < m_; ++i) row_count[i] = p_.row_start[i + 1] - p_.row_start[i];
    std::vector<char> blocked(m_, 0);
    bool any = false;
    for (int j = 0; j < p_.n; ++j) {
      if (!is_free(j)) continue;
      double col_max = 0.0;
      for (int k = p_.col_start[j]; k < p_.col_start[j + 1]; ++k)
        col_max = std::max(col_max, std::abs(p_.col_val[k]));
      int best = -1;
      for (int k = p_.col_start[j]; k < p_.col_start[j + 1]; ++k) {
        const int i = p_.col_row[k];
        if (blocked[i] || std::abs(p_.col_val[k]) < 0.1 * col_max) continue;
        if (best < 0 || row_count[i] < row_count[best]) best = i;
      }
      if (best < 0) continue;
      for (int k = p_.col_start[j]; k < p_.col_start[j + 1]; ++k) blocked[p_.col_row[k]] = 1;
      state_[basis_[best]] = State::AtLower;
      basis_[best] = j;
      state_[j] = State::Basic;
      any = true;
    }
    return !any || factor_.factorize(p_, basis_);
  }

  void tick() {
    if (++iterations_ > max_iterations_)
      throw NumericalError("revised simplex: iteration limit reached");
  }

  void place_nonbasic(int j) {
    const bool lo = std::isfinite(lower_[j]);
    const bool up = std::isfinite(upper_[j]);
    if (lo && up) {
      if (lower_[j] == upper_[j]) {
        state_[j] = State::AtLower;
      } else {
        state_[j] = d_[j] >= 0.0 ? State::AtLower : State::AtUpper;
      }
    } else if (lo) {
      state_[j] = State::AtLower;
    } else if (up) {
      state_[j] = State::AtUpper;
    } else {
      state_[j] = State::AtZero;
    }
    set_nonbasic_value(j);
  }

  void set_nonbasic_value(int j) {
    switch (state_[j]) {
      case State::AtLower: x_[j] = lower_[j]; break;
      case State::AtUpper: x_[j] = upper_[j]; break;
      case State::AtZero: x_[j] = 0.0; break;
      case State::Basic: break;
    }
  }

  // Dual infeasibility of nonbasic j given its state (0 if fine).
  double dual_infeasibility(int j) const {
    if (lower_[j] == upper_[j]) return 0.0;
    switch (state_[j]) {
      case State::AtLower: return std::max(0.0, -d_[j]);
      case State::AtUpper: return std::max(0.0, d_[j]);
      case State::AtZero: return std::abs(d_[j]);
      case State::Basic: return 0.0;
    }
    return 0.0;
  }

  bool dual_feasible() const { return max_dual_infeasibility() <= kDualTol; }

  double max_dual_infeasibility() const {
    double worst = 0.0;
    for (int j = 0; j < total_; ++j) worst = std::max(worst, dual_infeasibility(j));
    return worst;
  }

  double primal_infeasibility() const {
    double worst = 0.0;
    for (int i = 0; i < m_; ++i) {
      const int b = basis_[i];
      worst = std::max({worst, lower_[b] - x_[b], x_[b] - upper_[b]});
    }
    return worst;
  }

  void compute_primal() {
    std::fill(col_.begin(), col_.end(), 0.0);
    for (int j = 0; j < total_; ++j) {
      if (state_[j] == State::Basic) continue;
      const double xj = x_[j];
      if (xj == 0.0) continue;
      if (j >= p_.n) {
        col_[j - p_.n] += xj;
      } else {
        for (int k = p_.col_start[j]; k < p_.col_start[j + 1]; ++k)
          col_[p_.col_row[k]] -= p_.col_val[k] * xj;
      }
    }
    factor_.ftran(col_);
    for (int i = 0; i < m_; ++i) x_[basis_[i]] = col_[i];
  }

  void compute_duals() {
    for (int i = 0; i < m_; ++i) rho_[i] = cost_[basis_[i]];
    factor_.btran(rho_);  // rho_ now holds y
    for (int j = 0; j < p_.n; ++j) {
      if (state_[j] == State::Basic) {
        d_[j] = 0.0;
        continue;
      }
      double s = cost_[j];
      for (int k = p_.col_start[j]; k < p_.col_start[j + 1]; ++k)
        s -= p_.col_val[k] * rho_[p_.col_row[k]];
      d_[j] = s;
    }
    for (int i = 0; i < m_; ++i) {
      const int j = p_.n + i;
      d_[j] = state_[j] == State::Basic ? 0.0 : cost_[j] + rho_[i];
    }
  }

  // Flips boxed variables and shifts costs of the others so that every
  // nonbasic reduced cost has the right sign. Returns true if any primal
  // value moved.
  bool repair_dual_feasibility() {
    bool moved = false;
    for (int j = 0; j < total_; ++j) {
      if (state_[j] == State::Basic || dual_infeasibility(j) <= kDualTol) continue;
      const bool boxed = std::isfinite(lower_[j]) && std::isfinite(upper_[j]);
      if (boxed) {
        state_[j] = d_[j] >= 0.0 ? State::AtLower : State::AtUpper;
        set_nonbasic_value(j);
        moved = true;
      } else {
        cost_[j] -= d_[j];
        d_[j] = 0.0;
      }
    }
    if (moved) compute_primal();
    return moved;
  }

  void load_column(int j, std::vector<double>& v) const {
    std::fill(v.begin(), v.end(), 0.0);
    if (j >= p_.n) {
      v[j - p_.n] = -1.0;
    } else {
      for (int k = p_.col_start[j]; k < p_.col_start[j + 1]; ++k) v[p_.col_row[k]] = p_.col_val[k];
    }
  }

  // rho_ = B^{-T} e_r, row_alpha_ = rho_^T [A -I] over nonbasic columns.
  void compute_pivot_row(int r) {
    for (int j : row_nz_) {
      row_alpha_[j] = 0.0;
      in_row_[j] = 0;
    }
    row_nz_.clear();
    std::fill(rho_.begin(), rho_.end(), 0.0);
    rho_[r] = 1.0;
    factor_.btran(rho_);
    for (int i = 0; i < m_; ++i) {
      const double ri = rho_[i];
      if (std::abs(ri) <= kDropTol) continue;
      for (int k = p_.row_start[i]; k < p_.row_start[i + 1]; ++k) {
        const int j = p_.row_col[k];
        if (state_[j] == State::Basic) continue;
        if (!in_row_[j]) {
          in_row_[j] = 1;
          row_nz_.push_back(j);
        }
        row_alpha_[j] += ri * p_.row_val[k];
      }
      const int lj = p_.n + i;
      if (state_[lj] != State::Basic) {
        row_alpha_[lj] = -ri;
        in_row_[lj] = 1;
        row_nz_.push_back(lj);
      }
    }
  }

  void basis_change(int r, int q, State leaving_state) {
    const int leaving = basis_[r];
    state_[leaving] = leaving_state;
    set_nonbasic_value(leaving);
    basis_[r] = q;
    state_[q] = State::Basic;
    d_[q] = 0.0;
    factor_.update(r, col_);
  }

  bool maybe_refactor(bool rebuild_duals) {
    if (factor_.updates() < kRefactorInterval) return false;
    refactor_or_throw();
    compute_primal();
    if (rebuild_duals) {
      compute_duals();
      repair_dual_feasibility();
    }
    return true;
  }

  LoopResult dual_loop() {
    bool retried = false;
    for (;;) {
      maybe_refactor(true);

      // Pricing: dual steepest edge.
      int r = -1;
      double best = 0.0;
      for (int i = 0; i < m_; ++i) {
        const int b = basis_[i];
        double infeas = 0.0;
        if (x_[b] < lower_[b] - kPrimalTol) infeas = lower_[b] - x_[b];
        else if (x_[b] > upper_[b] + kPrimalTol) infeas = x_[b] - upper_[b];
        else continue;
        const double score = infeas * infeas / weight_[i];
        if (score > best) {
          best = score;
          r = i;
        }
      }
      if (r < 0) return LoopResult::Optimal;

      const int leaving = basis_[r];
      const bool to_lower = x_[leaving] < lower_[leaving];
      const double delta = x_[leaving] - (to_lower ? lower_[leaving] : upper_[leaving]);
      const double sgn = to_lower ? -1.0 : 1.0;

      compute_pivot_row(r);

      // Harris two-pass ratio test on the dual step.
      double bound = kInf;
      for (int j : row_nz_) {
        if (lower_[j] == upper_[j]) continue;
        const double a = sgn * row_alpha_[j];
        if (std::abs(a) <= pivot_tol_) continue;
        const State s = state_[j];
        if (s == State::AtLower && a > 0.0) bound = std::min(bound, (d_[j] + kDualTol) / a);
        else if (s == State::AtUpper && a < 0.0) bound = std::min(bound, (d_[j] - kDualTol) / a);
        else if (s == State::AtZero) bound = std::min(bound, (d_[j] + std::copysign(kDualTol, a)) / a);
      }
      int q = -1;
      double best_alpha = 0.0;
      if (bound < kInf) {
        for (int j : row_nz_) {
          if (lower_[j] == upper_[j]) continue;
          const double a = sgn * row_alpha_[j];
          if (std::abs(a) <= pivot_tol_) continue;
          const State s = state_[j];
          const bool eligible = (s == State::AtLower && a > 0.0) ||
                                (s == State::AtUpper && a < 0.0) || s == State::AtZero;
          if (!eligible || d_[j] / a > bound) continue;
          if (std::abs(a) > best_alpha) {
            best_alpha = std::abs(a);
            q = j;
          }
        }
      }
      if (q < 0) {
        if (!retried && factor_.updates() > 0) {
          retried = true;
          refactor_or_throw();
          compute_primal();
          compute_duals();
          repair_dual_feasibility();
          continue;
        }
        return LoopResult::Infeasible;
      }
      retried = false;

      const double alpha_rq = row_alpha_[q];
      if (d_[q] / (sgn * alpha_rq) < 0.0) {
        // Slightly infeasible reduced cost; shift so the dual step is zero.
        cost_[q] -= d_[q];
        d_[q] = 0.0;
      }
      const double theta_d = d_[q] / alpha_rq;

      load_column(q, col_);
      factor_.ftran(col_);
      const double col_rq = col_[r];
      if (std::abs(col_rq - alpha_rq) > 1e-7 * (1.0 + std::abs(col_rq)) ||
          std::abs(col_rq) <= pivot_tol_) {
        if (factor_.updates() == 0)
          throw NumericalError("revised simplex: unstable pivot in dual iteration");
        refactor_or_throw();
        compute_primal();
        compute_duals();
        repair_dual_feasibility();
        continue;
      }

      // Dual update.
      for (int j : row_nz_) {
        if (j != q) d_[j] -= theta_d * row_alpha_[j];
      }
      d_[leaving] = -theta_d;

      // Steepest-edge weights need tau = B^{-1} rho.
      double rho_norm = 0.0;
      for (int i = 0; i < m_; ++i) rho_norm += rho_[i] * rho_[i];
      tau_ = rho_;
      factor_.ftran(tau_);
      for (int i = 0; i < m_; ++i) {
        if (i == r || col_[i] == 0.0) continue;
        const double k = col_[i] / col_rq;
        weight_[i] = std::max(weight_[i] + k * (k * rho_norm - 2.0 * tau_[i]), 1e-8);
      }
      weight_[r] = std::max(rho_norm / (col_rq * col_rq), 1e-8);

      // Primal update.
      const double theta_p = delta / col_rq;
      for (int i = 0; i < m_; ++i) {
        if (col_[i] != 0.0) x_[basis_[i]] -= theta_p * col_[i];
      }
      x_[q] += theta_p;
      basis_change(r, q, to_lower ? State::AtLower : State::AtUpper);
      tick();
    }
  }

  LoopResult primal_loop() {
    int degenerate_run = 0;
    bool bland = false;
    for (;;) {
      maybe_refactor(false);
      if (factor_.updates() == 0) compute_duals();

      int q = -1;
      double best = kDualTol;
      for (int j = 0; j < total_; ++j) {
        if (state_[j] == State::Basic || lower_[j] == upper_[j]) continue;
        const double inf = dual_infeasibility(j);
        if (inf <= kDualTol) continue;
        if (bland) {
          q = j;
          break;
        }
        if (inf > best) {
          best = inf;
          q = j;
        }
      }
      if (q < 0) return LoopResult::Optimal;
      const double dir = d_[q] < 0.0 ? 1.0 : -1.0;

      load_column(q, col_);
      factor_.ftran(col_);

      double step = upper_[q] - lower_[q];  // bound flip distance
      int r = -1;
      double best_pivot = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double a = dir * col_[i];
        if (std::abs(a) <= pivot_tol_) continue;
        const int b = basis_[i];
        double t;
        if (a > 0.0) {
          if (lower_[b] == -kInf) continue;
          t = std::max(0.0, (x_[b] - lower_[b]) / a);
        } else {
          if (upper_[b] == kInf) continue;
          t = std::max(0.0, (upper_[b] - x_[b]) / -a);
        }
        bool take = t < step - 1e-12;
        if (!take && r >= 0 && t <= step + 1e-12)
          take = bland ? basis_[i] < basis_[r] : std::abs(a) > best_pivot;
        if (take) {
          step = std::min(step, t);
          r = i;
          best_pivot = std::abs(a);
        }
      }
      if (step == kInf) return LoopResult::Unbounded;

      if (r >= 0) {
        compute_pivot_row(r);
        if (std::abs(row_alpha_[q] - col_[r]) > 1e-7 * (1.0 + std::abs(col_[r]))) {
          if (factor_.updates() == 0)
            throw NumericalError("revised simplex: unstable pivot in primal iteration");
          refactor_or_throw();
          compute_primal();
          compute_duals();
          continue;
        }
      }

      degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;
      if (degenerate_run > 50) bland = true;

      const double theta = dir * step;
      for (int i = 0; i < m_; ++i) {
        if (col_[i] != 0.0) x_[basis_[i]] -= theta * col_[i];
      }
      if (r < 0) {
        // Entering variable runs to its opposite bound; basis unchanged.
        state_[q] = state_[q] == State::AtLower ? State::AtUpper : State::AtLower;
        set_nonbasic_value(q);
        tick();
        continue;
      }
      x_[q] += theta;

      const int leaving = basis_[r];
      const State leaving_state = dir * col_[r] > 0.0 ? State::AtLower : State::AtUpper;
      const double theta_d = d_[q] / row_alpha_[q];
      for (int j : row_nz_) {
        if (j != q) d_[j] -= theta_d * row_alpha_[j];
      }
      d_[leaving] = -theta_d;
      basis_change(r, q, leaving_state);
      // Snap the leaving variable exactly onto its bound.
      set_nonbasic_value(leaving);
      tick();
    }
  }

  // Solves the boxed auxiliary problem. Returns true if the final basis is
  // dual feasible for the original bounds.
  bool dual_phase1() {
    const std::vector<double> orig_lower = lower_, orig_upper = upper_;
    for (int j = 0; j < total_; ++j) {
      const bool lo = std::isfinite(orig_lower[j]);
      const bool up = std::isfinite(orig_upper[j]);
      if (lo && up) { lower_[j] = 0.0; upper_[j] = 0.0; }
      else if (lo) { lower_[j] = 0.0; upper_[j] = 1.0; }
      else if (up) { lower_[j] = -1.0; upper_[j] = 0.0; }
      else { lower_[j] = -1.0; upper_[j] = 1.0; }
    }
    for (int j = 0; j < total_; ++j)
      if (state_[j] != State::Basic) place_nonbasic(j);
    compute_primal();
    if (dual_loop() != LoopResult::Optimal)
      throw NumericalError("revised simplex: auxiliary dual phase failed");

    refactor_or_throw();
    compute_duals();
    double infeas = 0.0;
    lower_ = orig_lower;
    upper_ = orig_upper;
    for (int j = 0; j < total_; ++j) {
      if (state_[j] == State::Basic) continue;
      place_nonbasic(j);
      infeas = std::max(infeas, dual_infeasibility(j));
    }
    if (infeas > 1e-7) return false;
    repair_dual_feasibility();
    return true;
  }

  // The problem has no dual feasible basis: it is unbounded if a feasible
  // point exists, otherwise infeasible.
  Status resolve_dual_infeasible() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    refactor_or_throw();
    compute_duals();
    for (int j = 0; j < total_; ++j)
      if (state_[j] != State::Basic) place_nonbasic(j);
    compute_primal();
    return dual_loop() == LoopResult::Infeasible ? Status::Infeasible : Status::Unbounded;
  }

  void perturb_costs() {
    std::mt19937_64 rng(0x5eedULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int j = 0; j < p_.n; ++j) {
      const double xi = kPerturbBase * (1.0 + std::abs(cost_[j])) * (1.0 + unit(rng));
      if (state_[j] == State::Basic || lower_[j] == upper_[j]) continue;
      if (state_[j] == State::AtLower) {
        cost_[j] += xi;
        d_[j] += xi;
      } else if (state_[j] == State::AtUpper) {
        cost_[j] -= xi;
        d_[j] -= xi;
      }
    }
  }

  const Problem& p_;
  int m_;
  int total_;
  BasisFactor factor_;
  std::vector<double> cost_, lower_, upper_;
  std::vector<int> basis_;
  std::vector<State> state_;
  std::vector<double> x_, d_, weight_;
  std::vector<double> rho_, col_, tau_, row_alpha_;
  std::vector<int> row_nz_;
  std::vector<char> in_row_;
  std::vector<int> good_basis_;
  std::vector<State> good_state_;
  double pivot_tol_ = kPivotTol;
  int recoveries_ = 0;
  long iterations_ = 0;
  long max_iterations_ = 0;
};

}  // namespace

LpSolution RevisedSimplex::solve(const LinearProgram& lp) const {
  const auto start = std::chrono::steady_clock::now();
  lp.validate();
  const Problem problem = build_problem(lp);

  LpSolution sol;
  sol.backend = std::string(name());
  Engine engine(problem, options_);
  sol.status = engine.run();
  sol.iterations = engine.iterations();
  if (sol.status == Status::Optimal) {
    const auto& z = engine.values();
    sol.values.resize(problem.n);
    for (int j = 0; j < problem.n; ++j) {
      // Snap onto the original bounds; the scaled value can sit a rounding
      // error away from them.
      double v = z[j] * problem.col_scale[j];
      const auto& var = lp.variable(j);
      v = std::clamp(v, var.lower, var.upper);
      sol.values[j] = v;
    }
    sol.objective = lp.evaluate_objective(sol.values);
    sol.max_violation = lp.max_violation(sol.values);
    double scale = 1.0;
    for (const auto& c : lp.constraints()) scale = std::max(scale, std::abs(c.rhs));
    if (sol.max_violation > options_.feasibility_tol * scale)
      throw NumericalError("revised simplex: solution violates constraints by " +
                           std::to_string(sol.max_violation));
  }
  sol.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sol;
}

}  // namespace robnet::lp
