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

#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace robnet::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Relation { LessEqual, GreaterEqual, Equal };
enum class Sense { Minimize, Maximize };

struct Term {
  int var = 0;
  double coef = 0.0;
  friend bool operator==(const Term&, const Term&) = default;
};

// Affine function of LP variables. Used wherever a coefficient of an inner
// problem is itself a decision expression (dualization of robust
// constraints).
struct LinearExpr {
  double constant = 0.0;
  std::vector<Term> terms;

  LinearExpr() = default;
  explicit LinearExpr(double c) : constant(c) {}

  LinearExpr& add(int var, double coef) {
    terms.push_back({var, coef});
    return *this;
  }
  LinearExpr& operator+=(const LinearExpr& other);
  LinearExpr& operator*=(double factor);
};

// Sorts by variable, merges duplicates and drops exact zeros.
std::vector<Term> canonical_terms(std::vector<Term> terms);

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;  // canonical
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

// Row-oriented LP model. Variables and constraints are referenced by dense
// index; names are unique and kept for export and diagnostics.
class LinearProgram {
 public:
  int add_variable(std::string name, double lower = 0.0, double upper = kInf);
  int add_constraint(std::string name, std::vector<Term> terms, Relation relation,
                     double rhs);
  // Moves the expression constant to the right-hand side.
  int add_constraint(std::string name, const LinearExpr& lhs, Relation relation,
                     double rhs);

  void set_objective(Sense sense, std::vector<Term> terms, double constant = 0.0);
  void set_objective_coefficient(int var, double coef);
  void set_rhs(int constraint, double rhs);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  std::size_t num_nonzeros() const;

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const Variable& variable(int i) const { return variables_.at(i); }
  const Constraint& constraint(int i) const { return constraints_.at(i); }

  Sense sense() const { return sense_; }
  // Dense objective coefficients, one per variable.
  std::vector<double> objective_coefficients() const;
  const std::vector<Term>& objective_terms() const { return objective_; }
  double objective_constant() const { return objective_constant_; }

  // -1 when absent.
  int find_variable(std::string_view name) const;

  // Throws ValidationError on duplicate names, dangling references, crossed
  // bounds or non-finite coefficients.
  void validate() const;

  double evaluate_objective(std::span<const double> values) const;
  // Largest absolute violation of any bound or constraint at `values`.
  double max_violation(std::span<const double> values) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<Term> objective_;
  double objective_constant_ = 0.0;
  Sense sense_ = Sense::Minimize;
  std::unordered_map<std::string, int> index_;
};

}  // namespace robnet::lp
