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

#include "robnet/lp/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "robnet/error.hpp"

namespace robnet::lp {

LinearExpr& LinearExpr::operator+=(const LinearExpr& other) {
  constant += other.constant;
  terms.insert(terms.end(), other.terms.begin(), other.terms.end());
  return *this;
}

LinearExpr& LinearExpr::operator*=(double factor) {
  constant *= factor;
  for (auto& t : terms) t.coef *= factor;
  return *this;
}

std::vector<Term> canonical_terms(std::vector<Term> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (!out.empty() && out.back().var == t.var) {
      out.back().coef += t.coef;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coef == 0.0; });
  return out;
}

int LinearProgram::add_variable(std::string name, double lower, double upper) {
  const int id = num_variables();
  auto [it, inserted] = index_.emplace(name, id);
  if (!inserted) throw ValidationError("duplicate LP variable name '" + name + "'");
  variables_.push_back({std::move(name), lower, upper});
  return id;
}

int LinearProgram::add_constraint(std::string name, std::vector<Term> terms,
                                  Relation relation, double rhs) {
  constraints_.push_back({std::move(name), canonical_terms(std::move(terms)), relation, rhs});
  return num_constraints() - 1;
}

int LinearProgram::add_constraint(std::string name, const LinearExpr& lhs, Relation relation,
                                  double rhs) {
  return add_constraint(std::move(name), lhs.terms, relation, rhs - lhs.constant);
}

void LinearProgram::set_objective(Sense sense, std::vector<Term> terms, double constant) {
  sense_ = sense;
  objective_ = canonical_terms(std::move(terms));
  objective_constant_ = constant;
}

void LinearProgram::set_objective_coefficient(int var, double coef) {
  std::vector<Term> terms = std::move(objective_);
  std::erase_if(terms, [var](const Term& t) { return t.var == var; });
  terms.push_back({var, coef});
  objective_ = canonical_terms(std::move(terms));
}

void LinearProgram::set_rhs(int constraint, double rhs) { constraints_.at(constraint).rhs = rhs; }

std::size_t LinearProgram::num_nonzeros() const {
  std::size_t nnz = 0;
  for (const auto& c : constraints_) nnz += c.terms.size();
  return nnz;
}

std::vector<double> LinearProgram::objective_coefficients() const {
  std::vector<double> c(variables_.size(), 0.0);
  for (const auto& t : objective_) c.at(t.var) += t.coef;
  return c;
}

int LinearProgram::find_variable(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

void LinearProgram::validate() const {
  const int n = num_variables();
  auto check_terms = [n](const std::vector<Term>& terms, const std::string& where) {
    for (const auto& t : terms) {
      if (t.var < 0 || t.var >= n)
        throw ValidationError(where + " references undeclared variable #" + std::to_string(t.var));
      if (!std::isfinite(t.coef)) throw ValidationError(where + " has a non-finite coefficient");
    }
  };
  std::unordered_set<std::string_view> names;
  for (const auto& v : variables_) {
    if (!names.insert(v.name).second)
      throw ValidationError("duplicate LP variable name '" + v.name + "'");
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper ||
        v.lower == kInf || v.upper == -kInf)
      throw ValidationError("variable '" + v.name + "' has invalid bounds");
  }
  for (const auto& c : constraints_) {
    check_terms(c.terms, "constraint '" + c.name + "'");
    if (!std::isfinite(c.rhs))
      throw ValidationError("constraint '" + c.name + "' has a non-finite right-hand side");
  }
  check_terms(objective_, "objective");
  if (!std::isfinite(objective_constant_))
    throw ValidationError("objective constant is not finite");
}

double LinearProgram::evaluate_objective(std::span<const double> values) const {
  double s = objective_constant_;
  for (const auto& t : objective_) s += t.coef * values[t.var];
  return s;
}

double LinearProgram::max_violation(std::span<const double> values) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    worst = std::max(worst, variables_[j].lower - values[j]);
    worst = std::max(worst, values[j] - variables_[j].upper);
  }
  for (const auto& c : constraints_) {
    double lhs = 0.0;
    for (const auto& t : c.terms) lhs += t.coef * values[t.var];
    switch (c.relation) {
      case Relation::LessEqual: worst = std::max(worst, lhs - c.rhs); break;
      case Relation::GreaterEqual: worst = std::max(worst, c.rhs - lhs); break;
      case Relation::Equal: worst = std::max(worst, std::abs(lhs - c.rhs)); break;
    }
  }
  return worst;
}

}  // namespace robnet::lp
