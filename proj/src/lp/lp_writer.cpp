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

#include "robnet/lp/lp_writer.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

#include "robnet/error.hpp"
#include "robnet/format.hpp"

namespace robnet::lp {
namespace {

constexpr std::size_t kMaxLine = 200;

void check_name(const std::string& name) {
  if (!is_lp_identifier(name))
    throw ValidationError("'" + name + "' is not a valid LP-format identifier");
}

// Emits " + 2 x_1 - x_2 ..." wrapping long rows onto continuation lines.
void write_terms(std::ostream& out, const LinearProgram& lp, const std::vector<Term>& terms,
                 std::size_t line_len) {
  if (terms.empty()) {
    out << " 0 " << lp.variable(0).name;
    return;
  }
  bool first = true;
  for (const auto& t : terms) {
    std::string piece;
    const double mag = std::abs(t.coef);
    piece += t.coef < 0 ? " - " : (first ? " " : " + ");
    if (mag != 1.0) {
      piece += format_number(mag);
      piece += ' ';
    }
    piece += lp.variable(t.var).name;
    if (line_len + piece.size() > kMaxLine) {
      out << "\n  ";
      line_len = 2;
    }
    out << piece;
    line_len += piece.size();
    first = false;
  }
}

}  // namespace

bool is_lp_identifier(std::string_view name) {
  if (name.empty() || name.size() > 255) return false;
  const unsigned char f = static_cast<unsigned char>(name.front());
  if (std::isdigit(f) || f == '.' || f == 'e' || f == 'E') {
    // A leading 'e' is legal but ambiguous next to numbers in some readers;
    // reject to keep exports portable.
    return false;
  }
  for (const char ch : name) {
    const unsigned char c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) continue;
    switch (c) {
      case '!': case '"': case '#': case '$': case '%': case '&': case '(': case ')':
      case '/': case ',': case '.': case ';': case '?': case '@': case '_': case '`':
      case '\'': case '{': case '}': case '|': case '~':
        continue;
      default:
        return false;
    }
  }
  return true;
}

void write_lp_format(const LinearProgram& lp, std::ostream& out) {
  lp.validate();
  for (const auto& v : lp.variables()) check_name(v.name);
  for (const auto& c : lp.constraints()) check_name(c.name);
  if (lp.num_variables() == 0) throw ValidationError("cannot export an LP without variables");

  out << "\\ exported by robnet\n";
  out << (lp.sense() == Sense::Minimize ? "Minimize\n" : "Maximize\n");
  out << " obj:";
  write_terms(out, lp, lp.objective_terms(), 5);
  if (lp.objective_constant() != 0.0) {
    out << (lp.objective_constant() < 0 ? " - " : " + ")
        << format_number(std::abs(lp.objective_constant()));
  }
  out << "\nSubject To\n";
  for (const auto& c : lp.constraints()) {
    out << ' ' << c.name << ':';
    write_terms(out, lp, c.terms, c.name.size() + 2);
    switch (c.relation) {
      case Relation::LessEqual: out << " <= "; break;
      case Relation::GreaterEqual: out << " >= "; break;
      case Relation::Equal: out << " = "; break;
    }
    out << format_number(c.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : lp.variables()) {
    const bool lo = std::isfinite(v.lower);
    const bool up = std::isfinite(v.upper);
    if (lo && up && v.lower == v.upper) {
      out << ' ' << v.name << " = " << format_number(v.lower) << '\n';
    } else if (!lo && !up) {
      out << ' ' << v.name << " free\n";
    } else if (!lo) {
      out << " -inf <= " << v.name << " <= " << format_number(v.upper) << '\n';
    } else if (!up) {
      if (v.lower != 0.0) out << ' ' << v.name << " >= " << format_number(v.lower) << '\n';
    } else {
      out << ' ' << format_number(v.lower) << " <= " << v.name << " <= "
          << format_number(v.upper) << '\n';
    }
  }
  out << "End\n";
}

std::string to_lp_format(const LinearProgram& lp) {
  std::ostringstream os;
  write_lp_format(lp, os);
  return os.str();
}

}  // namespace robnet::lp
