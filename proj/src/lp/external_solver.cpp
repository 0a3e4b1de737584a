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

#include "robnet/lp/external_solver.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "robnet/error.hpp"
#include "robnet/format.hpp"
#include "robnet/lp/lp_writer.hpp"

namespace robnet::lp {
namespace {

namespace fs = std::filesystem;

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  out += '\'';
  return out;
}

fs::path unique_stem() {
  static std::atomic<unsigned long> counter{0};
  std::ostringstream os;
  os << "robnet_" << ::getpid() << '_' << std::hash<std::thread::id>{}(std::this_thread::get_id())
     << '_' << counter++;
  return fs::temp_directory_path() / os.str();
}

}  // namespace

LpSolution ExternalSolver::solve(const LinearProgram& lp) const {
  const auto start = std::chrono::steady_clock::now();
  const fs::path stem = unique_stem();
  const fs::path model = stem.string() + ".lp";
  const fs::path result = stem.string() + ".sol";
  {
    std::ofstream out(model);
    write_lp_format(lp, out);
  }
  const std::string cmd = command_ + " " + shell_quote(model.string()) + " " +
                          shell_quote(result.string()) + " > /dev/null";
  const int rc = std::system(cmd.c_str());
  std::ifstream in(result);
  std::error_code ec;
  fs::remove(model, ec);
  if (rc != 0 || !in) {
    fs::remove(result, ec);
    throw SolverError("external solver command failed: " + command_);
  }

  LpSolution sol;
  sol.backend = "external";
  std::string key, status;
  in >> key >> status;
  if (key != "status") throw SolverError("external solver: malformed solution file");
  if (status == "optimal") sol.status = Status::Optimal;
  else if (status == "infeasible") sol.status = Status::Infeasible;
  else if (status == "unbounded") sol.status = Status::Unbounded;
  else throw SolverError("external solver reported status '" + status + "'");

  std::string line;
  std::getline(in, line);
  if (sol.status == Status::Optimal) {
    sol.values.assign(lp.num_variables(), 0.0);
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string name, text;
      if (!(ls >> name >> text)) continue;
      double v = 0.0;
      if (!parse_number(text, v)) throw SolverError("external solver: bad number '" + text + "'");
      if (name == "objective") continue;
      const int j = lp.find_variable(name);
      if (j >= 0) sol.values[j] = v;
    }
    sol.objective = lp.evaluate_objective(sol.values);
    sol.max_violation = lp.max_violation(sol.values);
  }
  in.close();
  fs::remove(result, ec);
  sol.solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sol;
}

}  // namespace robnet::lp
