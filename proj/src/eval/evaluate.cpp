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


#include "robnet/eval/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "robnet/error.hpp"
#include "robnet/format.hpp"

namespace robnet::eval {

namespace {

using lp::Relation;
using lp::Term;

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

UnmetDemandModel::UnmetDemandModel(const netcore::Network& network, const netcore::PathSet& paths)
    : installed_(network.capacities()), kappa_(paths.num_commodities()) {
  if (paths.num_edges() != network.num_edges())
    throw ValidationError("path set was built for a different network");
  auto& lp = skeleton_;
  std::vector<Term> obj;
  for (int k = 0; k < kappa_; ++k)
    obj.push_back({lp.add_variable("h" + std::to_string(k), 0.0, lp::kInf), 1.0});
  std::vector<std::vector<int>> f(kappa_);
  for (int k = 0; k < kappa_; ++k)
    for (std::size_t p = 0; p < paths.paths(k).size(); ++p)
      f[k].push_back(lp.add_variable("f" + std::to_string(k) + "_" + std::to_string(p), 0.0, lp::kInf));
  for (int k = 0; k < kappa_; ++k) {
    std::vector<Term> terms{{k, 1.0}};
    for (int v : f[k]) terms.push_back({v, 1.0});
    lp.add_constraint("cover" + std::to_string(k), std::move(terms), Relation::GreaterEqual, 0.0);
  }
  for (const auto& e : network.edges()) {
    std::vector<Term> terms;
    for (const auto& use : paths.uses(e.id)) terms.push_back({f[use.commodity][use.path], 1.0});
    lp.add_constraint("cap" + std::to_string(e.id), std::move(terms), Relation::LessEqual,
                      e.capacity);
  }
  lp.set_objective(lp::Sense::Minimize, std::move(obj));
}

double UnmetDemandModel::solve(std::span<const double> x, std::span<const double> demand,
                               const lp::Backend& backend) const {
  if (demand.size() != static_cast<std::size_t>(kappa_))
    throw ValidationError("scenario dimension does not match the commodity count");
  if (x.size() != installed_.size())
    throw ValidationError("capacity vector does not match the edge count");
  double total = 0.0;
  for (double d : demand) total += d;
  if (total == 0.0) return 0.0;
  lp::LinearProgram lp = skeleton_;
  for (int k = 0; k < kappa_; ++k) lp.set_rhs(k, demand[k]);
  for (std::size_t e = 0; e < x.size(); ++e)
    lp.set_rhs(kappa_ + static_cast<int>(e), installed_[e] + x[e]);
  const auto sol = backend.solve(lp);
  if (!sol.optimal())
    throw SolverError("unmet-demand LP is " + std::string(lp::to_string(sol.status)));
  return std::max(0.0, sol.objective);
}

double unmet_demand(const netcore::Network& network, const netcore::PathSet& paths,
                    std::span<const double> x, std::span<const double> demand,
                    const lp::Backend& backend) {
  return UnmetDemandModel(network, paths).solve(x, demand, backend);
}

double unmet_demand(const netcore::Network& network, const netcore::PathSet& paths,
                    std::span<const double> x, std::span<const double> demand) {
  const auto backend = lp::make_backend("auto");
  return unmet_demand(network, paths, x, demand, *backend);
}

double tail_mean(std::span<const double> values, double fraction) {
  if (values.empty()) throw ValidationError("tail_mean of an empty list");
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ValidationError("tail fraction must lie in (0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double raw = fraction * static_cast<double>(sorted.size());
  auto count = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  count = std::clamp<std::size_t>(count, 1, sorted.size());
  long double sum = 0.0L;
  for (std::size_t i = 0; i < count; ++i) sum += sorted[i];
  return static_cast<double>(sum / static_cast<long double>(count));
}

Metrics compute_metrics(std::span<const double> values) {
  if (values.empty()) throw ValidationError("metrics of an empty list");
  Metrics m;
  m.max = *std::max_element(values.begin(), values.end());
  // Clamping only absorbs rounding in the means; the order holds exactly in
  // real arithmetic.
  m.avg = std::min(tail_mean(values, 1.0), m.max);
  m.cvar75 = std::clamp(tail_mean(values, 0.25), m.avg, m.max);
  m.cvar95 = std::clamp(tail_mean(values, 0.05), m.cvar75, m.max);
  return m;
}

robust::CapacityPlan scale_plan(const robust::CapacityPlan& plan, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw ValidationError("scale factor must be finite and nonnegative");
  robust::CapacityPlan out = plan;
  for (double& v : out.x) v *= lambda;
  out.cost = plan.cost * lambda;
  out.lambda = plan.lambda * lambda;
  return out;
}

std::vector<double> lambda_grid(double lo, double hi, int steps) {
  if (!(lo >= 0.0 && lo <= hi && hi <= 10.0))
    throw ValidationError("lambda grid must satisfy 0 <= lo <= hi <= 10");
  if (steps < 0) throw ValidationError("lambda grid step count must be nonnegative");
  if (steps == 0) return {lo};
  std::vector<double> grid;
  for (int i = 0; i <= steps; ++i)
    grid.push_back(i == steps ? hi : lo + (hi - lo) * static_cast<double>(i) / steps);
  return grid;
}

std::vector<double> unmet_per_scenario(const UnmetDemandModel& model, std::span<const double> x,
                                       const ingest::ScenarioSet& set, const lp::Backend& backend,
                                       int workers) {
  std::vector<double> out(set.size(), 0.0);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t failed_at = 0;
  auto work = [&] {
    while (true) {
      const std::size_t t = next.fetch_add(1);
      if (t >= set.size()) return;
      try {
        out[t] = model.solve(x, set.scenario(t), backend);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error || t < failed_at) {
          error = std::current_exception();
          failed_at = t;
        }
        next.store(set.size());
        return;
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(set.size())));
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      throw SolverError("scenario " + std::to_string(failed_at) +
                        (failed_at < set.timestamps.size() ? " (" + set.timestamps[failed_at] + ")"
                                                           : std::string()) +
                        ": " + e.what());
    }
  }
  return out;
}

std::vector<EvalRecord> evaluate(const robust::CapacityPlan& plan, const std::string& plan_id,
                                 std::span<const ingest::ScenarioSet> datasets,
                                 std::span<const double> lambdas,
                                 const netcore::Network& network, const netcore::PathSet& paths,
                                 const EvalOptions& options) {
  if (plan.x.size() != static_cast<std::size_t>(network.num_edges()))
    throw ValidationError("plan " + plan_id + " does not match the network");
  const UnmetDemandModel model(network, paths);
  const auto backend = lp::make_backend(options.backend);
  if (!options.dump_dir.empty()) std::filesystem::create_directories(options.dump_dir);

  std::vector<EvalRecord> records;
  for (double lambda : lambdas) {
    const auto scaled = scale_plan(plan, lambda);
    for (const auto& data : datasets) {
      const auto start = std::chrono::steady_clock::now();
      std::vector<double> unmet;
      try {
        unmet = unmet_per_scenario(model, scaled.x, data, *backend, options.workers);
      } catch (const SolverError& e) {
        throw SolverError("plan " + plan_id + ", dataset " + data.tag + ", lambda " +
                          format_number(lambda) + ": " + e.what());
      }
      EvalRecord rec;
      rec.plan_id = plan_id;
      rec.model = plan.model;
      if (!plan.param_name.empty()) rec.param = plan.param_name + "=" + std::to_string(plan.param);
      rec.lambda = lambda;
      rec.dataset = data.tag;
      rec.cost = scaled.cost;
      rec.metrics = compute_metrics(unmet);
      rec.scenarios = unmet.size();
      rec.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (!options.dump_dir.empty()) {
        const auto file = options.dump_dir /
                          (plan_id + "_" + data.tag + "_l" + format_number(lambda) + ".csv");
        std::ofstream out(file, std::ios::binary);
        if (!out) throw ValidationError("cannot write " + file.string());
        std::string buf = "scenario,timestamp,unmet\n";
        for (std::size_t t = 0; t < unmet.size(); ++t) {
          buf += std::to_string(t);
          buf += ',';
          if (t < data.timestamps.size()) buf += data.timestamps[t];
          buf += ',';
          append_number(buf, unmet[t]);
          buf += '\n';
        }
        out << buf;
      }
      records.push_back(std::move(rec));
    }
  }
  return records;
}

void write_evaluation_header(std::ostream& out) { out << kEvaluationHeader << '\n'; }

void write_evaluation_rows(std::ostream& out, std::span<const EvalRecord> records) {
  std::string buf;
  for (const auto& r : records) {
    buf += r.plan_id + ',' + r.model + ',' + r.param + ',';
    append_number(buf, r.lambda);
    buf += ',' + r.dataset + ',';
    for (double v : {r.cost, r.metrics.avg, r.metrics.cvar75, r.metrics.cvar95, r.metrics.max}) {
      append_number(buf, v);
      buf += ',';
    }
    buf += std::to_string(r.scenarios) + ',';
    append_number(buf, r.wall_seconds);
    buf += '\n';
  }
  out << buf;
}

std::vector<EvalRecord> read_evaluation_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("evaluation CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv(line);
  std::map<std::string, std::size_t, std::less<>> col;
  for (std::size_t i = 0; i < header.size(); ++i) col.emplace(std::string(header[i]), i);
  for (const char* required : {"plan_id", "model", "param", "lambda", "dataset", "cost", "avg",
                               "cvar75", "cvar95", "max", "n_scenarios"}) {
    if (!col.count(required))
      throw ValidationError(std::string("evaluation CSV lacks the \"") + required + "\" column");
  }
  std::vector<EvalRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size())
      throw ValidationError("evaluation CSV line " + std::to_string(line_no) +
                            ": wrong number of fields");
    auto num = [&](const char* key) {
      double v = 0.0;
      if (!parse_number(cells[col.find(key)->second], v))
        throw ValidationError("evaluation CSV line " + std::to_string(line_no) + ": bad " + key);
      return v;
    };
    EvalRecord r;
    r.plan_id = std::string(cells[col["plan_id"]]);
    r.model = std::string(cells[col["model"]]);
    r.param = std::string(cells[col["param"]]);
    r.dataset = std::string(cells[col["dataset"]]);
    r.lambda = num("lambda");
    r.cost = num("cost");
    r.metrics = {num("avg"), num("cvar75"), num("cvar95"), num("max")};
    r.scenarios = static_cast<std::size_t>(num("n_scenarios"));
    if (col.count("wall_s")) r.wall_seconds = num("wall_s");
    out.push_back(std::move(r));
  }
  if (out.empty()) throw ValidationError("evaluation CSV has no records");
  return out;
}

}  // namespace robnet::eval
