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


// Acceptance checks. Prints one PASS/FAIL/SKIP line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "robnet/cli/pipeline.hpp"
#include "robnet/eval/evaluate.hpp"
#include "robnet/format.hpp"
#include "robnet/ingest/scenarios.hpp"
#include "robnet/lp/dualize.hpp"
#include "robnet/lp/solver.hpp"
#include "robnet/netcore/paths.hpp"
#include "robnet/robust/models.hpp"
#include "robnet/robust/plan.hpp"
#include "robnet/uncertainty/discrete_set.hpp"
#include "robnet/uncertainty/hyperplane.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace robnet;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict = Verdict::Pass;
  std::string detail;
};

// Collects failed checks; the first few are reported.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) messages_ += (messages_.empty() ? "" : "; ") + what;
  }
  void note(const std::string& text) { notes_ += (notes_.empty() ? "" : ", ") + text; }
  Outcome outcome() const {
    if (failures_ == 0) return {Verdict::Pass, notes_};
    return {Verdict::Fail, std::to_string(failures_) + " failed check(s): " + messages_};
  }

 private:
  int failures_ = 0;
  std::string messages_;
  std::string notes_;
};

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

double solve_cost(const robust::RobustModel& model, const netcore::Network& net,
                  const lp::Backend& backend) {
  return robust::extract_first_stage(backend.solve(model.lp), model, net).cost;
}

RowMatrix first_rows(const RowMatrix& m, std::size_t n) {
  RowMatrix out(0, m.cols());
  for (std::size_t i = 0; i < n; ++i) out.append_row(m.row(i));
  return out;
}

// The six-node desk-scale fixture shared by several criteria.
struct SixNode {
  netcore::Network net = testing::six_node_network();
  netcore::PathSet paths;
  ingest::ScenarioSet train;
  ingest::ScenarioSet test;
  robust::CapacityPlan full;
  double full_seconds = 0.0;
};

const SixNode& six_node() {
  static const SixNode fixture = [] {
    SixNode f;
    const auto commodities = netcore::generate_commodities(f.net);
    f.paths = netcore::build_path_set(f.net, commodities);
    f.train = testing::synthetic_scenarios(static_cast<int>(commodities.size()), 200, 17, "train");
    f.test = testing::synthetic_scenarios(static_cast<int>(commodities.size()), 100, 18, "test");
    const auto start = std::chrono::steady_clock::now();
    const auto model = robust::build_discrete(f.net, f.paths, f.train.demands);
    f.full = robust::extract_first_stage(lp::make_backend("auto")->solve(model.lp), model, f.net);
    f.full_seconds = elapsed(start);
    return f;
  }();
  return fixture;
}

// ---------------------------------------------------------------------------

Outcome triangle_discrete() {
  Checker c;
  const auto start = std::chrono::steady_clock::now();
  const auto net = testing::triangle();
  const auto commodities = netcore::generate_commodities(net);
  const auto paths = netcore::build_path_set(net, commodities);
  RowMatrix scenarios(0, 3);
  scenarios.append_row(std::vector<double>{1.0, 1.0, 1.0});
  scenarios.append_row(std::vector<double>{2.0, 0.0, 1.0});

  // Lower bound: each single-node cut must carry the demand leaving that node
  // in every scenario. Summing the three cuts counts every edge twice.
  double bound = 0.0;
  for (int node = 0; node < 3; ++node) {
    double worst = 0.0;
    for (std::size_t s = 0; s < scenarios.rows(); ++s) {
      double across = 0.0;
      for (std::size_t k = 0; k < commodities.size(); ++k)
        if (commodities[k].source == node || commodities[k].target == node)
          across += scenarios(s, k);
      worst = std::max(worst, across);
    }
    bound += worst;
  }
  bound /= 2.0;
  c.expect(std::abs(bound - 3.5) <= 1e-12, "cut bound is " + num(bound));
  // Routing witness at the bound.
  const std::vector<double> witness{1.5, 0.5, 1.5};
  for (std::size_t s = 0; s < scenarios.rows(); ++s)
    c.expect(eval::unmet_demand(net, paths, witness, scenarios.row(s)) <= 1e-9,
             "witness capacity leaves demand unmet");

  const auto model = robust::build_discrete(net, paths, scenarios);
  for (const char* name : {"dense", "revised"}) {
    const auto plan =
        robust::extract_first_stage(lp::make_backend(name)->solve(model.lp), model, net);
    c.expect(std::abs(plan.cost - 3.5) <= 1e-6, std::string(name) + " cost " + num(plan.cost));
    for (std::size_t s = 0; s < scenarios.rows(); ++s)
      c.expect(eval::unmet_demand(net, paths, plan.x, scenarios.row(s)) <= 1e-6,
               std::string(name) + " plan leaves scenario " + std::to_string(s) + " unmet");
  }
  const double seconds = elapsed(start);
  c.expect(seconds < 1.0, "took " + num(seconds) + " s");
  c.note("cost 3.5 on dense and revised, " + num(seconds) + " s");
  return c.outcome();
}

Outcome zero_unmet_training() {
  Checker c;
  const auto start = std::chrono::steady_clock::now();
  const auto& f = six_node();
  const auto backend = lp::make_backend("auto");
  const eval::UnmetDemandModel model(f.net, f.paths);

  const auto at_one = eval::unmet_per_scenario(model, f.full.x, f.train, *backend, 1);
  const double worst = *std::max_element(at_one.begin(), at_one.end());
  c.expect(worst <= 1e-6, "max training unmet " + num(worst));

  int cheaper_zero = 0, checked = 0;
  for (double lambda : eval::lambda_grid()) {
    if (lambda >= 1.0) continue;
    ++checked;
    const auto scaled = eval::scale_plan(f.full, lambda);
    const auto unmet = eval::unmet_per_scenario(model, scaled.x, f.train, *backend, 1);
    if (*std::max_element(unmet.begin(), unmet.end()) <= 1e-6) ++cheaper_zero;
  }
  c.expect(checked == 20, "expected 20 downscaled grid points, got " + std::to_string(checked));
  c.expect(cheaper_zero == 0, std::to_string(cheaper_zero) + " cheaper plans reach zero");
  const double seconds = elapsed(start);
  c.expect(seconds < 300.0, "took " + num(seconds) + " s");
  c.note("full plan cost " + num(f.full.cost) + ", max unmet " + num(worst) + ", " +
         std::to_string(checked) + " downscaled plans all short, " + num(seconds) + " s");
  return c.outcome();
}

Outcome conservativeness() {
  Checker c;
  const auto& f = six_node();
  const auto backend = lp::make_backend("auto");

  uncertainty::HyperplaneConfig cfg;
  cfg.search_budget = 3000;
  cfg.seed = 5;
  const auto built = uncertainty::build_polyhedron(f.train.demands, 3, cfg);
  int checked = 0;
  for (std::size_t m : {std::size_t{0}, std::size_t{3}}) {
    const auto poly = built.polyhedron.prefix(m);
    bool all_in = true;
    for (std::size_t t = 0; t < f.train.size(); ++t)
      all_in = all_in && uncertainty::contains(poly, f.train.scenario(t), 1e-9);
    if (!all_in) {
      c.expect(m != 0, "box misses a training point");
      continue;
    }
    ++checked;
    const double affine = solve_cost(robust::build_affine(f.net, f.paths, poly), f.net, *backend);
    c.expect(affine >= f.full.cost - 1e-6 * std::max(1.0, f.full.cost),
             "affine M=" + std::to_string(m) + " cost " + num(affine) + " below discrete " +
                 num(f.full.cost));
    c.note("affine M=" + std::to_string(m) + " " + num(affine));
  }

  std::vector<double> mean(f.train.kappa(), 0.0);
  for (std::size_t t = 0; t < f.train.size(); ++t)
    for (std::size_t l = 0; l < mean.size(); ++l) mean[l] += f.train.demands(t, l) / f.train.size();
  auto single = uncertainty::Polyhedron::box(mean, mean);
  single.witness = mean;
  const double affine = solve_cost(robust::build_affine(f.net, f.paths, single), f.net, *backend);
  const double nominal = solve_cost(robust::build_nominal(f.net, f.paths, mean), f.net, *backend);
  c.expect(std::abs(affine - nominal) <= 1e-6, "singleton affine " + num(affine) +
                                                   " vs nominal " + num(nominal));
  c.note("discrete " + num(f.full.cost) + ", " + std::to_string(checked) +
         " containing polyhedra, singleton = nominal " + num(nominal));
  return c.outcome();
}

uncertainty::Polyhedron random_polyhedron(std::mt19937_64& rng, int kappa, int rows) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> lo(kappa), hi(kappa), mid(kappa);
  for (int l = 0; l < kappa; ++l) {
    lo[l] = 3.0 * u(rng) - 1.0;
    hi[l] = lo[l] + 0.2 + 4.0 * u(rng);
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
    for (auto& x : v) x /= std::sqrt(norm);
    poly.append_row(v, dot(v, mid) + 0.8 * u(rng));
  }
  return poly;
}

Outcome duality() {
  Checker c;
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<int> kappa_dist(1, 6), rows_dist(0, 4);
  std::normal_distribution<double> g(0.0, 1.0);
  const auto primal_backend = lp::make_backend("dense");
  const auto dual_backend = lp::make_backend("revised");
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int kappa = kappa_dist(rng);
    const auto poly = random_polyhedron(rng, kappa, rows_dist(rng));
    std::vector<double> cvec(kappa);
    for (auto& x : cvec) x = g(rng);

    lp::LinearProgram primal;
    std::vector<lp::Term> obj;
    for (int l = 0; l < kappa; ++l) {
      primal.add_variable("d" + std::to_string(l), poly.lower[l], poly.upper[l]);
      obj.push_back({l, cvec[l]});
    }
    for (std::size_t i = 0; i < poly.num_rows(); ++i) {
      std::vector<lp::Term> t;
      for (int l = 0; l < kappa; ++l) t.push_back({l, poly.v(i, l)});
      primal.add_constraint("h" + std::to_string(i), t, lp::Relation::LessEqual, poly.b[i]);
    }
    primal.set_objective(lp::Sense::Maximize, obj);
    const auto p = primal_backend->solve(primal);

    lp::LinearProgram dual;
    const auto block = lp::dualize_max(dual, std::span<const double>(cvec), poly, "q");
    dual.set_objective(lp::Sense::Minimize, block.bound.terms, block.bound.constant);
    const auto d = dual_backend->solve(dual);

    if (!p.optimal() || !d.optimal()) {
      c.expect(false, "trial " + std::to_string(trial) + " not optimal");
      continue;
    }
    const double gap =
        std::abs(p.objective - d.objective) / std::max(1.0, std::abs(p.objective));
    worst = std::max(worst, gap);
    c.expect(gap <= 1e-6, "trial " + std::to_string(trial) + " gap " + num(gap));
  }
  c.note("100 polyhedra, worst relative gap " + num(worst));
  return c.outcome();
}

Outcome monotonicity() {
  Checker c;
  const auto& f = six_node();
  const auto backend = lp::make_backend("auto");
  const eval::UnmetDemandModel unmet(f.net, f.paths);

  // Plans of several kinds to draw pairs from.
  std::vector<robust::CapacityPlan> plans{f.full};
  for (int k : {1, 5, 20}) {
    const auto set = uncertainty::kmeans(f.train.demands, k, 300 + k);
    const auto model = robust::build_discrete(f.net, f.paths, set.set.points);
    plans.push_back(robust::extract_first_stage(backend->solve(model.lp), model, f.net));
  }
  const auto grid = eval::lambda_grid();
  c.expect(grid.size() == 41, "grid has " + std::to_string(grid.size()) + " points");
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> pick_plan(0, plans.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_scenario(0, f.test.size() - 1);
  int increases = 0;
  for (int pair = 0; pair < 20; ++pair) {
    const auto& plan = plans[pick_plan(rng)];
    const auto demand = f.test.scenario(pick_scenario(rng));
    double previous = std::numeric_limits<double>::infinity();
    for (double lambda : grid) {
      const double value = unmet.solve(eval::scale_plan(plan, lambda).x, demand, *backend);
      if (value > previous + 1e-9 * std::max(1.0, previous)) ++increases;
      previous = value;
    }
  }
  c.expect(increases == 0, std::to_string(increases) + " increases along the lambda grid");

  uncertainty::HyperplaneConfig cfg;
  cfg.search_budget = 3000;
  cfg.seed = 77;
  const auto built = uncertainty::build_polyhedron(f.train.demands, 5, cfg);
  double previous = std::numeric_limits<double>::infinity();
  std::string affine_costs;
  for (std::size_t m = 0; m <= 5; ++m) {
    const auto model = robust::build_affine(f.net, f.paths, built.polyhedron.prefix(m));
    const double cost = solve_cost(model, f.net, *backend);
    c.expect(cost <= previous + 1e-6 * std::max(1.0, cost),
             "affine cost rises at M=" + std::to_string(m));
    previous = cost;
    affine_costs += (affine_costs.empty() ? "" : " ") + num(cost);
  }

  previous = -std::numeric_limits<double>::infinity();
  for (std::size_t n : {1, 2, 5, 10, 20, 50, 100}) {
    const auto model = robust::build_discrete(f.net, f.paths, first_rows(f.train.demands, n));
    const double cost = solve_cost(model, f.net, *backend);
    c.expect(cost >= previous - 1e-6 * std::max(1.0, cost),
             "discrete cost falls at n=" + std::to_string(n));
    previous = cost;
  }
  c.note("20 pairs x 41 lambdas, affine M=0..5 costs [" + affine_costs + "]");
  return c.outcome();
}

Outcome metrics() {
  Checker c;
  std::vector<double> values(20);
  std::iota(values.begin(), values.end(), 1.0);
  const auto m = eval::compute_metrics(values);
  c.expect(m.cvar75 == 18.0, "cvar75 of 1..20 is " + num(m.cvar75));
  c.expect(m.avg == 10.5 && m.max == 20.0, "avg/max of 1..20");

  const auto& f = six_node();
  std::vector<robust::CapacityPlan> plans{f.full};
  const auto set = uncertainty::kmeans(f.train.demands, 10, 404);
  const auto model = robust::build_discrete(f.net, f.paths, set.set.points);
  plans.push_back(
      robust::extract_first_stage(lp::make_backend("auto")->solve(model.lp), model, f.net));
  const std::vector<ingest::ScenarioSet> datasets{f.train, f.test};
  const auto grid = eval::lambda_grid(0.5, 1.5, 10);
  std::size_t records = 0;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    eval::EvalOptions options;
    options.workers = 2;
    for (const auto& r : eval::evaluate(plans[i], "p" + std::to_string(i), datasets, grid, f.net,
                                        f.paths, options)) {
      ++records;
      const auto& x = r.metrics;
      c.expect(x.avg <= x.cvar75 && x.cvar75 <= x.cvar95 && x.cvar95 <= x.max,
               "ordering broken for " + r.plan_id + " at lambda " + num(r.lambda));
    }
  }
  c.note("cvar75(1..20) = 18, ordering holds on " + std::to_string(records) + " records");
  return c.outcome();
}

Outcome kmeans_checks() {
  Checker c;
  RowMatrix planted(0, 2);
  planted.append_row(std::vector<double>{0.0, 0.0});
  planted.append_row(std::vector<double>{0.0, 2.0});
  planted.append_row(std::vector<double>{10.0, 10.0});
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; i < planted.rows(); ++i)
    pts.emplace_back(planted.row(i).begin(), planted.row(i).end());
  const auto [best_sse, best_centroids] = testing::best_two_partition(pts);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = uncertainty::kmeans(planted, 2, seed);
    const double sse = uncertainty::sum_of_squares(planted, r.set.points, r.assignment);
    c.expect(std::abs(sse - best_sse) <= 1e-9, "seed " + std::to_string(seed) + " sse " + num(sse));
    std::vector<std::vector<double>> got;
    for (std::size_t i = 0; i < r.set.size(); ++i)
      got.emplace_back(r.set.points.row(i).begin(), r.set.points.row(i).end());
    std::sort(got.begin(), got.end());
    auto want = best_centroids;
    std::sort(want.begin(), want.end());
    bool same = got.size() == want.size();
    for (std::size_t i = 0; same && i < got.size(); ++i)
      for (std::size_t j = 0; j < got[i].size(); ++j)
        same = same && std::abs(got[i][j] - want[i][j]) <= 1e-12;
    c.expect(same, "seed " + std::to_string(seed) + " centroids differ from the oracle");
  }

  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> n_dist(5, 200), dim_dist(1, 8), k_dist(1, 12);
  std::normal_distribution<double> g(0.0, 1.0);
  int rises = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = n_dist(rng), dim = dim_dist(rng);
    const int k = std::min(n, k_dist(rng));
    RowMatrix data(0, dim);
    std::vector<double> row(dim);
    for (int i = 0; i < n; ++i) {
      const double shift = 4.0 * (i % 3);
      for (auto& x : row) x = g(rng) + shift;
      data.append_row(row);
    }
    const auto r = uncertainty::kmeans(data, k, 1000 + trial);
    for (std::size_t i = 1; i < r.sse.size(); ++i)
      if (r.sse[i] > r.sse[i - 1] * (1.0 + 1e-12) + 1e-12) ++rises;
  }
  c.expect(rises == 0, std::to_string(rises) + " SSE increases");
  c.note("planted example matches the partition oracle for 20 seeds, SSE monotone on 50 datasets");
  return c.outcome();
}

Outcome timing_ordering() {
  Checker c;
  const auto net = testing::eight_node_network();
  const auto commodities = netcore::generate_commodities(net);
  const auto paths = netcore::build_path_set(net, commodities);
  const auto train =
      testing::synthetic_scenarios(static_cast<int>(commodities.size()), 500, 23, "train");
  const auto backend = lp::make_backend("auto");

  const auto clusters = uncertainty::kmeans(train.demands, 500, 1);
  const auto discrete = robust::build_discrete(net, paths, clusters.set.points);
  const auto ds = backend->solve(discrete.lp);

  uncertainty::HyperplaneConfig cfg;
  cfg.seed = 3;
  const auto poly = uncertainty::build_polyhedron(train.demands, 5, cfg).polyhedron;
  const auto affine = robust::build_affine(net, paths, poly);
  const auto as = backend->solve(affine.lp);

  c.expect(ds.optimal() && as.optimal(), "a model did not solve to optimality");
  c.expect(ds.solve_seconds < as.solve_seconds,
           "discrete K=500 " + num(ds.solve_seconds) + " s vs affine M=5 " +
               num(as.solve_seconds) + " s");
  c.note("discrete K=500: " + num(ds.solve_seconds) + " s (" +
         std::to_string(discrete.lp.num_variables()) + " vars), affine M=5: " +
         num(as.solve_seconds) + " s (" + std::to_string(affine.lp.num_variables()) + " vars)");
  return c.outcome();
}

// File contents with timing fields removed.
std::string normalized(const fs::path& file) {
  const std::string text = testing::read_text(file);
  if (file.extension() == ".json" && file.parent_path().filename() == "plans") {
    auto plan = robust::load_plan(file);
    plan.build_seconds = 0.0;
    plan.solve_seconds = 0.0;
    std::ostringstream out;
    robust::write_plan(out, plan);
    return out.str();
  }
  if (file.filename() == "evaluation.csv" || file.filename() == "timing.csv") {
    // Drop the timing columns.
    std::istringstream in(text);
    std::string line, out;
    const bool timing = file.filename() == "timing.csv";
    while (std::getline(in, line)) {
      std::size_t cut = line.size();
      if (timing) {
        int commas = 0;
        for (std::size_t i = 0; i < line.size(); ++i)
          if (line[i] == ',' && ++commas == 4) {
            cut = i;
            break;
          }
      } else {
        cut = line.rfind(',');
      }
      out += line.substr(0, cut) + '\n';
    }
    return out;
  }
  return text;
}

Outcome determinism() {
  Checker c;
  testing::TempDir dir("robnet_acceptance");
  const auto net = testing::make_network(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {1, 3}});
  {
    std::ofstream f(dir / "net.json");
    netcore::write_network(f, net);
  }
  for (const auto& [tag, seed] : {std::pair{"train", 41}, std::pair{"test", 42}}) {
    std::ofstream f(dir / (std::string(tag) + ".csv"));
    ingest::write_scenarios(f, testing::synthetic_scenarios(10, 150, seed, tag));
  }
  auto args_for = [&](const std::string& out, int workers) {
    return std::vector<std::string>{
        "robnet", "run", "--network", (dir / "net.json").string(), "--data",
        "train=" + (dir / "train.csv").string(), "--data", "test=" + (dir / "test.csv").string(),
        "--train", "train", "--eval", "test", "--K", "1", "4", "16", "--full-set", "--M", "0",
        "2", "4", "--search-budget", "2000", "--lambda-steps", "8", "--seed", "123", "--workers",
        std::to_string(workers), "--dump-scenarios", "--out", (dir / out).string()};
  };
  std::ostringstream log, err;
  const int a = cli::run(args_for("a", 1), log, err);
  const int b = cli::run(args_for("b", 2), log, err);
  c.expect(a == 0 && b == 0, "pipeline exit codes " + std::to_string(a) + ", " +
                                 std::to_string(b) + ": " + err.str());
  if (a != 0 || b != 0) return c.outcome();

  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir / "a"))
    if (entry.is_regular_file()) files.push_back(fs::relative(entry.path(), dir / "a"));
  std::sort(files.begin(), files.end());
  std::size_t count_b = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir / "b"))
    if (entry.is_regular_file()) ++count_b;
  c.expect(files.size() == count_b, "runs produced different file sets");
  for (const auto& rel : files) {
    const auto pb = dir / "b" / rel;
    c.expect(fs::exists(pb) && normalized(dir / "a" / rel) == normalized(pb),
             rel.string() + " differs");
  }
  c.note(std::to_string(files.size()) + " artifacts identical across runs with 1 and 2 workers");
  return c.outcome();
}

std::optional<fs::path> abilene_month07() {
  if (const char* env = std::getenv("ROBNET_ABILENE_MONTH07")) return fs::path(env);
  const fs::path bundled = fs::path(ROBNET_SOURCE_DIR) / "data/abilene/month07.csv";
  if (fs::exists(bundled)) return bundled;
  return std::nullopt;
}

Outcome abilene() {
  const auto month = abilene_month07();
  if (!month)
    return {Verdict::Skip,
            "real Abilene data not found (data/abilene/month07.csv or ROBNET_ABILENE_MONTH07); "
            "see data/README.md"};
  Checker c;
  const auto net = netcore::load_network(fs::path(ROBNET_SOURCE_DIR) / "data/abilene.json");
  const auto kappa = static_cast<int>(netcore::generate_commodities(net).size());
  c.expect(net.num_nodes() == 12, "nodes " + std::to_string(net.num_nodes()));
  c.expect(net.num_edges() == 15, "edges " + std::to_string(net.num_edges()));
  c.expect(kappa == 66, "kappa " + std::to_string(kappa));
  const auto set = ingest::load_scenarios(*month, kappa);
  const auto filtered = ingest::quantile_filter(set, 0.98);
  c.expect(set.size() == 8928, "month rows " + std::to_string(set.size()));
  c.expect(filtered.size() == 8750, "filtered rows " + std::to_string(filtered.size()));
  c.note("12 nodes, 15 edges, kappa 66, " + std::to_string(set.size()) + " rows, " +
         std::to_string(filtered.size()) + " after the filter");
  return c.outcome();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"triangle discrete model", triangle_discrete},
      {"zero unmet demand on training data", zero_unmet_training},
      {"conservativeness chain", conservativeness},
      {"dualization matches the primal max", duality},
      {"monotonicity suite", monotonicity},
      {"metric values and ordering", metrics},
      {"k-means oracle and SSE descent", kmeans_checks},
      {"discrete K=500 solves faster than affine M=5", timing_ordering},
      {"pipeline determinism", determinism},
      {"real Abilene ingestion", abilene},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {Verdict::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = out.verdict == Verdict::Pass ? "PASS" : out.verdict == Verdict::Fail ? "FAIL" : "SKIP";
    if (out.verdict == Verdict::Fail) ++failed;
    std::cout << tag << ' ' << (i + 1) << ": " << criteria[i].first << " (" << num(elapsed(start))
              << " s)";
    if (!out.detail.empty()) std::cout << " - " << out.detail;
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
