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


#include "robnet/cli/pipeline.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "robnet/error.hpp"
#include "robnet/eval/evaluate.hpp"
#include "robnet/format.hpp"
#include "robnet/ingest/scenarios.hpp"
#include "robnet/lp/solver.hpp"
#include "robnet/netcore/network.hpp"
#include "robnet/netcore/paths.hpp"
#include "robnet/robust/models.hpp"
#include "robnet/robust/plan.hpp"
#include "robnet/uncertainty/discrete_set.hpp"

namespace robnet::cli {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  body(out);
  if (!out) throw ValidationError("failed writing " + path.string());
}

fs::path data_dir(const RunConfig& cfg) { return cfg.out / "data"; }
fs::path sets_dir(const RunConfig& cfg) { return cfg.out / "sets"; }
fs::path plans_dir(const RunConfig& cfg) { return cfg.out / "plans"; }
fs::path eval_dir(const RunConfig& cfg) { return cfg.out / "eval"; }
fs::path report_dir(const RunConfig& cfg) { return cfg.out / "report"; }
fs::path paths_file(const RunConfig& cfg) { return cfg.out / "paths.json"; }

std::string discrete_id(int k) { return "discrete_K" + std::to_string(k); }
std::string affine_id(int m) { return "affine_M" + std::to_string(m); }
constexpr const char* kFullId = "discrete_full";

struct Context {
  netcore::Network network;
  netcore::PathSet paths;
};

Context load_context(const RunConfig& cfg) {
  Context ctx;
  ctx.network = netcore::load_network(cfg.network);
  ctx.paths = netcore::read_path_set(paths_file(cfg));
  if (ctx.paths.num_edges() != ctx.network.num_edges() ||
      static_cast<std::size_t>(ctx.paths.num_commodities()) !=
          netcore::generate_commodities(ctx.network).size())
    throw ValidationError("path cache does not match the network; rerun prepare");
  return ctx;
}

ingest::ScenarioSet load_prepared(const RunConfig& cfg, const std::string& tag, int kappa) {
  return ingest::load_scenarios(data_dir(cfg) / (tag + ".csv"), kappa, tag);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool valid_tag(const std::string& tag) {
  if (tag.empty()) return false;
  return std::all_of(tag.begin(), tag.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

struct PlanJob {
  std::string id;
  std::string kind;  // "discrete" or "affine"
  fs::path set_file;
  std::string param_name;
  long param = 0;
  std::uint64_t seed = 0;
};

std::vector<PlanJob> plan_jobs(const RunConfig& cfg) {
  std::vector<PlanJob> jobs;
  for (int k : cfg.k_list)
    jobs.push_back({discrete_id(k), "discrete", sets_dir(cfg) / (discrete_id(k) + ".csv"), "K", k,
                    cfg.seed + kKMeansSeedOffset});
  if (cfg.full_set)
    jobs.push_back({kFullId, "discrete", sets_dir(cfg) / (std::string(kFullId) + ".csv"), "K", 0,
                    cfg.seed});
  for (int m : cfg.m_list)
    jobs.push_back({affine_id(m), "affine", sets_dir(cfg) / ("poly_M" + std::to_string(m) + ".json"),
                    "M", m, cfg.seed + kHyperplaneSeedOffset});
  return jobs;
}

}  // namespace

void RunConfig::validate() const {
  if (network.empty()) throw ValidationError("no network file given");
  if (!fs::exists(network)) throw ValidationError("network file " + network.string() + " not found");
  std::map<std::string, bool> tags;
  for (const auto& entry : data) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw ValidationError("data entry \"" + entry + "\" must look like tag=path");
    const std::string tag = entry.substr(0, eq);
    if (!valid_tag(tag)) throw ValidationError("invalid dataset tag \"" + tag + "\"");
    const fs::path p = entry.substr(eq + 1);
    if (!fs::exists(p)) throw ValidationError("scenario file " + p.string() + " not found");
    tags[tag] = true;
  }
  if (train_tag.empty()) throw ValidationError("no training tag given");
  if (!tags.count(train_tag)) throw ValidationError("training tag " + train_tag + " has no data entry");
  for (const auto& t : eval_tags)
    if (!tags.count(t)) throw ValidationError("evaluation tag " + t + " has no data entry");
  if (!(quantile > 0.0 && quantile <= 1.0)) throw ValidationError("quantile must lie in (0, 1]");
  for (int k : k_list)
    if (k < 1) throw ValidationError("K list entries must be at least 1");
  for (int m : m_list)
    if (m < 0) throw ValidationError("M list entries must be nonnegative");
  if (!(lambda_lo >= 0.0 && lambda_lo <= lambda_hi && lambda_hi <= 10.0))
    throw ValidationError("lambda grid must lie within [0, 10]");
  if (lambda_steps < 0) throw ValidationError("lambda steps must be nonnegative");
  if (workers < 1) throw ValidationError("workers must be at least 1");
  hyperplane.validate();
}

fs::path RunConfig::data_path(const std::string& tag) const {
  for (const auto& entry : data) {
    const auto eq = entry.find('=');
    if (eq != std::string::npos && entry.substr(0, eq) == tag) return entry.substr(eq + 1);
  }
  throw ValidationError("no data entry for tag " + tag);
}

int cmd_prepare(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto network = netcore::load_network(cfg.network);
  const auto commodities = netcore::generate_commodities(network);
  const int kappa = static_cast<int>(commodities.size());
  log << "network: " << network.num_nodes() << " nodes, " << network.num_edges() << " edges, "
      << kappa << " commodities\n";

  const auto raw = ingest::load_scenarios(cfg.data_path(cfg.train_tag), kappa, cfg.train_tag);
  const auto train = ingest::quantile_filter(raw, cfg.quantile);
  log << "training " << cfg.train_tag << ": " << raw.size() << " rows, " << train.size()
      << " kept at q=" << format_number(cfg.quantile) << '\n';
  write_file(data_dir(cfg) / (cfg.train_tag + ".csv"),
             [&](std::ostream& out) { ingest::write_scenarios(out, train); });

  for (const auto& tag : cfg.eval_tags) {
    if (tag == cfg.train_tag) continue;
    auto set = ingest::load_scenarios(cfg.data_path(tag), kappa, tag);
    if (cfg.filter_eval) set = ingest::quantile_filter(set, cfg.quantile);
    log << "evaluation " << tag << ": " << set.size() << " rows\n";
    write_file(data_dir(cfg) / (tag + ".csv"),
               [&](std::ostream& out) { ingest::write_scenarios(out, set); });
  }

  const int limit = cfg.max_paths < 0 ? netcore::default_path_limit(network) : cfg.max_paths;
  const auto paths = netcore::build_path_set(network, commodities, limit);
  log << "paths: " << paths.total_paths() << " over " << kappa << " commodities (limit "
      << (limit == netcore::kUnlimitedPaths ? std::string("none") : std::to_string(limit)) << ")\n";
  write_file(paths_file(cfg), [&](std::ostream& out) { netcore::write_path_set(out, paths); });
  return kExitOk;
}

int cmd_build_sets(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto network = netcore::load_network(cfg.network);
  const int kappa = network.num_nodes() * (network.num_nodes() - 1) / 2;
  const auto train = load_prepared(cfg, cfg.train_tag, kappa);

  for (int k : cfg.k_list) {
    const auto start = std::chrono::steady_clock::now();
    auto result = uncertainty::kmeans(train.demands, k, cfg.seed + kKMeansSeedOffset);
    result.set.source = cfg.train_tag;
    write_file(sets_dir(cfg) / (discrete_id(k) + ".csv"),
               [&](std::ostream& out) { uncertainty::write_discrete_set(out, result.set); });
    log << "K=" << k << ": " << result.iterations << " iterations, sse "
        << format_number(result.sse.empty() ? 0.0 : result.sse.back()) << " ("
        << format_number(seconds_since(start)) << " s)\n";
  }
  if (cfg.full_set) {
    uncertainty::DiscreteSet all;
    all.points = train.demands;
    all.seed = cfg.seed;
    all.source = cfg.train_tag;
    write_file(sets_dir(cfg) / (std::string(kFullId) + ".csv"),
               [&](std::ostream& out) { uncertainty::write_discrete_set(out, all); });
    log << "full set: " << all.size() << " scenarios\n";
  }
  if (!cfg.m_list.empty()) {
    const int m_max = *std::max_element(cfg.m_list.begin(), cfg.m_list.end());
    auto hcfg = cfg.hyperplane;
    hcfg.seed = cfg.seed + kHyperplaneSeedOffset;
    const auto start = std::chrono::steady_clock::now();
    const auto built = uncertainty::build_polyhedron(train.demands, m_max, hcfg);
    log << "hyperplanes: " << m_max << " placed against " << built.noise.rows()
        << " noise points (" << format_number(seconds_since(start)) << " s)\n";
    for (int m : cfg.m_list) {
      const auto poly = built.polyhedron.prefix(static_cast<std::size_t>(m));
      write_file(sets_dir(cfg) / ("poly_M" + std::to_string(m) + ".json"),
                 [&](std::ostream& out) { uncertainty::write_polyhedron(out, poly); });
    }
  }
  return kExitOk;
}

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const auto jobs = plan_jobs(cfg);
  if (jobs.empty()) {
    log << "warning: no uncertainty sets configured; nothing to solve\n";
    return kExitOk;
  }
  const Context ctx = load_context(cfg);
  const auto backend = lp::make_backend(cfg.backend);

  struct Outcome {
    bool ok = false;
    std::string message;
    robust::CapacityPlan plan;
  };
  std::vector<Outcome> outcomes(jobs.size());
  auto run_job = [&](std::size_t i) {
    const auto& job = jobs[i];
    Outcome& res = outcomes[i];
    try {
      const auto start = std::chrono::steady_clock::now();
      robust::RobustModel model;
      long param = job.param;
      if (job.kind == "discrete") {
        const auto set = uncertainty::load_discrete_set(job.set_file);
        param = static_cast<long>(set.size());
        model = robust::build_discrete(ctx.network, ctx.paths, set.points);
      } else {
        const auto poly = uncertainty::load_polyhedron(job.set_file);
        model = robust::build_affine(ctx.network, ctx.paths, poly, {.sparsify = cfg.sparsify});
      }
      const double build_s = seconds_since(start);
      const auto sol = backend->solve(model.lp);
      if (!sol.optimal())
        throw SolverError(job.id + " is " + std::string(lp::to_string(sol.status)));
      res.plan = robust::extract_first_stage(sol, model, ctx.network);
      res.plan.param_name = job.param_name;
      res.plan.param = param;
      res.plan.seed = job.seed;
      res.plan.build_seconds = build_s;
      res.plan.solve_seconds = sol.solve_seconds;
      res.ok = true;
      std::ostringstream msg;
      msg << job.id << ": cost " << format_number(res.plan.cost) << ", "
          << model.lp.num_variables() << " variables, " << model.lp.num_constraints()
          << " constraints, build " << format_number(build_s) << " s, solve "
          << format_number(sol.solve_seconds) << " s\n";
      res.message = msg.str();
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception& e) {
      res.message = "error: " + job.id + ": " + e.what() + "\n";
    }
  };

  const int workers = std::min<int>(cfg.workers, static_cast<int>(jobs.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr validation;
    std::mutex mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
          try {
            run_job(i);
          } catch (...) {
            std::lock_guard lock(mutex);
            if (!validation) validation = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (validation) std::rethrow_exception(validation);
  }

  bool failed = false;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    log << outcomes[i].message;
    if (!outcomes[i].ok) {
      failed = true;
      continue;
    }
    write_file(plans_dir(cfg) / (jobs[i].id + ".json"),
               [&](std::ostream& out) { robust::write_plan(out, outcomes[i].plan); });
  }
  return failed ? kExitSolver : kExitOk;
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  const Context ctx = load_context(cfg);
  const int kappa = ctx.paths.num_commodities();
  std::vector<ingest::ScenarioSet> datasets;
  datasets.push_back(load_prepared(cfg, cfg.train_tag, kappa));
  for (const auto& tag : cfg.eval_tags) datasets.push_back(load_prepared(cfg, tag, kappa));
  const auto grid = eval::lambda_grid(cfg.lambda_lo, cfg.lambda_hi, cfg.lambda_steps);

  std::vector<std::pair<std::string, robust::CapacityPlan>> plans;
  for (const auto& job : plan_jobs(cfg)) {
    const auto file = plans_dir(cfg) / (job.id + ".json");
    if (!fs::exists(file)) throw ValidationError("missing plan file " + file.string());
    plans.emplace_back(job.id, robust::load_plan(file));
  }
  if (plans.empty()) log << "warning: no plans configured; writing an empty evaluation\n";

  eval::EvalOptions options;
  options.workers = cfg.workers;
  options.backend = cfg.backend;
  if (cfg.dump_scenarios) options.dump_dir = eval_dir(cfg) / "scenarios";

  std::vector<eval::EvalRecord> records;
  for (const auto& [id, plan] : plans) {
    const auto start = std::chrono::steady_clock::now();
    auto rec = eval::evaluate(plan, id, datasets, grid, ctx.network, ctx.paths, options);
    log << id << ": " << rec.size() << " records (" << format_number(seconds_since(start))
        << " s)\n";
    records.insert(records.end(), std::make_move_iterator(rec.begin()),
                   std::make_move_iterator(rec.end()));
  }
  write_file(eval_dir(cfg) / "evaluation.csv", [&](std::ostream& out) {
    eval::write_evaluation_header(out);
    eval::write_evaluation_rows(out, records);
  });
  return kExitOk;
}

int cmd_report(const RunConfig& cfg, std::ostream& log) {
  const auto csv = eval_dir(cfg) / "evaluation.csv";
  std::ifstream in(csv, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + csv.string() + "; run evaluate first");
  const auto records = eval::read_evaluation_csv(in);

  std::vector<std::string> datasets;
  for (const auto& r : records)
    if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end())
      datasets.push_back(r.dataset);

  const std::pair<const char*, double eval::Metrics::*> metrics[] = {
      {"avg", &eval::Metrics::avg},
      {"cvar75", &eval::Metrics::cvar75},
      {"cvar95", &eval::Metrics::cvar95},
      {"max", &eval::Metrics::max}};
  std::size_t files = 0;
  for (const auto& dataset : datasets) {
    for (const auto& [name, member] : metrics) {
      write_file(report_dir(cfg) / ("frontier_" + dataset + "_" + name + ".csv"),
                 [&](std::ostream& out) {
                   std::string buf = "series,model,param,lambda,cost,value\n";
                   std::map<std::pair<std::string, double>, bool> seen;
                   for (const auto& r : records) {
                     if (r.dataset != dataset) continue;
                     if (seen.count({r.plan_id, r.lambda})) continue;  // repeated tags
                     seen[{r.plan_id, r.lambda}] = true;
                     buf += r.plan_id + ',' + r.model + ',' + r.param + ',';
                     append_number(buf, r.lambda);
                     buf += ',';
                     append_number(buf, r.cost);
                     buf += ',';
                     append_number(buf, r.metrics.*member);
                     buf += '\n';
                   }
                   out << buf;
                 });
      ++files;
    }
  }

  std::vector<fs::path> plan_files;
  if (fs::exists(plans_dir(cfg)))
    for (const auto& entry : fs::directory_iterator(plans_dir(cfg)))
      if (entry.path().extension() == ".json") plan_files.push_back(entry.path());
  std::sort(plan_files.begin(), plan_files.end());
  write_file(report_dir(cfg) / "timing.csv", [&](std::ostream& out) {
    std::string buf = "plan_id,model,param,set_size,build_s,solve_s\n";
    for (const auto& file : plan_files) {
      const auto plan = robust::load_plan(file);
      buf += file.stem().string() + ',' + plan.model + ',' + plan.param_name + ',' +
             std::to_string(plan.param) + ',';
      append_number(buf, plan.build_seconds);
      buf += ',';
      append_number(buf, plan.solve_seconds);
      buf += '\n';
    }
    out << buf;
  });
  log << "report: " << files << " frontier files, " << plan_files.size() << " timing rows\n";
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"robust network capacity expansion pipeline", "robnet"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML file with option values");

  RunConfig cfg;
  auto& h = cfg.hyperplane;
  app.add_option("--network", cfg.network, "network JSON");
  app.add_option("--data", cfg.data, "dataset as tag=path (repeatable)");
  app.add_option("--train", cfg.train_tag, "training dataset tag");
  app.add_option("--eval", cfg.eval_tags, "evaluation dataset tags");
  app.add_option("--quantile", cfg.quantile, "training quantile filter");
  app.add_flag("--filter-eval", cfg.filter_eval, "quantile-filter evaluation datasets too");
  app.add_option("--K", cfg.k_list, "discrete set sizes");
  app.add_flag("--full-set", cfg.full_set, "also solve with every training scenario");
  app.add_option("--M", cfg.m_list, "hyperplane counts");
  app.add_option("--noise-count", h.noise_count, "noise points (-1: one per training point)");
  app.add_option("--amplify-lo", h.amplify_lo);
  app.add_option("--amplify-hi", h.amplify_hi);
  app.add_option("--swap-prob", h.swap_prob);
  app.add_option("--w1", h.w1, "noise weight of the first hyperplane");
  app.add_option("--gamma", h.gamma, "noise weight decay");
  app.add_option("--w-min", h.w_min);
  app.add_option("--search-budget", h.search_budget, "candidate directions per hyperplane");
  app.add_option("--lambda-lo", cfg.lambda_lo);
  app.add_option("--lambda-hi", cfg.lambda_hi);
  app.add_option("--lambda-steps", cfg.lambda_steps);
  app.add_option("--workers", cfg.workers);
  app.add_option("--backend", cfg.backend, "auto, dense, revised or external:<command>");
  app.add_option("--seed", cfg.seed);
  app.add_option("--out", cfg.out, "output directory");
  app.add_option("--max-paths", cfg.max_paths, "paths per commodity (0: all)");
  app.add_flag("--sparsify", cfg.sparsify, "drop non-interacting affine terms");
  app.add_flag("--dump-scenarios", cfg.dump_scenarios, "write per-scenario unmet demand");

  using Stage = int (*)(const RunConfig&, std::ostream&);
  const std::pair<const char*, Stage> stages[] = {
      {"prepare", cmd_prepare},   {"build-sets", cmd_build_sets}, {"solve", cmd_solve},
      {"evaluate", cmd_evaluate}, {"report", cmd_report}};
  std::vector<Stage> chosen;
  for (const auto& [name, fn] : stages)
    app.add_subcommand(name)->callback([&chosen, fn = fn] { chosen.push_back(fn); });
  app.add_subcommand("run", "every stage in order")->callback([&] {
    for (const auto& stage : stages) chosen.push_back(stage.second);
  });

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();  // argv[0]
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  int code = kExitOk;
  try {
    for (Stage stage : chosen) {
      code = stage(cfg, out);
      if (code != kExitOk) break;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return code;
}

}  // namespace robnet::cli
