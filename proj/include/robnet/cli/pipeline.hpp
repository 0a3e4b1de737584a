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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "robnet/uncertainty/hyperplane.hpp"

namespace robnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSolver = 3;

// Stage seeds derive from the master seed by fixed offsets.
inline constexpr std::uint64_t kKMeansSeedOffset = 101;
inline constexpr std::uint64_t kHyperplaneSeedOffset = 202;

struct RunConfig {
  std::filesystem::path network;
  std::vector<std::string> data;  // "tag=path" entries
  std::string train_tag;
  std::vector<std::string> eval_tags;
  double quantile = 0.98;
  bool filter_eval = false;
  std::vector<int> k_list;
  bool full_set = false;  // also solve with every training scenario
  std::vector<int> m_list;
  uncertainty::HyperplaneConfig hyperplane;
  double lambda_lo = 0.5;
  double lambda_hi = 1.5;
  int lambda_steps = 40;
  int workers = 1;
  std::string backend = "auto";
  std::uint64_t seed = 1;
  std::filesystem::path out = "run";
  int max_paths = -1;  // negative: default limit for the network
  bool sparsify = false;
  bool dump_scenarios = false;

  // Throws ValidationError.
  void validate() const;
  std::filesystem::path data_path(const std::string& tag) const;
};

// Each stage reads and writes only files below `cfg.out` (plus the inputs
// named in the config) and returns an exit code.
int cmd_prepare(const RunConfig& cfg, std::ostream& log);
int cmd_build_sets(const RunConfig& cfg, std::ostream& log);
int cmd_solve(const RunConfig& cfg, std::ostream& log);
int cmd_evaluate(const RunConfig& cfg, std::ostream& log);
int cmd_report(const RunConfig& cfg, std::ostream& log);

// Full command line, argv[0] included.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace robnet::cli
