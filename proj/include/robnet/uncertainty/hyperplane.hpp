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
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "robnet/matrix.hpp"
#include "robnet/uncertainty/polyhedron.hpp"

namespace robnet::uncertainty {

struct HyperplaneConfig {
  long noise_count = -1;  // negative: one noise point per training point
  double amplify_lo = 1.5;
  double amplify_hi = 3.0;
  double swap_prob = 0.02;
  double w1 = 100.0;
  double gamma = 0.8;
  double w_min = 1.0;
  long search_budget = 20000;  // score evaluations per hyperplane
  std::uint64_t seed = 0;

  void validate() const;
};

// Each noise point copies a random training row, scales one random coordinate
// by a factor from [amplify_lo, amplify_hi] and, with probability swap_prob
// per coordinate, takes that coordinate from another random row.
RowMatrix generate_noise(const RowMatrix& train, const HyperplaneConfig& cfg,
                         std::mt19937_64& rng);

// w * #{train: v.d > b} + #{noise: v.d <= b}
double score_hyperplane(std::span<const double> v, double b, const RowMatrix& train,
                        const RowMatrix& noise, double w);

struct HyperplaneFit {
  std::vector<double> v;
  double b = 0.0;
  double score = 0.0;
};

// Best offset for a fixed unit direction, found by sweeping the sorted
// projections. Offsets below `floor` are not considered.
HyperplaneFit best_offset(std::span<const double> v, const RowMatrix& train,
                          const RowMatrix& noise, double w,
                          double floor = -std::numeric_limits<double>::infinity());

// Annealing over unit directions seeded with every positive axis direction.
// `floor_point`, when given, must stay inside the half-space.
HyperplaneFit fit_hyperplane(const RowMatrix& train, const RowMatrix& noise, double w,
                             const HyperplaneConfig& cfg, std::mt19937_64& rng,
                             std::span<const double> floor_point = {});

struct PolyhedronBuild {
  Polyhedron polyhedron;
  RowMatrix noise;
  std::vector<std::size_t> active_after;  // active noise count after each row
};

// Bounding box of `train` plus `m` hyperplanes placed one at a time against
// the noise points not yet cut off, with a geometrically decaying penalty.
PolyhedronBuild build_polyhedron(const RowMatrix& train, int m, const HyperplaneConfig& cfg);

// {"kappa","lower","upper","witness","rows":[{"v","b","weight","score","train_violation"}]}
void write_polyhedron(std::ostream& out, const Polyhedron& poly);
Polyhedron read_polyhedron(std::istream& in);
Polyhedron load_polyhedron(const std::filesystem::path& path);

}  // namespace robnet::uncertainty
