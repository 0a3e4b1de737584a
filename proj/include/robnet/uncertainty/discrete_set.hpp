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

#include "robnet/matrix.hpp"

namespace robnet::uncertainty {

struct DiscreteSet {
  RowMatrix points;  // K x kappa
  std::uint64_t seed = 0;
  std::string source;

  std::size_t size() const { return points.rows(); }
  std::size_t kappa() const { return points.cols(); }
};

struct KMeansResult {
  DiscreteSet set;
  std::vector<int> assignment;    // cluster of each data row
  std::vector<double> sse;        // within-cluster sum of squares after each iteration
  int iterations = 0;
  bool converged = false;
};

struct KMeansOptions {
  int max_iterations = 300;
};

// Lloyd iterations from a k-means++ start. Throws ValidationError unless
// 1 <= k <= data.rows().
KMeansResult kmeans(const RowMatrix& data, int k, std::uint64_t seed, KMeansOptions options = {});

double sum_of_squares(const RowMatrix& data, const RowMatrix& centers,
                      const std::vector<int>& assignment);

// CSV with a leading "# K=<k> seed=<seed> source=<tag>" line, then a
// "k0,...,k{kappa-1}" header and one centroid per row.
void write_discrete_set(std::ostream& out, const DiscreteSet& set);
DiscreteSet read_discrete_set(std::istream& in);
DiscreteSet load_discrete_set(const std::filesystem::path& path);

}  // namespace robnet::uncertainty
