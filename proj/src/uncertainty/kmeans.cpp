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


#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "robnet/error.hpp"
#include "robnet/format.hpp"
#include "robnet/uncertainty/discrete_set.hpp"

namespace robnet::uncertainty {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

RowMatrix plus_plus_seeding(const RowMatrix& data, int k, std::mt19937_64& rng) {
  const std::size_t n = data.rows();
  RowMatrix centers(0, data.cols());
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  centers.append_row(data.row(pick(rng)));
  std::vector<double> closest(n);
  for (std::size_t t = 0; t < n; ++t) closest[t] = squared_distance(data.row(t), centers.row(0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (double v : closest) total += v;
    std::size_t chosen = 0;
    if (total > 0.0) {
      const double target = unit(rng) * total;
      double acc = 0.0;
      chosen = n - 1;
      for (std::size_t t = 0; t < n; ++t) {
        acc += closest[t];
        if (acc > target && closest[t] > 0.0) {
          chosen = t;
          break;
        }
      }
      while (closest[chosen] == 0.0) --chosen;
    } else {
      chosen = pick(rng);  // every point already coincides with a center
    }
    centers.append_row(data.row(chosen));
    const auto row = centers.row(centers.rows() - 1);
    for (std::size_t t = 0; t < n; ++t)
      closest[t] = std::min(closest[t], squared_distance(data.row(t), row));
  }
  return centers;
}

int nearest(std::span<const double> point, const RowMatrix& centers, int current) {
  int best = current;
  double best_d = current >= 0 ? squared_distance(point, centers.row(current))
                               : std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.rows(); ++c) {
    const double d = squared_distance(point, centers.row(c));
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace

double sum_of_squares(const RowMatrix& data, const RowMatrix& centers,
                      const std::vector<int>& assignment) {
  double s = 0.0;
  for (std::size_t t = 0; t < data.rows(); ++t)
    s += squared_distance(data.row(t), centers.row(assignment[t]));
  return s;
}

KMeansResult kmeans(const RowMatrix& data, int k, std::uint64_t seed, KMeansOptions options) {
  const std::size_t n = data.rows();
  if (k < 1) throw ValidationError("kmeans: K must be at least 1");
  if (static_cast<std::size_t>(k) > n)
    throw ValidationError("kmeans: K=" + std::to_string(k) + " exceeds the " +
                          std::to_string(n) + " data points");
  const std::size_t dim = data.cols();
  std::mt19937_64 rng(seed);

  KMeansResult result;
  RowMatrix centers = plus_plus_seeding(data, k, rng);
  std::vector<int>& assign = result.assignment;
  assign.assign(n, -1);
  std::vector<std::size_t> count(k);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    bool changed = false;
    for (std::size_t t = 0; t < n; ++t) {
      const int c = nearest(data.row(t), centers, assign[t]);
      if (c != assign[t]) {
        assign[t] = c;
        changed = true;
      }
    }
    if (!changed && iter > 0) {
      result.converged = true;
      break;
    }

    // Re-seed empty clusters from the point farthest from its own center,
    // taken from a cluster that keeps at least one other member.
    std::fill(count.begin(), count.end(), 0);
    for (int c : assign) ++count[c];
    for (int c = 0; c < k; ++c) {
      if (count[c] != 0) continue;
      std::size_t far = n;
      double far_d = -1.0;
      for (std::size_t t = 0; t < n; ++t) {
        if (count[assign[t]] < 2) continue;
        const double d = squared_distance(data.row(t), centers.row(assign[t]));
        if (d > far_d) {
          far_d = d;
          far = t;
        }
      }
      if (far == n) break;  // cannot happen while k <= n
      --count[assign[far]];
      assign[far] = c;
      count[c] = 1;
    }

    RowMatrix sums(k, dim);
    for (std::size_t t = 0; t < n; ++t) {
      auto dst = sums.row(assign[t]);
      const auto src = data.row(t);
      for (std::size_t j = 0; j < dim; ++j) dst[j] += src[j];
    }
    for (int c = 0; c < k; ++c) {
      auto dst = centers.row(c);
      const auto src = sums.row(c);
      for (std::size_t j = 0; j < dim; ++j) dst[j] = src[j] / static_cast<double>(count[c]);
    }
    result.sse.push_back(sum_of_squares(data, centers, assign));
    result.iterations = iter + 1;
  }
  result.set.points = std::move(centers);
  result.set.seed = seed;
  return result;
}

void write_discrete_set(std::ostream& out, const DiscreteSet& set) {
  std::string buf = "# K=" + std::to_string(set.size()) + " seed=" + std::to_string(set.seed);
  if (!set.source.empty()) buf += " source=" + set.source;
  buf += '\n';
  for (std::size_t k = 0; k < set.kappa(); ++k) buf += (k ? ",k" : "k") + std::to_string(k);
  buf += '\n';
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto row = set.points.row(i);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) buf += ',';
      append_number(buf, row[k]);
    }
    buf += '\n';
  }
  out << buf;
}

DiscreteSet read_discrete_set(std::istream& in) {
  DiscreteSet set;
  std::string line;
  std::size_t declared = 0;
  bool have_header = false;
  std::size_t kappa = 0;
  std::size_t line_no = 0;
  std::vector<double> row;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string item;
      while (meta >> item) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) continue;
        const auto key = item.substr(0, eq), value = item.substr(eq + 1);
        if (key == "K") declared = std::stoul(value);
        else if (key == "seed") set.seed = std::stoull(value);
        else if (key == "source") set.source = value;
      }
      continue;
    }
    if (!have_header) {
      kappa = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
      set.points = RowMatrix(0, kappa);
      have_header = true;
      continue;
    }
    row.clear();
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      const auto cell = std::string_view(line).substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      double v = 0.0;
      if (!parse_number(cell, v) || v < 0.0)
        throw ValidationError("discrete set line " + std::to_string(line_no) +
                              ": invalid entry");
      row.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (row.size() != kappa)
      throw ValidationError("discrete set line " + std::to_string(line_no) +
                            ": wrong number of columns");
    set.points.append_row(row);
  }
  if (set.size() == 0) throw ValidationError("discrete set has no points");
  if (declared != 0 && declared != set.size())
    throw ValidationError("discrete set declares K=" + std::to_string(declared) + " but has " +
                          std::to_string(set.size()) + " rows");
  return set;
}

DiscreteSet load_discrete_set(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open discrete set " + path.string());
  try {
    return read_discrete_set(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  } catch (const std::logic_error&) {
    throw ValidationError(path.string() + ": malformed metadata line");
  }
}

}  // namespace robnet::uncertainty
