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


#include "robnet/netcore/paths.hpp"

#include <fstream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>

#include "json.hpp"
#include "robnet/error.hpp"

namespace robnet::netcore {

namespace {

constexpr int kFar = std::numeric_limits<int>::max() / 2;

std::vector<int> hop_distances(const Network& network, int from) {
  std::vector<int> dist(network.num_nodes(), kFar);
  std::queue<int> queue;
  dist[from] = 0;
  queue.push(from);
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop();
    for (const auto& inc : network.incident(node)) {
      if (dist[inc.neighbor] != kFar) continue;
      dist[inc.neighbor] = dist[node] + 1;
      queue.push(inc.neighbor);
    }
  }
  return dist;
}

class Search {
 public:
  Search(const Network& network, int target, std::size_t limit)
      : network_(network),
        target_(target),
        limit_(limit),
        dist_(hop_distances(network, target)),
        visited_(network.num_nodes(), false) {}

  const std::vector<int>& distances() const { return dist_; }

  // Appends all simple paths with exactly `hops` edges, in edge-id order.
  void collect(int source, int hops, std::vector<Path>& out) {
    hops_ = hops;
    out_ = &out;
    visited_[source] = true;
    step(source);
    visited_[source] = false;
  }

 private:
  void step(int node) {
    if (full()) return;
    const int depth = static_cast<int>(stack_.size());
    if (node == target_) {
      if (depth == hops_) out_->push_back(stack_);
      return;
    }
    for (const auto& inc : network_.incident(node)) {
      if (visited_[inc.neighbor]) continue;
      if (depth + 1 + dist_[inc.neighbor] > hops_) continue;
      visited_[inc.neighbor] = true;
      stack_.push_back(inc.edge);
      step(inc.neighbor);
      stack_.pop_back();
      visited_[inc.neighbor] = false;
      if (full()) return;
    }
  }

  bool full() const { return limit_ != 0 && out_->size() >= limit_; }

  const Network& network_;
  int target_;
  std::size_t limit_;
  std::vector<int> dist_;
  std::vector<bool> visited_;
  std::vector<int> stack_;
  std::vector<Path>* out_ = nullptr;
  int hops_ = 0;
};

}  // namespace

std::vector<Commodity> generate_commodities(const Network& network) {
  std::vector<Commodity> out;
  const int n = network.num_nodes();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back({static_cast<int>(out.size()), i, j});
  return out;
}

int default_path_limit(const Network& network) {
  return network.num_edges() <= 15 ? kUnlimitedPaths : 30;
}

std::vector<Path> enumerate_paths(const Network& network, const Commodity& commodity,
                                  int max_paths) {
  const int n = network.num_nodes();
  if (commodity.source < 0 || commodity.target >= n || commodity.source == commodity.target)
    throw ValidationError("commodity " + std::to_string(commodity.id) + " has invalid endpoints");
  if (max_paths < 0) throw ValidationError("max_paths must be nonnegative");
  Search search(network, commodity.target, static_cast<std::size_t>(max_paths));
  const int shortest = search.distances()[commodity.source];
  if (shortest == kFar)
    throw ValidationError("no path for commodity " + std::to_string(commodity.id) + " (" +
                          network.node_name(commodity.source) + ", " +
                          network.node_name(commodity.target) + ")");
  std::vector<Path> out;
  for (int hops = shortest; hops < n; ++hops) {
    search.collect(commodity.source, hops, out);
    if (max_paths != kUnlimitedPaths && out.size() >= static_cast<std::size_t>(max_paths)) break;
  }
  return out;
}

PathSet::PathSet(int num_edges, std::vector<std::vector<Path>> paths, int max_paths)
    : paths_(std::move(paths)), by_edge_(num_edges), max_paths_(max_paths) {
  for (int k = 0; k < num_commodities(); ++k) {
    for (int p = 0; p < static_cast<int>(paths_[k].size()); ++p) {
      for (int e : paths_[k][p]) {
        if (e < 0 || e >= num_edges)
          throw ValidationError("path references unknown edge " + std::to_string(e));
        by_edge_[e].push_back({k, p});
      }
    }
  }
}

std::size_t PathSet::total_paths() const {
  std::size_t total = 0;
  for (const auto& list : paths_) total += list.size();
  return total;
}

PathSet build_path_set(const Network& network, std::span<const Commodity> commodities,
                       int max_paths) {
  std::vector<std::vector<Path>> paths;
  paths.reserve(commodities.size());
  for (const auto& c : commodities) paths.push_back(enumerate_paths(network, c, max_paths));
  return PathSet(network.num_edges(), std::move(paths), max_paths);
}

PathSet build_path_set(const Network& network, std::span<const Commodity> commodities) {
  return build_path_set(network, commodities, default_path_limit(network));
}

void write_path_set(std::ostream& out, const PathSet& paths) {
  nlohmann::json doc;
  doc["max_paths"] = paths.max_paths();
  doc["num_edges"] = paths.num_edges();
  doc["commodities"] = paths.all();
  out << doc.dump() << '\n';
}

PathSet read_path_set(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open path cache " + path.string());
  try {
    const auto doc = nlohmann::json::parse(in);
    return PathSet(doc.at("num_edges").get<int>(),
                   doc.at("commodities").get<std::vector<std::vector<Path>>>(),
                   doc.at("max_paths").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace robnet::netcore
