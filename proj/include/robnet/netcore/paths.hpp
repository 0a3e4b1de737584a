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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "robnet/netcore/network.hpp"

namespace robnet::netcore {

struct Commodity {
  int id = 0;
  int source = 0;  // source < target
  int target = 0;
};

// All unordered node pairs in lexicographic order.
std::vector<Commodity> generate_commodities(const Network& network);

using Path = std::vector<int>;  // edge ids from source to target

inline constexpr int kUnlimitedPaths = 0;

// Unlimited for networks with at most 15 edges, otherwise 30.
int default_path_limit(const Network& network);

// Simple paths ordered by hop count, ties by edge-id sequence, truncated to
// `max_paths` (kUnlimitedPaths for all). Throws ValidationError when the
// endpoints are disconnected.
std::vector<Path> enumerate_paths(const Network& network, const Commodity& commodity,
                                  int max_paths);

// Per-commodity path lists with a reverse index from edges to (commodity,
// path) pairs.
class PathSet {
 public:
  struct Use {
    int commodity = 0;
    int path = 0;
  };

  PathSet() = default;
  PathSet(int num_edges, std::vector<std::vector<Path>> paths, int max_paths);

  int num_commodities() const { return static_cast<int>(paths_.size()); }
  int num_edges() const { return static_cast<int>(by_edge_.size()); }
  int max_paths() const { return max_paths_; }
  const std::vector<Path>& paths(int commodity) const { return paths_.at(commodity); }
  const std::vector<std::vector<Path>>& all() const { return paths_; }
  std::span<const Use> uses(int edge) const { return by_edge_.at(edge); }
  std::size_t total_paths() const;

  friend bool operator==(const PathSet& a, const PathSet& b) {
    return a.max_paths_ == b.max_paths_ && a.paths_ == b.paths_ &&
           a.by_edge_.size() == b.by_edge_.size();
  }

 private:
  std::vector<std::vector<Path>> paths_;
  std::vector<std::vector<Use>> by_edge_;
  int max_paths_ = kUnlimitedPaths;
};

PathSet build_path_set(const Network& network, std::span<const Commodity> commodities,
                       int max_paths);

// Same as above with default_path_limit(network).
PathSet build_path_set(const Network& network, std::span<const Commodity> commodities);

// JSON cache: {"max_paths":int,"num_edges":int,"commodities":[[[e,...],...],...]}
void write_path_set(std::ostream& out, const PathSet& paths);
PathSet read_path_set(const std::filesystem::path& path);

}  // namespace robnet::netcore
