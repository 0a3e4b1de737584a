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
#include <string>
#include <string_view>
#include <vector>

namespace robnet::netcore {

struct Node {
  int id = 0;
  std::string name;
};

struct Edge {
  int id = 0;
  int u = 0;  // u < v
  int v = 0;
  double capacity = 0.0;  // installed capacity
  double cost = 1.0;      // per unit of added capacity
};

struct Incidence {
  int neighbor = 0;
  int edge = 0;
};

// Undirected graph with dense node and edge ids.
class Network {
 public:
  Network() = default;
  // Edge endpoints are normalized to u < v. Throws ValidationError when an
  // invariant fails.
  Network(std::vector<Node> nodes, std::vector<Edge> edges);

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_.at(id); }
  const std::string& node_name(int id) const { return nodes_.at(id).name; }

  // Incident edges of `node`, sorted by edge id.
  std::span<const Incidence> incident(int node) const { return adjacency_.at(node); }

  std::vector<double> capacities() const;
  std::vector<double> costs() const;

  // -1 when absent.
  int find_node(std::string_view name) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

Network parse_network(std::string_view json_text);
Network load_network(const std::filesystem::path& path);
void write_network(std::ostream& out, const Network& network);

}  // namespace robnet::netcore
