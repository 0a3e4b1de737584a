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


#include "robnet/netcore/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "robnet/error.hpp"

namespace robnet::netcore {

namespace {

using nlohmann::json;

std::string where(std::string_view list, std::size_t index, std::string_view field) {
  std::string s(list);
  s += "[" + std::to_string(index) + "]." + std::string(field);
  return s;
}

const json& field(const json& obj, std::string_view list, std::size_t index,
                  std::string_view name) {
  if (!obj.is_object()) throw ValidationError(where(list, index, "") + ": expected an object");
  const auto it = obj.find(name);
  if (it == obj.end()) throw ValidationError(where(list, index, name) + ": missing");
  return *it;
}

int int_field(const json& obj, std::string_view list, std::size_t index, std::string_view name) {
  const json& v = field(obj, list, index, name);
  if (!v.is_number_integer())
    throw ValidationError(where(list, index, name) + ": expected an integer");
  return v.get<int>();
}

double number_field(const json& obj, std::string_view list, std::size_t index,
                    std::string_view name, double fallback) {
  if (obj.find(name) == obj.end()) return fallback;
  const json& v = obj.at(name);
  if (!v.is_number()) throw ValidationError(where(list, index, name) + ": expected a number");
  return v.get<double>();
}

}  // namespace

Network::Network(std::vector<Node> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  if (nodes_.empty()) throw ValidationError("network has no nodes");
  const int n = num_nodes();
  for (int i = 0; i < n; ++i) {
    if (nodes_[i].id != i)
      throw ValidationError("node ids must be dense 0..n-1; found " +
                            std::to_string(nodes_[i].id) + " at position " + std::to_string(i));
    if (nodes_[i].name.empty()) nodes_[i].name = std::to_string(i);
  }
  std::set<std::pair<int, int>> seen;
  adjacency_.assign(n, {});
  for (int e = 0; e < num_edges(); ++e) {
    Edge& edge = edges_[e];
    const std::string label = "edge " + std::to_string(e);
    if (edge.id != e) throw ValidationError("edge ids must be dense 0..|E|-1 (" + label + ")");
    if (edge.u > edge.v) std::swap(edge.u, edge.v);
    if (edge.u < 0 || edge.v >= n) throw ValidationError(label + ": endpoint out of range");
    if (edge.u == edge.v) throw ValidationError(label + ": endpoints coincide");
    if (!seen.emplace(edge.u, edge.v).second)
      throw ValidationError(label + ": duplicate of an earlier edge between " +
                            nodes_[edge.u].name + " and " + nodes_[edge.v].name);
    if (!(edge.capacity >= 0.0) || !std::isfinite(edge.capacity))
      throw ValidationError(label + ": capacity must be finite and nonnegative");
    if (!(edge.cost >= 0.0) || !std::isfinite(edge.cost))
      throw ValidationError(label + ": cost must be finite and nonnegative");
    adjacency_[edge.u].push_back({edge.v, e});
    adjacency_[edge.v].push_back({edge.u, e});
  }
}

std::vector<double> Network::capacities() const {
  std::vector<double> out;
  for (const auto& e : edges_) out.push_back(e.capacity);
  return out;
}

std::vector<double> Network::costs() const {
  std::vector<double> out;
  for (const auto& e : edges_) out.push_back(e.cost);
  return out;
}

int Network::find_node(std::string_view name) const {
  for (const auto& node : nodes_)
    if (node.name == name) return node.id;
  return -1;
}

Network parse_network(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("network JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("network JSON: top level must be an object");
  for (const char* key : {"nodes", "edges"}) {
    if (!doc.contains(key) || !doc[key].is_array())
      throw ValidationError(std::string("network JSON: \"") + key + "\" must be an array");
  }
  std::vector<Node> nodes;
  const auto& jn = doc["nodes"];
  for (std::size_t i = 0; i < jn.size(); ++i) {
    Node node;
    node.id = int_field(jn[i], "nodes", i, "id");
    if (jn[i].contains("name")) {
      if (!jn[i]["name"].is_string())
        throw ValidationError(where("nodes", i, "name") + ": expected a string");
      node.name = jn[i]["name"].get<std::string>();
    }
    nodes.push_back(std::move(node));
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
  std::vector<Edge> edges;
  const auto& je = doc["edges"];
  for (std::size_t i = 0; i < je.size(); ++i) {
    Edge edge;
    edge.id = int_field(je[i], "edges", i, "id");
    edge.u = int_field(je[i], "edges", i, "u");
    edge.v = int_field(je[i], "edges", i, "v");
    edge.capacity = number_field(je[i], "edges", i, "capacity", 0.0);
    edge.cost = number_field(je[i], "edges", i, "cost", 1.0);
    edges.push_back(edge);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  return Network(std::move(nodes), std::move(edges));
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open network file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_network(text.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_network(std::ostream& out, const Network& network) {
  json doc;
  doc["nodes"] = json::array();
  for (const auto& n : network.nodes()) doc["nodes"].push_back({{"id", n.id}, {"name", n.name}});
  doc["edges"] = json::array();
  for (const auto& e : network.edges())
    doc["edges"].push_back(
        {{"id", e.id}, {"u", e.u}, {"v", e.v}, {"capacity", e.capacity}, {"cost", e.cost}});
  out << doc.dump(2) << '\n';
}

}  // namespace robnet::netcore
