// Copyright 2026 The agentmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "agentmap/hardware.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <queue>
#include <sstream>

#include "json.hpp"

namespace agentmap {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

std::string edge_str(Qubit u, Qubit v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

CouplingGraph::CouplingGraph(std::size_t num_nodes, std::vector<Edge> edges)
    : adjacency_(num_nodes) {
  for (Edge &e : edges) {
    if (e.first >= num_nodes || e.second >= num_nodes) {
      throw HardwareError("edge " + edge_str(e.first, e.second) + " names a node outside 0.." +
                          std::to_string(num_nodes) + "-1");
    }
    if (e.first == e.second) {
      throw HardwareError("self-loop on node " + std::to_string(e.first));
    }
    e = normalized(e);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw HardwareError("duplicate edge " + edge_str(dup->first, dup->second));
  }
  edges_ = std::move(edges);
  for (const auto &[u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto &adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
  }
}

bool CouplingGraph::has_edge(Qubit u, Qubit v) const {
  if (u >= num_nodes() || v >= num_nodes()) {
    return false;
  }
  const auto &adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

bool CouplingGraph::is_connected() const {
  if (num_nodes() == 0) {
    return true;
  }
  std::vector<bool> seen(num_nodes(), false);
  std::vector<Qubit> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    Qubit u = stack.back();
    stack.pop_back();
    for (Qubit v : adjacency_[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == num_nodes();
}

CalibrationData::CalibrationData(const CouplingGraph &graph, const std::vector<CxError> &errors)
    : n_(graph.num_nodes()), table_(n_ * n_, kMissing) {
  for (const CxError &e : errors) {
    if (!graph.has_edge(e.control, e.target)) {
      throw HardwareError("cx_error entry " + edge_str(e.control, e.target) +
                          " is not a coupling edge");
    }
    if (!(e.error >= 0.0 && e.error < 1.0)) {
      throw HardwareError("cx_error " + edge_str(e.control, e.target) + " = " +
                          std::to_string(e.error) + " is outside [0, 1)");
    }
    table_[e.control * n_ + e.target] = e.error;
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto &[u, v] : graph.edges()) {
    for (auto [c, t] : {Edge{u, v}, Edge{v, u}}) {
      const double err = table_[c * n_ + t];
      if (std::isnan(err)) {
        throw HardwareError("missing cx_error for " + edge_str(c, t));
      }
      e_max_ = std::max(e_max_, err);
      sum += err;
      ++count;
    }
  }
  mean_ = count == 0 ? 0.0 : sum / static_cast<double>(count);
}

bool CalibrationData::has(Qubit control, Qubit target) const {
  return control < n_ && target < n_ && !std::isnan(table_[control * n_ + target]);
}

double CalibrationData::error(Qubit control, Qubit target) const {
  if (!has(control, target)) {
    throw std::invalid_argument("no CX calibration for " + edge_str(control, target) +
                                "; not a coupling edge");
  }
  return table_[control * n_ + target];
}

HardwareModel::HardwareModel(std::string name, CouplingGraph graph, CalibrationData calib,
                             std::vector<std::string> warnings)
    : name_(std::move(name)),
      graph_(std::move(graph)),
      calib_(std::move(calib)),
      warnings_(std::move(warnings)) {
  const std::size_t n = graph_.num_nodes();
  if (n == 0) {
    throw HardwareError("device has no qubits");
  }
  if (!graph_.is_connected()) {
    throw HardwareError("coupling graph of '" + name_ + "' is disconnected");
  }
  dist_.assign(n * n, kUnreachable);
  for (Qubit src = 0; src < n; ++src) {
    std::uint32_t *row = &dist_[src * n];
    std::queue<Qubit> frontier;
    row[src] = 0;
    frontier.push(src);
    while (!frontier.empty()) {
      Qubit u = frontier.front();
      frontier.pop();
      for (Qubit v : graph_.neighbors(u)) {
        if (row[v] == kUnreachable) {
          row[v] = row[u] + 1;
          frontier.push(v);
        }
      }
    }
  }
  diameter_ = *std::max_element(dist_.begin(), dist_.end());
}

HardwareModel make_hardware(std::string name, std::size_t num_qubits, std::vector<Edge> edges,
                            std::vector<CxError> cx_errors) {
  CouplingGraph graph(num_qubits, std::move(edges));
  std::map<Edge, double> given;
  for (const CxError &e : cx_errors) {
    if (!given.emplace(Edge{e.control, e.target}, e.error).second) {
      throw HardwareError("duplicate cx_error entry " + edge_str(e.control, e.target));
    }
  }
  std::vector<std::string> warnings;
  for (const auto &[u, v] : graph.edges()) {
    const bool fwd = given.count({u, v}) != 0;
    const bool bwd = given.count({v, u}) != 0;
    if (fwd != bwd) {
      const Edge have = fwd ? Edge{u, v} : Edge{v, u};
      const Edge missing{have.second, have.first};
      const double err = given.at(have);
      cx_errors.push_back({missing.first, missing.second, err});
      warnings.push_back("cx_error for " + edge_str(missing.first, missing.second) +
                         " missing; copied from " + edge_str(have.first, have.second));
    }
  }
  CalibrationData calib(graph, cx_errors);
  return HardwareModel(std::move(name), std::move(graph), std::move(calib), std::move(warnings));
}

HardwareModel parse_hardware(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw HardwareError(std::string("device JSON is malformed: ") + e.what());
  }
  try {
    if (!doc.is_object()) {
      throw HardwareError("device JSON must be an object");
    }
    for (const char *key : {"name", "num_qubits", "edges", "cx_error"}) {
      if (!doc.contains(key)) {
        throw HardwareError(std::string("device JSON lacks required key '") + key + "'");
      }
    }
    const auto name = doc.at("name").get<std::string>();
    const auto num_qubits = doc.at("num_qubits").get<std::int64_t>();
    if (num_qubits <= 0) {
      throw HardwareError("num_qubits must be positive");
    }
    std::vector<Edge> edges;
    for (const auto &e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw HardwareError("each edge must be a [u, v] pair");
      }
      const auto u = e[0].get<std::int64_t>();
      const auto v = e[1].get<std::int64_t>();
      if (u < 0 || v < 0) {
        throw HardwareError("edge endpoints must be non-negative");
      }
      edges.emplace_back(static_cast<Qubit>(u), static_cast<Qubit>(v));
    }
    std::vector<CxError> errors;
    for (const auto &entry : doc.at("cx_error")) {
      const auto c = entry.at("control").get<std::int64_t>();
      const auto t = entry.at("target").get<std::int64_t>();
      if (c < 0 || t < 0) {
        throw HardwareError("cx_error endpoints must be non-negative");
      }
      errors.push_back({static_cast<Qubit>(c), static_cast<Qubit>(t), entry.at("error").get<double>()});
    }
    return make_hardware(name, static_cast<std::size_t>(num_qubits), std::move(edges), std::move(errors));
  } catch (const json::exception &e) {
    throw HardwareError(std::string("device JSON schema violation: ") + e.what());
  }
}

HardwareModel load_hardware(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw HardwareError("cannot read device file '" + path.string() + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_hardware(buffer.str());
}

std::string hardware_to_json(const HardwareModel &hw) {
  using nlohmann::json;
  json doc;
  doc["name"] = hw.name();
  doc["num_qubits"] = hw.num_nodes();
  doc["edges"] = json::array();
  doc["cx_error"] = json::array();
  for (const auto &[u, v] : hw.graph().edges()) {
    doc["edges"].push_back({u, v});
  }
  for (const auto &[u, v] : hw.graph().edges()) {
    for (auto [c, t] : {Edge{u, v}, Edge{v, u}}) {
      doc["cx_error"].push_back({{"control", c}, {"target", t}, {"error", hw.calib().error(c, t)}});
    }
  }
  return doc.dump(2);
}

std::size_t physical_distance(const Gate &gate, const Mapping &mapping, const HardwareModel &hw) {
  if (!gate.is_two_qubit()) {
    throw std::invalid_argument("physical distance is defined for two-qubit gates only");
  }
  return hw.distance(mapping.physical(gate.qubit(0)), mapping.physical(gate.qubit(1)));
}

double swap_fidelity(Edge edge, const CalibrationData &calib) {
  const double forward = 1.0 - calib.error(edge.first, edge.second);
  const double backward = 1.0 - calib.error(edge.second, edge.first);
  return forward * forward * backward;
}

std::size_t worst_case_depth_bound(std::size_t num_two_qubit_gates, const HardwareModel &hw) {
  // A single-node device has diameter 0 and no two-qubit gates to bound.
  const std::size_t per_gate = hw.diameter() == 0 ? 1 : 3 * hw.diameter() - 2;
  return num_two_qubit_gates * per_gate;
}

std::optional<std::size_t> first_violation(const QuantumCircuit &circuit, const CouplingGraph &graph) {
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const Gate &g = circuit[i];
    if (g.is_two_qubit() && !graph.has_edge(g.qubit(0), g.qubit(1))) {
      return i;
    }
  }
  return std::nullopt;
}

}  // namespace agentmap
