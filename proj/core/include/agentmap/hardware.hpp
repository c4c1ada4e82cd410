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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agentmap/circuit.hpp"
#include "agentmap/mapping.hpp"

namespace agentmap {

/// Unordered node pair; stored with first < second unless it is an oriented
/// SWAP choice (see candidate_swaps()).
using Edge = std::pair<Qubit, Qubit>;

inline Edge normalized(Edge e) {
  return e.first < e.second ? e : Edge{e.second, e.first};
}

/// Raised for unreadable or invalid device descriptions.
class HardwareError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Undirected coupling graph without self-loops or duplicate edges.
class CouplingGraph {
 public:
  CouplingGraph() = default;
  /// Throws HardwareError on self-loops, duplicates or out-of-range nodes.
  CouplingGraph(std::size_t num_nodes, std::vector<Edge> edges);

  std::size_t num_nodes() const { return adjacency_.size(); }
  /// Normalized edges in ascending order.
  const std::vector<Edge> &edges() const { return edges_; }
  const std::vector<Qubit> &neighbors(Qubit node) const { return adjacency_[node]; }
  bool has_edge(Qubit u, Qubit v) const;
  bool is_connected() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Qubit>> adjacency_;
};

struct CxError {
  Qubit control;
  Qubit target;
  double error;
};

/// Directed CX error rates for every coupling edge.
class CalibrationData {
 public:
  CalibrationData() = default;
  /// Every edge direction must be present; errors must lie in [0, 1).
  CalibrationData(const CouplingGraph &graph, const std::vector<CxError> &errors);

  /// Throws std::invalid_argument when (control, target) is not an edge.
  double error(Qubit control, Qubit target) const;
  bool has(Qubit control, Qubit target) const;
  double e_max() const { return e_max_; }
  double mean_error() const { return mean_; }
  std::size_t num_nodes() const { return n_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> table_;
  double e_max_ = 0.0;
  double mean_ = 0.0;
};

/// Coupling graph, calibration, all-pairs hop distances and diameter.
class HardwareModel {
 public:
  HardwareModel() = default;
  /// Throws HardwareError if the graph is disconnected.
  HardwareModel(std::string name, CouplingGraph graph, CalibrationData calib,
                std::vector<std::string> warnings = {});

  const std::string &name() const { return name_; }
  const CouplingGraph &graph() const { return graph_; }
  const CalibrationData &calib() const { return calib_; }
  std::size_t num_nodes() const { return graph_.num_nodes(); }
  std::size_t distance(Qubit u, Qubit v) const { return dist_[u * num_nodes() + v]; }
  std::size_t diameter() const { return diameter_; }
  const std::vector<std::string> &warnings() const { return warnings_; }

 private:
  std::string name_;
  CouplingGraph graph_;
  CalibrationData calib_;
  std::vector<std::uint32_t> dist_;
  std::size_t diameter_ = 0;
  std::vector<std::string> warnings_;
};

/// Builds a model, copying a single supplied edge direction to the missing
/// one (recorded in warnings()).
HardwareModel make_hardware(std::string name, std::size_t num_qubits, std::vector<Edge> edges,
                            std::vector<CxError> cx_errors);

/// Parses the device JSON schema:
///   {"name": str, "num_qubits": int, "edges": [[u,v],...],
///    "cx_error": [{"control":u,"target":v,"error":x},...]}
HardwareModel parse_hardware(std::string_view json_text);
HardwareModel load_hardware(const std::filesystem::path &path);
std::string hardware_to_json(const HardwareModel &hw);

/// Hop distance between the nodes hosting a two-qubit gate's operands.
/// Throws std::invalid_argument for single-qubit gates.
std::size_t physical_distance(const Gate &gate, const Mapping &mapping, const HardwareModel &hw);

/// (1 - err(u,v))^2 * (1 - err(v,u)) for the oriented edge (u, v).
double swap_fidelity(Edge edge, const CalibrationData &calib);

/// |G| * (3D - 2).
std::size_t worst_case_depth_bound(std::size_t num_two_qubit_gates, const HardwareModel &hw);

/// Index of the first two-qubit gate not acting on a coupling edge.
std::optional<std::size_t> first_violation(const QuantumCircuit &circuit, const CouplingGraph &graph);
inline bool is_topology_compliant(const QuantumCircuit &circuit, const CouplingGraph &graph) {
  return !first_violation(circuit, graph).has_value();
}

}  // namespace agentmap
