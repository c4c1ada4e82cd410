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
#include <memory>
#include <span>
#include <vector>

#include "agentmap/circuit.hpp"

namespace agentmap {

/// Gate precedence graph. Node i is gate i of the source circuit; there is an
/// edge i -> j when j is the next gate after i on some shared qubit. Since a
/// gate touches at most two qubits, every node has at most two predecessors.
class DependencyDag {
 public:
  DependencyDag() = default;
  explicit DependencyDag(const QuantumCircuit &circuit);

  std::size_t size() const { return successors_.size(); }
  bool empty() const { return successors_.empty(); }
  std::span<const std::uint32_t> successors(std::size_t node) const { return successors_[node]; }
  std::span<const std::uint32_t> predecessors(std::size_t node) const { return predecessors_[node]; }
  std::size_t in_degree(std::size_t node) const { return predecessors_[node].size(); }
  std::size_t edge_count() const;

 private:
  std::vector<std::vector<std::uint32_t>> successors_;
  std::vector<std::vector<std::uint32_t>> predecessors_;
};

DependencyDag build_dag(const QuantumCircuit &circuit);

/// Nodes with in-degree zero, ascending.
std::vector<std::size_t> front_layer(const DependencyDag &dag);

struct LayerPartition {
  std::vector<std::vector<std::size_t>> layers;
};

/// Repeatedly peels the front layer. SWAPs count as one node here; use
/// circuit_depth() for depth after SWAP decomposition.
LayerPartition layer_partition(const DependencyDag &dag);

/// The not-yet-executed part of a DAG. Cheap to copy: it shares the DAG and
/// owns one byte of pending-predecessor count per node plus the front list.
class ResidualDag {
 public:
  explicit ResidualDag(std::shared_ptr<const DependencyDag> dag);

  /// Current front layer, ascending.
  const std::vector<std::uint32_t> &front() const { return front_; }
  std::size_t remaining() const { return remaining_; }
  bool empty() const { return remaining_ == 0; }
  bool is_executed(std::size_t node) const { return pending_[node] == kExecuted; }

  /// Removes a front node and promotes successors whose predecessors are all
  /// executed. Throws std::logic_error if the node is not in the front.
  void remove(std::uint32_t node);

 private:
  static constexpr std::uint8_t kExecuted = 0xff;

  std::shared_ptr<const DependencyDag> dag_;
  std::vector<std::uint8_t> pending_;
  std::vector<std::uint32_t> front_;
  std::size_t remaining_ = 0;
};

}  // namespace agentmap
