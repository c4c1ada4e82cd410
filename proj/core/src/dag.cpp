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

#include "agentmap/dag.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace agentmap {

DependencyDag::DependencyDag(const QuantumCircuit &circuit)
    : successors_(circuit.size()), predecessors_(circuit.size()) {
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> last(circuit.num_qubits(), kNone);
  for (std::uint32_t i = 0; i < circuit.size(); ++i) {
    for (Qubit q : circuit[i].qubits()) {
      const std::uint32_t prev = last[q];
      if (prev != kNone) {
        auto &preds = predecessors_[i];
        if (std::find(preds.begin(), preds.end(), prev) == preds.end()) {
          preds.push_back(prev);
          successors_[prev].push_back(i);
        }
      }
      last[q] = i;
    }
  }
}

std::size_t DependencyDag::edge_count() const {
  std::size_t total = 0;
  for (const auto &s : successors_) {
    total += s.size();
  }
  return total;
}

DependencyDag build_dag(const QuantumCircuit &circuit) { return DependencyDag(circuit); }

std::vector<std::size_t> front_layer(const DependencyDag &dag) {
  std::vector<std::size_t> front;
  for (std::size_t i = 0; i < dag.size(); ++i) {
    if (dag.in_degree(i) == 0) {
      front.push_back(i);
    }
  }
  return front;
}

LayerPartition layer_partition(const DependencyDag &dag) {
  LayerPartition partition;
  std::vector<std::size_t> pending(dag.size());
  for (std::size_t i = 0; i < dag.size(); ++i) {
    pending[i] = dag.in_degree(i);
  }
  std::vector<std::size_t> current = front_layer(dag);
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t node : current) {
      for (std::uint32_t succ : dag.successors(node)) {
        if (--pending[succ] == 0) {
          next.push_back(succ);
        }
      }
    }
    std::sort(next.begin(), next.end());
    partition.layers.push_back(std::move(current));
    current = std::move(next);
  }
  return partition;
}

ResidualDag::ResidualDag(std::shared_ptr<const DependencyDag> dag)
    : dag_(std::move(dag)), pending_(dag_->size()), remaining_(dag_->size()) {
  for (std::size_t i = 0; i < dag_->size(); ++i) {
    pending_[i] = static_cast<std::uint8_t>(dag_->in_degree(i));
    if (pending_[i] == 0) {
      front_.push_back(static_cast<std::uint32_t>(i));
    }
  }
}

void ResidualDag::remove(std::uint32_t node) {
  auto it = std::lower_bound(front_.begin(), front_.end(), node);
  if (it == front_.end() || *it != node) {
    throw std::logic_error("node " + std::to_string(node) + " is not in the front layer");
  }
  front_.erase(it);
  pending_[node] = kExecuted;
  --remaining_;
  for (std::uint32_t succ : dag_->successors(node)) {
    if (--pending_[succ] == 0) {
      front_.insert(std::lower_bound(front_.begin(), front_.end(), succ), succ);
    }
  }
}

}  // namespace agentmap
