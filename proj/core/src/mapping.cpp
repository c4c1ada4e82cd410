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

#include "agentmap/mapping.hpp"

#include <numeric>
#include <stdexcept>

namespace agentmap {

Mapping::Mapping(std::vector<Qubit> logical_to_physical, std::size_t num_physical)
    : to_physical_(std::move(logical_to_physical)), to_logical_(num_physical, kFree) {
  if (to_physical_.size() > num_physical) {
    throw std::invalid_argument("cannot map " + std::to_string(to_physical_.size()) +
                                " logical qubits onto " + std::to_string(num_physical) +
                                " physical qubits");
  }
  for (std::size_t q = 0; q < to_physical_.size(); ++q) {
    const Qubit node = to_physical_[q];
    if (node >= num_physical) {
      throw std::invalid_argument("logical qubit " + std::to_string(q) + " mapped to node " +
                                  std::to_string(node) + " outside the device");
    }
    if (to_logical_[node] != kFree) {
      throw std::invalid_argument("node " + std::to_string(node) + " assigned twice");
    }
    to_logical_[node] = static_cast<std::int32_t>(q);
  }
}

Mapping Mapping::identity(std::size_t num_logical, std::size_t num_physical) {
  std::vector<Qubit> nodes(num_logical);
  std::iota(nodes.begin(), nodes.end(), Qubit{0});
  return Mapping(std::move(nodes), num_physical);
}

std::optional<Qubit> Mapping::logical_at(Qubit node) const {
  const std::int32_t q = to_logical_[node];
  if (q == kFree) {
    return std::nullopt;
  }
  return static_cast<Qubit>(q);
}

void Mapping::swap_nodes(Qubit u, Qubit v) {
  std::swap(to_logical_[u], to_logical_[v]);
  if (to_logical_[u] != kFree) {
    to_physical_[static_cast<std::size_t>(to_logical_[u])] = u;
  }
  if (to_logical_[v] != kFree) {
    to_physical_[static_cast<std::size_t>(to_logical_[v])] = v;
  }
}

std::string Mapping::to_string() const {
  std::string out = "[";
  for (std::size_t q = 0; q < to_physical_.size(); ++q) {
    if (q != 0) {
      out += ' ';
    }
    out += std::to_string(to_physical_[q]);
  }
  return out + "]";
}

}  // namespace agentmap
