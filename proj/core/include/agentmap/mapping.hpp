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
#include <optional>
#include <string>
#include <vector>

#include "agentmap/circuit.hpp"

namespace agentmap {

/// Injective assignment of logical qubits to physical nodes. Nodes that host
/// no logical qubit are free; swapping with a free node just moves the
/// logical qubit.
class Mapping {
 public:
  Mapping() = default;

  /// Throws std::invalid_argument if the assignment is not injective or
  /// names a node >= num_physical.
  Mapping(std::vector<Qubit> logical_to_physical, std::size_t num_physical);

  static Mapping identity(std::size_t num_logical, std::size_t num_physical);

  std::size_t num_logical() const { return to_physical_.size(); }
  std::size_t num_physical() const { return to_logical_.size(); }

  Qubit physical(Qubit logical) const { return to_physical_[logical]; }
  std::optional<Qubit> logical_at(Qubit node) const;
  const std::vector<Qubit> &assignment() const { return to_physical_; }

  /// Exchanges whatever the two nodes host.
  void swap_nodes(Qubit u, Qubit v);

  std::string to_string() const;

  bool operator==(const Mapping &) const = default;

 private:
  static constexpr std::int32_t kFree = -1;

  std::vector<Qubit> to_physical_;
  std::vector<std::int32_t> to_logical_;
};

}  // namespace agentmap
