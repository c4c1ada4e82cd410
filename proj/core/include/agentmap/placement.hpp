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

#include "agentmap/agent.hpp"
#include "agentmap/circuit.hpp"
#include "agentmap/hardware.hpp"
#include "agentmap/mapping.hpp"
#include "agentmap/rng.hpp"
#include "agentmap/simulator.hpp"

namespace agentmap {

struct PlacementConfig {
  std::size_t outer_iters = 10;  // I
  std::size_t inner_iters = 5;   // J
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
  /// Router model used inside the search (false = MA_NA).
  bool variation_aware = true;
  double uniform_error = 0.0;

  void validate() const;
};

/// Uniformly random injective assignment. Throws std::invalid_argument when
/// num_logical exceeds the device size.
Mapping random_mapping(std::size_t num_logical, const HardwareModel &hw, Rng &rng);

/// Shuffles the whole node array (occupied nodes first, then free ones) and
/// keeps the first num_logical entries. On a full device this permutes the
/// image; otherwise qubits can land anywhere.
Mapping shuffle_perturb(const Mapping &mapping, Rng &rng);

struct RoutedCircuit {
  QuantumCircuit circuit;
  Mapping initial;
  Mapping final_mapping;
  std::size_t swaps = 0;
};

/// Single-agent router (reward, roulette, SWAP fidelity) from the given mapping.
RoutedCircuit inner_route(const RoutingContext &ctx, const Mapping &mapping, Rng &rng);
RoutedCircuit inner_route(const QuantumCircuit &circuit, const HardwareModel &hw, const Mapping &mapping, Rng &rng,
                          bool variation_aware = true, double uniform_error = 0.0);

struct PlacementResult {
  Mapping mapping;
  double best_pst = 0.0;
  std::size_t evaluations = 0;
};

/// Iterated local search over a reduced symmetric circuit: I restarts from a shuffle of
/// the incumbent, J chained route-and-simulate steps each.
PlacementResult ils_place(const QuantumCircuit &reduced, const HardwareModel &hw, const NoiseModel &noise,
                          const PlacementConfig &cfg);

}  // namespace agentmap
