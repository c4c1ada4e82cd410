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
#include <vector>

#include "agentmap/circuit.hpp"
#include "agentmap/hardware.hpp"
#include "agentmap/placement.hpp"
#include "agentmap/routing.hpp"

namespace agentmap {

enum class MapMode { MA, MA_NA };

struct MapperConfig {
  std::size_t groups = 20;
  std::size_t group_size = 5;
  double C = 1.0;
  std::size_t outer_iters = 10;
  std::size_t inner_iters = 5;
  std::uint64_t placement_shots = 1024;
  std::uint64_t seed = 0;
  MapMode mode = MapMode::MA;
  /// MA_NA error rate; defaults to the calibration mean.
  std::optional<double> uniform_error;
  bool stop_inclusive = false;
  unsigned threads = 1;
};

struct MapResult {
  RoutingResult routing;
  std::vector<double> placement_pst;
  double uniform_error = 0.0;
};

/// Full pipeline: one ILS placement per agent on the reduced symmetric
/// circuit (agent i seeded with mix_seed(seed, i)), then multi-agent routing.
/// Throws std::invalid_argument when the circuit does not fit the device.
MapResult map_circuit(const QuantumCircuit &circuit, const HardwareModel &hw, const MapperConfig &cfg);

const char *mode_name(MapMode mode);

}  // namespace agentmap
