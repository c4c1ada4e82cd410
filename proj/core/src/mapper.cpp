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

#include "agentmap/mapper.hpp"

#include <stdexcept>
#include <string>

#include "agentmap/parallel.hpp"
#include "agentmap/simulator.hpp"

namespace agentmap {

const char *mode_name(MapMode mode) { return mode == MapMode::MA ? "MA" : "MA_NA"; }

MapResult map_circuit(const QuantumCircuit &circuit, const HardwareModel &hw, const MapperConfig &cfg) {
  if (circuit.num_qubits() > hw.num_nodes()) {
    throw std::invalid_argument("circuit needs " + std::to_string(circuit.num_qubits()) + " qubits but " +
                                hw.name() + " has " + std::to_string(hw.num_nodes()));
  }
  const bool aware = cfg.mode == MapMode::MA;
  const double uniform = cfg.uniform_error.value_or(hw.calib().mean_error());

  RoutingConfig rc;
  rc.groups = cfg.groups;
  rc.group_size = cfg.group_size;
  rc.C = cfg.C;
  rc.variation_aware = aware;
  rc.uniform_error = uniform;
  rc.seed = cfg.seed;
  rc.stop_inclusive = cfg.stop_inclusive;
  rc.threads = cfg.threads;
  rc.validate();

  const QuantumCircuit reduced = reduced_symmetric_circuit(circuit);
  const NoiseModel noise = aware ? NoiseModel::variation() : NoiseModel::uniform(uniform);
  const std::size_t total = rc.num_agents();
  std::vector<std::optional<PlacementResult>> placed(total);
  parallel_for(total, cfg.threads, [&](std::size_t i) {
    PlacementConfig pc;
    pc.outer_iters = cfg.outer_iters;
    pc.inner_iters = cfg.inner_iters;
    pc.shots = cfg.placement_shots;
    pc.seed = mix_seed(cfg.seed, i);
    pc.variation_aware = aware;
    pc.uniform_error = uniform;
    placed[i] = ils_place(reduced, hw, noise, pc);
  });

  std::vector<Mapping> initial;
  MapResult result;
  result.uniform_error = uniform;
  initial.reserve(total);
  for (auto &p : placed) {
    initial.push_back(p->mapping);
    result.placement_pst.push_back(p->best_pst);
  }
  result.routing = route(circuit, hw, initial, rc);
  return result;
}

}  // namespace agentmap
