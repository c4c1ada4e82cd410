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

#include "agentmap/placement.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

namespace agentmap {

void PlacementConfig::validate() const {
  if (outer_iters == 0 || inner_iters == 0) throw std::invalid_argument("ILS iteration counts must be positive");
  if (shots == 0) throw std::invalid_argument("placement shots must be positive");
}

Mapping random_mapping(std::size_t num_logical, const HardwareModel &hw, Rng &rng) {
  const std::size_t nodes = hw.num_nodes();
  if (num_logical > nodes) {
    throw std::invalid_argument("cannot place " + std::to_string(num_logical) + " logical qubits on " +
                                std::to_string(nodes) + " nodes");
  }
  std::vector<Qubit> pool(nodes);
  std::iota(pool.begin(), pool.end(), Qubit{0});
  rng.shuffle(std::span<Qubit>(pool));
  pool.resize(num_logical);
  return Mapping(std::move(pool), nodes);
}

Mapping shuffle_perturb(const Mapping &mapping, Rng &rng) {
  std::vector<Qubit> image = mapping.assignment();
  for (Qubit v = 0; v < mapping.num_physical(); ++v)
    if (!mapping.logical_at(v)) image.push_back(v);
  rng.shuffle(std::span<Qubit>(image));
  image.resize(mapping.num_logical());
  return Mapping(std::move(image), mapping.num_physical());
}

RoutedCircuit inner_route(const RoutingContext &ctx, const Mapping &mapping, Rng &rng) {
  Agent agent(0, ctx, mapping, Rng(rng()));
  while (!agent.finished()) step_agent(agent);
  return {agent.physical_circuit(), mapping, agent.mapping(), agent.swap_count()};
}

RoutedCircuit inner_route(const QuantumCircuit &circuit, const HardwareModel &hw, const Mapping &mapping, Rng &rng,
                          bool variation_aware, double uniform_error) {
  const RoutingContext ctx(circuit, hw, variation_aware, uniform_error);
  return inner_route(ctx, mapping, rng);
}

PlacementResult ils_place(const QuantumCircuit &reduced, const HardwareModel &hw, const NoiseModel &noise,
                          const PlacementConfig &cfg) {
  cfg.validate();
  const RoutingContext ctx(reduced, hw, cfg.variation_aware, cfg.uniform_error);
  Rng rng(cfg.seed);
  // One simulation seed for every evaluation: candidates are compared under
  // common random numbers.
  const std::uint64_t sim_seed = mix_seed(cfg.seed, 0x51);

  PlacementResult result{random_mapping(reduced.num_qubits(), hw, rng), 0.0, 0};
  for (std::size_t i = 0; i < cfg.outer_iters; ++i) {
    Mapping pi0 = shuffle_perturb(result.mapping, rng);
    for (std::size_t j = 0; j < cfg.inner_iters; ++j) {
      RoutedCircuit routed = inner_route(ctx, pi0, rng);
      const double p = estimate_pst(routed.circuit, std::uint64_t{0}, hw, noise, cfg.shots, sim_seed,
                                    routed.final_mapping.assignment())
                           .pst;
      ++result.evaluations;
      if (p > result.best_pst) {
        result.mapping = pi0;
        result.best_pst = p;
      }
      pi0 = std::move(routed.final_mapping);
    }
  }
  return result;
}

}  // namespace agentmap
