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
#include <span>
#include <vector>

#include "agentmap/agent.hpp"
#include "agentmap/circuit.hpp"
#include "agentmap/hardware.hpp"
#include "agentmap/mapping.hpp"
#include "agentmap/rng.hpp"

namespace agentmap {

struct RoutingConfig {
  std::size_t groups = 20;     // m
  std::size_t group_size = 5;  // n
  double C = 1.0;
  bool variation_aware = true;
  /// Error assumed for every CX when variation_aware is false.
  double uniform_error = 0.0;
  std::uint64_t seed = 0;
  /// Stop once finished agents >= n instead of > n.
  bool stop_inclusive = false;
  unsigned threads = 1;

  std::size_t num_agents() const { return groups * group_size; }
  /// Throws std::invalid_argument on m = 0, n = 0 or C < 0.
  void validate() const;
};

/// Agent indices sorted by fitness descending (ties: lower index first),
/// dealt into m groups: group k holds sorted positions k, k+m, k+2m, ...
std::vector<std::vector<std::size_t>> rank_and_partition(std::span<const FitnessValue> fitness, std::size_t m,
                                                         std::size_t n);

/// Evolution test: r * delta_g * fit_best / fit_worst > C.
bool evolution_predicate(double r, double delta_g, double fit_best, double fit_worst, double C);

/// Same test with the fitness ratio given as log(fit_best) - log(fit_worst).
bool evolution_predicate_log(double r, double delta_g, double log_ratio, double C);

struct EvolutionStats {
  std::size_t evolved = 0;
};

/// For every group draws r, and when the evolution test holds copies the
/// group's best agent over its worst. Finished agents are never overwritten.
EvolutionStats evolve_groups(std::vector<Agent> &agents, const std::vector<std::vector<std::size_t>> &groups,
                             std::span<const FitnessValue> fitness, double C, Rng &rng);

struct AgentStats {
  std::size_t id = 0;
  bool finished = false;
  std::size_t swaps = 0;
  std::size_t remaining_two_qubit = 0;
  double log_fitness = 0.0;
};

struct RoutingReport {
  std::size_t swaps = 0;
  std::size_t g_add = 0;
  std::size_t depth = 0;
  std::size_t iterations = 0;
  std::size_t best_agent = 0;
  std::size_t evolutions = 0;
  double log_fitness = 0.0;
  std::vector<AgentStats> agents;
};

struct RoutingResult {
  QuantumCircuit physical;
  Mapping initial_mapping;
  Mapping final_mapping;
  RoutingReport report;
};

/// Multi-agent routing loop. initial_mappings must hold m * n entries. Returns the
/// best-fitness finished agent's circuit. Throws RoutingDefect when the
/// loop exceeds |G| * |V|^2 iterations.
RoutingResult route(const QuantumCircuit &circuit, const HardwareModel &hw, std::span<const Mapping> initial_mappings,
                    const RoutingConfig &cfg);

}  // namespace agentmap
