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
#include <stdexcept>
#include <vector>

#include "agentmap/circuit.hpp"
#include "agentmap/dag.hpp"
#include "agentmap/hardware.hpp"
#include "agentmap/mapping.hpp"
#include "agentmap/rng.hpp"

namespace agentmap {

/// Raised when routing fails to make progress on a connected device.
class RoutingDefect : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Shared, read-only data for every agent routing one circuit. Holds
/// references: the circuit and hardware must outlive the context.
class RoutingContext {
 public:
  /// variation_aware = false selects the MA_NA model where every CX error and
  /// e_max are replaced by `uniform_error`.
  RoutingContext(const QuantumCircuit &circuit, const HardwareModel &hw, bool variation_aware = true,
                 double uniform_error = 0.0);

  const QuantumCircuit &circuit() const { return *circuit_; }
  const HardwareModel &hw() const { return *hw_; }
  const std::shared_ptr<const DependencyDag> &dag() const { return dag_; }
  bool variation_aware() const { return variation_aware_; }
  double uniform_error() const { return uniform_error_; }

  /// |G_ori|: two-qubit gates of the logical circuit.
  std::size_t original_two_qubit_count() const { return g_ori_; }
  /// 3D - 2.
  std::size_t per_gate_worst_depth() const { return per_gate_; }
  /// Error used by the fitness model for CX(control, target) on an edge.
  double cx_error(Qubit control, Qubit target) const;
  double e_max() const { return e_max_; }
  double log_cx_keep(Qubit control, Qubit target) const { return log_keep_[control * n_ + target]; }
  /// log fid(SWAP(u, v)) for the oriented edge (u, v).
  double log_swap_keep(Qubit u, Qubit v) const { return 2.0 * log_cx_keep(u, v) + log_cx_keep(v, u); }

 private:
  const QuantumCircuit *circuit_;
  const HardwareModel *hw_;
  std::shared_ptr<const DependencyDag> dag_;
  bool variation_aware_;
  double uniform_error_;
  std::size_t g_ori_ = 0;
  std::size_t per_gate_ = 1;
  double e_max_ = 0.0;
  std::size_t n_ = 0;
  std::vector<double> log_keep_;
};

/// Fitness kept in log space: raw products underflow on large circuits.
struct FitnessValue {
  double log_value = 0.0;
  double value() const;
  bool operator<(const FitnessValue &o) const { return log_value < o.log_value; }
};

/// Agent fitness from its ingredients. log_gate_keep is the sum of
/// log(1 - err) over executed CX (SWAPs expanded).
FitnessValue fitness_from_terms(std::size_t depth, double log_gate_keep, std::size_t remaining_two_qubit,
                                std::size_t original_two_qubit, std::size_t diameter, double e_max);

/// One routing agent: the triple (pi, vcir, pcir) plus its random stream.
/// pcir is stored as a trace of executed gate indices and inserted SWAPs
/// and materialized on demand by physical_circuit().
class Agent {
 public:
  /// Executes every gate already executable under `initial`.
  Agent(std::size_t id, const RoutingContext &ctx, Mapping initial, Rng rng);

  std::size_t id() const { return id_; }
  const RoutingContext &context() const { return *ctx_; }
  const Mapping &initial_mapping() const { return initial_; }
  const Mapping &mapping() const { return pi_; }
  const ResidualDag &residual() const { return vcir_; }
  bool finished() const { return vcir_.empty(); }

  std::size_t swap_count() const { return swaps_; }
  std::size_t executed_count() const { return trace_.size() - swaps_; }
  std::size_t remaining_two_qubit() const { return remaining_2q_; }
  /// ASAP depth of pcir with SWAPs expanded.
  std::size_t depth() const { return depth_; }
  double log_gate_keep() const { return log_keep_; }
  FitnessValue fitness() const;

  /// Front two-qubit gates, as gate indices.
  std::vector<std::uint32_t> front_two_qubit() const;

  Rng &rng() { return rng_; }

  /// Applies a SWAP on the edge and drains newly executable gates.
  void apply_swap(Edge oriented);

  /// Takes over best's routing state; keeps this agent's id and rng.
  void adopt(const Agent &best);

  QuantumCircuit physical_circuit() const;

  /// SWAPs inserted since the last gate execution.
  std::size_t stall() const { return stall_; }

 private:
  void drain();
  void execute(std::uint32_t node);
  void bump(Qubit a, Qubit b, std::uint32_t levels);

  std::size_t id_;
  const RoutingContext *ctx_;
  Mapping initial_;
  Mapping pi_;
  ResidualDag vcir_;
  std::vector<std::uint32_t> trace_;
  std::vector<std::uint32_t> node_level_;
  std::size_t depth_ = 0;
  std::size_t swaps_ = 0;
  std::size_t remaining_2q_ = 0;
  double log_keep_ = 0.0;
  std::size_t stall_ = 0;
  Rng rng_;
};

/// Edges incident to a front gate's node whose SWAP shortens at least one
/// front gate. Each edge appears once, oriented so that the SWAP's outer
/// CXs use the lower-error direction (variation-aware) or the lower node
/// first (MA_NA); sorted by normalized edge.
std::vector<Edge> candidate_swaps(const Agent &agent);

/// Total distance reduction over front two-qubit gates.
int reward(Edge swap, const Agent &agent);

/// Roulette among the max-reward candidates weighted by SWAP fidelity, or
/// uniformly when variation_aware is false.
Edge select_swap(std::span<const Edge> candidates, std::span<const int> rewards, const HardwareModel &hw,
                 bool variation_aware, Rng &rng);

/// One decision step. Throws std::logic_error on a finished agent and
/// RoutingDefect when no candidate exists or the agent stalls for |V|^2
/// SWAPs.
Edge step_agent(Agent &agent);

FitnessValue fitness(const Agent &agent);

}  // namespace agentmap
