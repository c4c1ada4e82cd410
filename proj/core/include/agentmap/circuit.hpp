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

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace agentmap {

using Qubit = std::uint32_t;

enum class GateKind : std::uint8_t {
  H,
  X,
  Y,
  Z,
  S,
  Sdg,
  T,
  Tdg,
  RX,
  RY,
  RZ,
  U1,
  U2,
  U3,
  CX,
  SWAP,
};

/// Lower-case OpenQASM 2.0 name of the gate kind.
std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);
std::size_t gate_arity(GateKind kind);
std::size_t gate_param_count(GateKind kind);

/// Maps computational basis states to basis states (up to a phase).
bool is_basis_preserving(GateKind kind);

/// A single gate instance. Qubit order matters: for CX, qubit(0) is the
/// control and qubit(1) the target. Unused qubit and parameter slots are
/// zero so that defaulted equality is structural.
class Gate {
 public:
  Gate(GateKind kind, std::span<const Qubit> qubits, std::span<const double> params = {});

  static Gate single(GateKind kind, Qubit q, std::initializer_list<double> params = {});
  static Gate cx(Qubit control, Qubit target);
  static Gate swap(Qubit a, Qubit b);

  GateKind kind() const { return kind_; }
  std::size_t arity() const { return arity_; }
  bool is_two_qubit() const { return arity_ == 2; }
  Qubit qubit(std::size_t i) const { return qubits_[i]; }
  std::span<const Qubit> qubits() const { return {qubits_.data(), arity_}; }
  std::span<const double> params() const { return {params_.data(), num_params_}; }
  bool acts_on(Qubit q) const;

  /// Same gate with every qubit q replaced by table[q].
  Gate remapped(std::span<const Qubit> table) const;

  bool operator==(const Gate &) const = default;

 private:
  GateKind kind_;
  std::uint8_t arity_ = 0;
  std::uint8_t num_params_ = 0;
  std::array<Qubit, 2> qubits_{};
  std::array<double, 3> params_{};
};

class QuantumCircuit {
 public:
  explicit QuantumCircuit(std::size_t num_qubits = 0) : num_qubits_(num_qubits) {}

  /// Appends a gate; throws std::out_of_range when a qubit index is not below
  /// num_qubits().
  void add(const Gate &gate);

  std::size_t num_qubits() const { return num_qubits_; }
  const std::vector<Gate> &gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }
  const Gate &operator[](std::size_t i) const { return gates_[i]; }

  std::size_t two_qubit_count() const;
  std::size_t count(GateKind kind) const;

  bool operator==(const QuantumCircuit &) const = default;

 private:
  std::size_t num_qubits_;
  std::vector<Gate> gates_;
};

/// Replaces every SWAP(a, b) by CX(a, b); CX(b, a); CX(a, b).
QuantumCircuit decompose_swaps(const QuantumCircuit &circuit);

/// ASAP depth with each SWAP counted as its three-CX decomposition.
std::size_t circuit_depth(const QuantumCircuit &circuit);

/// First two-qubit gate of every unordered interacting pair, in circuit
/// order, followed by the same gates reversed. Single-qubit gates are dropped.
QuantumCircuit reduced_symmetric_circuit(const QuantumCircuit &circuit);

}  // namespace agentmap
