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

#include "agentmap/circuit.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace agentmap {

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  std::uint8_t arity;
  std::uint8_t params;
  bool basis_preserving;
};

constexpr std::array<KindInfo, 16> kKinds{{
    {GateKind::H, "h", 1, 0, false},
    {GateKind::X, "x", 1, 0, true},
    {GateKind::Y, "y", 1, 0, true},
    {GateKind::Z, "z", 1, 0, true},
    {GateKind::S, "s", 1, 0, true},
    {GateKind::Sdg, "sdg", 1, 0, true},
    {GateKind::T, "t", 1, 0, true},
    {GateKind::Tdg, "tdg", 1, 0, true},
    {GateKind::RX, "rx", 1, 1, false},
    {GateKind::RY, "ry", 1, 1, false},
    {GateKind::RZ, "rz", 1, 1, true},
    {GateKind::U1, "u1", 1, 1, true},
    {GateKind::U2, "u2", 1, 2, false},
    {GateKind::U3, "u3", 1, 3, false},
    {GateKind::CX, "cx", 2, 0, true},
    {GateKind::SWAP, "swap", 2, 0, true},
}};

const KindInfo &info(GateKind kind) {
  return kKinds[static_cast<std::size_t>(kind)];
}

}  // namespace

std::string_view gate_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
  for (const auto &k : kKinds) {
    if (k.name == name) {
      return k.kind;
    }
  }
  return std::nullopt;
}

std::size_t gate_arity(GateKind kind) { return info(kind).arity; }
std::size_t gate_param_count(GateKind kind) { return info(kind).params; }
bool is_basis_preserving(GateKind kind) { return info(kind).basis_preserving; }

Gate::Gate(GateKind kind, std::span<const Qubit> qubits, std::span<const double> params)
    : kind_(kind) {
  const auto &k = info(kind);
  if (qubits.size() != k.arity) {
    throw std::invalid_argument("gate '" + std::string(k.name) + "' expects " +
                                std::to_string(k.arity) + " qubit(s), got " +
                                std::to_string(qubits.size()));
  }
  if (params.size() != k.params) {
    throw std::invalid_argument("gate '" + std::string(k.name) + "' expects " +
                                std::to_string(k.params) + " parameter(s), got " +
                                std::to_string(params.size()));
  }
  if (k.arity == 2 && qubits[0] == qubits[1]) {
    throw std::invalid_argument("gate '" + std::string(k.name) + "' acts twice on qubit " +
                                std::to_string(qubits[0]));
  }
  arity_ = k.arity;
  num_params_ = k.params;
  std::copy(qubits.begin(), qubits.end(), qubits_.begin());
  std::copy(params.begin(), params.end(), params_.begin());
}

Gate Gate::single(GateKind kind, Qubit q, std::initializer_list<double> params) {
  return Gate(kind, std::span<const Qubit>(&q, 1), std::span<const double>(params.begin(), params.size()));
}

Gate Gate::cx(Qubit control, Qubit target) {
  const std::array<Qubit, 2> qs{control, target};
  return Gate(GateKind::CX, qs);
}

Gate Gate::swap(Qubit a, Qubit b) {
  const std::array<Qubit, 2> qs{a, b};
  return Gate(GateKind::SWAP, qs);
}

bool Gate::acts_on(Qubit q) const {
  return qubits_[0] == q || (arity_ == 2 && qubits_[1] == q);
}

Gate Gate::remapped(std::span<const Qubit> table) const {
  Gate g = *this;
  for (std::size_t i = 0; i < arity_; ++i) {
    g.qubits_[i] = table[qubits_[i]];
  }
  return g;
}

void QuantumCircuit::add(const Gate &gate) {
  for (Qubit q : gate.qubits()) {
    if (q >= num_qubits_) {
      throw std::out_of_range("qubit " + std::to_string(q) + " out of range for a " +
                              std::to_string(num_qubits_) + "-qubit circuit");
    }
  }
  gates_.push_back(gate);
}

std::size_t QuantumCircuit::two_qubit_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [](const Gate &g) { return g.is_two_qubit(); }));
}

std::size_t QuantumCircuit::count(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [kind](const Gate &g) { return g.kind() == kind; }));
}

QuantumCircuit decompose_swaps(const QuantumCircuit &circuit) {
  QuantumCircuit out(circuit.num_qubits());
  for (const Gate &g : circuit.gates()) {
    if (g.kind() == GateKind::SWAP) {
      const Qubit a = g.qubit(0);
      const Qubit b = g.qubit(1);
      out.add(Gate::cx(a, b));
      out.add(Gate::cx(b, a));
      out.add(Gate::cx(a, b));
    } else {
      out.add(g);
    }
  }
  return out;
}

std::size_t circuit_depth(const QuantumCircuit &circuit) {
  std::vector<std::size_t> level(circuit.num_qubits(), 0);
  std::size_t depth = 0;
  for (const Gate &g : circuit.gates()) {
    const std::size_t weight = g.kind() == GateKind::SWAP ? 3 : 1;
    std::size_t start = 0;
    for (Qubit q : g.qubits()) {
      start = std::max(start, level[q]);
    }
    for (Qubit q : g.qubits()) {
      level[q] = start + weight;
    }
    depth = std::max(depth, start + weight);
  }
  return depth;
}

QuantumCircuit reduced_symmetric_circuit(const QuantumCircuit &circuit) {
  std::set<std::pair<Qubit, Qubit>> seen;
  std::vector<Gate> reduced;
  for (const Gate &g : circuit.gates()) {
    if (!g.is_two_qubit()) {
      continue;
    }
    const Qubit a = g.qubit(0), b = g.qubit(1);
    const std::pair<Qubit, Qubit> pair{std::min(a, b), std::max(a, b)};
    if (seen.insert(pair).second) {
      reduced.push_back(g);
    }
  }
  QuantumCircuit out(circuit.num_qubits());
  for (const Gate &g : reduced) {
    out.add(g);
  }
  for (auto it = reduced.rbegin(); it != reduced.rend(); ++it) {
    out.add(*it);
  }
  return out;
}

}  // namespace agentmap
