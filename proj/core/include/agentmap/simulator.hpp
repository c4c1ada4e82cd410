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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "agentmap/circuit.hpp"
#include "agentmap/hardware.hpp"

namespace agentmap {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kDefaultQubitCap = 20;

/// Dense state vector; basis index bit q holds qubit q.
class StateVector {
 public:
  explicit StateVector(std::size_t num_qubits, std::uint64_t basis = 0);

  std::size_t num_qubits() const { return num_qubits_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }

  void apply(const Gate &gate);
  /// pauli: 0 = I, 1 = X, 2 = Y, 3 = Z.
  void apply_pauli(Qubit q, int pauli);
  double norm() const;

 private:
  std::size_t num_qubits_;
  std::vector<Amplitude> amps_;
};

/// Exact final state of the circuit applied to a basis state. Throws
/// std::invalid_argument when the circuit has more qubits than `qubit_cap`.
std::vector<Amplitude> ideal_output(const QuantumCircuit &circuit, std::uint64_t input = 0,
                                    std::size_t qubit_cap = kDefaultQubitCap);

/// Qubits the circuit actually touches, and the circuit relabelled onto
/// 0..k-1 in ascending order of the original index.
struct ActiveRegion {
  std::vector<Qubit> qubits;
  QuantumCircuit circuit;
};
ActiveRegion compress_to_active(const QuantumCircuit &circuit);

/// Stochastic CX noise: after every CX, with probability p a uniformly random
/// non-identity two-qubit Pauli hits its operands. p comes from the device
/// calibration (Variation) or is a single rate (Uniform), times error_scale.
struct NoiseModel {
  enum class Mode { Variation, Uniform };

  Mode mode = Mode::Variation;
  double uniform_error = 0.0;
  double error_scale = 1.0;

  static NoiseModel variation(double scale = 1.0) { return {Mode::Variation, 0.0, scale}; }
  static NoiseModel uniform(double error, double scale = 1.0) { return {Mode::Uniform, error, scale}; }
  static NoiseModel noiseless() { return uniform(0.0); }

  /// Throws std::invalid_argument if the effective rate leaves [0, 1) or, in
  /// Variation mode, if (control, target) is not a coupling edge.
  double cx_error(Qubit control, Qubit target, const HardwareModel &hw) const;
};

struct SimulationOptions {
  std::size_t qubit_cap = kDefaultQubitCap;
  unsigned threads = 1;
  /// Memory for cached ideal states used to fast-forward noisy shots.
  std::size_t checkpoint_bytes = std::size_t{128} << 20;
};

/// Outcome (readout bits, bit i = classical bit i) -> count.
using Histogram = std::map<std::uint64_t, std::uint64_t>;

/// Runs `shots` noisy trajectories from |0...0> and measures every readout
/// qubit; classical bit i reads qubit readout[i]. An empty readout measures
/// qubits 0..n-1 in order. Shot s draws from substream (seed, s), so the
/// histogram depends only on (circuit, noise, shots, seed).
Histogram run_noisy(const QuantumCircuit &circuit, const HardwareModel &hw, const NoiseModel &noise,
                    std::uint64_t shots, std::uint64_t seed, std::span<const Qubit> readout = {},
                    const SimulationOptions &options = {});

struct PstEstimate {
  std::uint64_t successes = 0;
  std::uint64_t shots = 0;
  double pst = 0.0;
  double stderr_ = 0.0;

  static PstEstimate from_counts(std::uint64_t successes, std::uint64_t shots);
};

/// Raised when a PST is requested for a circuit whose noiseless output is not
/// a single basis state.
class NonDeterministicOutput : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Noiseless readout bits when the ideal output is one basis state (within
/// 1e-9 probability), nullopt otherwise.
std::optional<std::uint64_t> deterministic_output(const QuantumCircuit &circuit, std::span<const Qubit> readout = {},
                                                  const SimulationOptions &options = {});

/// Fraction of noisy shots whose readout equals `ideal_bits` (or the circuit's
/// own noiseless readout when ideal_bits is empty). For a routed circuit pass
/// the final mapping's assignment as readout so logical bit i is read from the
/// node that finally hosts logical qubit i.
PstEstimate estimate_pst(const QuantumCircuit &circuit, std::optional<std::uint64_t> ideal_bits,
                         const HardwareModel &hw, const NoiseModel &noise, std::uint64_t shots,
                         std::uint64_t seed, std::span<const Qubit> readout = {},
                         const SimulationOptions &options = {});

/// Bits rendered most-significant first (classical bit width-1 leftmost).
std::string format_bits(std::uint64_t bits, std::size_t width);

}  // namespace agentmap
