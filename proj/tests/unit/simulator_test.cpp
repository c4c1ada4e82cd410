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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "agentmap/circuit.hpp"
#include "agentmap/hardware.hpp"
#include "agentmap/qasm.hpp"
#include "agentmap/simulator.hpp"
#include "oracles.hpp"

namespace agentmap {
namespace {

HardwareModel pair_device(double forward, double backward) {
  return make_hardware("pair", 2, {{0, 1}}, {{0, 1, forward}, {1, 0, backward}});
}

HardwareModel belem() { return load_hardware(oracle::device_file("belem")); }

// Exact PST by enumerating every Pauli pair after every CX. Feasible for a
// handful of CX gates.
double enumerated_pst(const QuantumCircuit &c, const HardwareModel &hw, const NoiseModel &noise,
                      const std::vector<Qubit> &readout, std::uint64_t want) {
  const QuantumCircuit flat = decompose_swaps(c);
  std::vector<std::size_t> cx;
  for (std::size_t i = 0; i < flat.size(); ++i)
    if (flat[i].kind() == GateKind::CX) cx.push_back(i);
  const GateKind paulis[4] = {GateKind::X, GateKind::X, GateKind::Y, GateKind::Z};
  double total = 0;
  std::vector<int> choice(cx.size(), 0);
  while (true) {
    double prob = 1;
    QuantumCircuit noisy(flat.num_qubits());
    std::size_t k = 0;
    for (std::size_t i = 0; i < flat.size(); ++i) {
      noisy.add(flat[i]);
      if (k < cx.size() && cx[k] == i) {
        const double p = noise.cx_error(flat[i].qubit(0), flat[i].qubit(1), hw);
        const int pc = choice[k];
        prob *= pc == 0 ? 1 - p : p / 15;
        if (pc / 4) noisy.add(Gate::single(paulis[pc / 4], flat[i].qubit(0)));
        if (pc % 4) noisy.add(Gate::single(paulis[pc % 4], flat[i].qubit(1)));
        ++k;
      }
    }
    const auto state = oracle::run_state(noisy, 0);
    for (std::uint64_t b = 0; b < state.size(); ++b) {
      std::uint64_t bits = 0;
      for (std::size_t r = 0; r < readout.size(); ++r) bits |= ((b >> readout[r]) & 1ULL) << r;
      if (bits == want) total += prob * std::norm(state[b]);
    }
    std::size_t pos = 0;
    while (pos < choice.size() && ++choice[pos] == 16) choice[pos++] = 0;
    if (pos == choice.size()) break;
  }
  return total;
}

std::vector<Qubit> iota_readout(std::size_t n) {
  std::vector<Qubit> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<Qubit>(i);
  return r;
}

TEST(StateVector, BellState) {
  StateVector sv(2);
  sv.apply(Gate::single(GateKind::H, 0));
  sv.apply(Gate::cx(0, 1));
  const auto a = sv.amplitudes();
  EXPECT_NEAR(std::norm(a[0]), 0.5, 1e-12);
  EXPECT_NEAR(std::norm(a[3]), 0.5, 1e-12);
  EXPECT_NEAR(std::norm(a[1]) + std::norm(a[2]), 0.0, 1e-12);
  EXPECT_NEAR(sv.norm(), 1.0, 1e-12);
  sv.apply_pauli(1, 1);
  EXPECT_NEAR(std::norm(sv.amplitudes()[1]), 0.5, 1e-12);
  EXPECT_THROW(sv.apply_pauli(0, 4), std::invalid_argument);
  EXPECT_THROW(sv.apply(Gate::cx(0, 2)), std::out_of_range);
  EXPECT_THROW(StateVector(2, 4), std::invalid_argument);
}

TEST(StateVector, MatchesReferenceOnRandomCircuits) {
  std::mt19937_64 gen(21);
  const GateKind kinds[] = {GateKind::H,  GateKind::X,  GateKind::Y,  GateKind::Z,  GateKind::S,
                            GateKind::Sdg, GateKind::T, GateKind::Tdg, GateKind::RX, GateKind::RY,
                            GateKind::RZ, GateKind::U1, GateKind::U2, GateKind::U3};
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + gen() % 5;
    QuantumCircuit c(n);
    for (int g = 0; g < 25; ++g) {
      if (n > 1 && gen() % 3 == 0) {
        const Qubit a = gen() % n;
        Qubit b = gen() % (n - 1);
        if (b >= a) ++b;
        c.add(gen() % 4 ? Gate::cx(a, b) : Gate::swap(a, b));
      } else {
        const GateKind k = kinds[gen() % std::size(kinds)];
        std::vector<double> ps(gate_param_count(k));
        for (double &p : ps) p = std::uniform_real_distribution<double>(-3, 3)(gen);
        const Qubit q = gen() % n;
        c.add(Gate(k, std::span<const Qubit>(&q, 1), ps));
      }
    }
    const std::uint64_t input = gen() % (1ULL << n);
    const auto got = ideal_output(c, input);
    const auto want = oracle::run_state(c, input);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) ASSERT_LT(std::abs(got[i] - want[i]), 1e-9);
  }
}

TEST(Simulator, CompressToActive) {
  QuantumCircuit c(10);
  c.add(Gate::cx(7, 2));
  c.add(Gate::single(GateKind::H, 9));
  const ActiveRegion r = compress_to_active(c);
  EXPECT_EQ(r.qubits, (std::vector<Qubit>{2, 7, 9}));
  ASSERT_EQ(r.circuit.num_qubits(), 3u);
  EXPECT_EQ(r.circuit[0], Gate::cx(1, 0));
  EXPECT_EQ(r.circuit[1], Gate::single(GateKind::H, 2));
}

TEST(Simulator, SingleCxOracleFormula) {
  for (double e : {0.0, 0.01, 0.05, 0.2, 0.5}) EXPECT_NEAR(oracle::single_cx_success(e), 1 - 0.8 * e, 1e-12);
}

TEST(Simulator, SingleCxWithinThreeSigma) {
  for (double e : {0.05, 0.2}) {
    const HardwareModel hw = pair_device(e, e);
    QuantumCircuit c(2);
    c.add(Gate::cx(0, 1));
    const PstEstimate est = estimate_pst(c, std::nullopt, hw, NoiseModel::variation(), 20000, 1);
    const double want = oracle::single_cx_success(e);
    const double sigma = std::sqrt(want * (1 - want) / 20000);
    EXPECT_LT(std::abs(est.pst - want), 3 * sigma) << "e=" << e;
  }
}

TEST(Simulator, ClassicalPstMatchesMarkovOracle) {
  const HardwareModel hw = belem();
  std::mt19937_64 gen(5);
  const auto &edges = hw.graph().edges();
  for (int t = 0; t < 8; ++t) {
    QuantumCircuit c(5);
    for (int g = 0; g < 30; ++g) {
      const Edge e = edges[gen() % edges.size()];
      const bool flip = gen() % 2;
      const Qubit a = flip ? e.second : e.first, b = flip ? e.first : e.second;
      switch (gen() % 4) {
        case 0: c.add(Gate::single(GateKind::X, a)); break;
        case 1: c.add(Gate::swap(a, b)); break;
        default: c.add(Gate::cx(a, b));
      }
    }
    const std::vector<Qubit> readout{4, 0, 2, 1, 3};
    const auto ideal = deterministic_output(c, readout);
    ASSERT_TRUE(ideal.has_value());
    const NoiseModel noise = NoiseModel::variation(3.0);
    const double want = oracle::exact_classical_pst(
        c, [&](Qubit u, Qubit v) { return noise.cx_error(u, v, hw); }, readout, *ideal);
    const std::uint64_t shots = 20000;
    const PstEstimate est = estimate_pst(c, ideal, hw, noise, shots, 100 + t, readout);
    const double sigma = std::sqrt(want * (1 - want) / shots);
    EXPECT_LT(std::abs(est.pst - want), 4 * sigma) << "trial " << t;
  }
}

TEST(Simulator, QuantumPstMatchesEnumeration) {
  const HardwareModel hw = pair_device(0.08, 0.15);
  QuantumCircuit c(2);
  c.add(Gate::single(GateKind::H, 0));
  c.add(Gate::cx(0, 1));
  c.add(Gate::single(GateKind::T, 1));
  c.add(Gate::cx(1, 0));
  c.add(Gate::single(GateKind::Tdg, 1));
  c.add(Gate::cx(1, 0));
  c.add(Gate::cx(0, 1));
  c.add(Gate::single(GateKind::H, 0));
  const auto readout = iota_readout(2);
  const auto ideal = deterministic_output(c, readout);
  ASSERT_TRUE(ideal.has_value());
  const NoiseModel noise = NoiseModel::variation();
  const double want = enumerated_pst(c, hw, noise, readout, *ideal);
  const std::uint64_t shots = 40000;
  for (std::size_t budget : {std::size_t{0}, std::size_t{128} << 20}) {
    SimulationOptions opts;
    opts.checkpoint_bytes = budget;
    const PstEstimate est = estimate_pst(c, ideal, hw, noise, shots, 3, readout, opts);
    const double sigma = std::sqrt(want * (1 - want) / shots);
    EXPECT_LT(std::abs(est.pst - want), 4 * sigma) << "budget " << budget;
  }
}

TEST(Simulator, HistogramMatchesEnumeratedDistribution) {
  const HardwareModel hw = pair_device(0.1, 0.1);
  QuantumCircuit c(2);
  c.add(Gate::single(GateKind::X, 0));
  c.add(Gate::cx(0, 1));
  const auto readout = iota_readout(2);
  const std::uint64_t shots = 50000;
  const Histogram h = run_noisy(c, hw, NoiseModel::variation(), shots, 9, readout);
  std::uint64_t total = 0;
  for (const auto &[bits, n] : h) total += n;
  EXPECT_EQ(total, shots);
  for (std::uint64_t out = 0; out < 4; ++out) {
    const double p = enumerated_pst(c, hw, NoiseModel::variation(), readout, out);
    const double got = h.count(out) ? static_cast<double>(h.at(out)) / shots : 0.0;
    EXPECT_NEAR(got, p, 4 * std::sqrt(p * (1 - p) / shots) + 1e-12) << out;
  }
}

TEST(Simulator, NoiselessIsPerfect) {
  const QuantumCircuit c = qasm::parse_file(oracle::circuit_file("4gt13_92").string());
  const HardwareModel hw = load_hardware(oracle::device_file("guadalupe"));
  const PstEstimate est =
      estimate_pst(reduced_symmetric_circuit(c), std::nullopt, hw, NoiseModel::noiseless(), 2000, 4);
  EXPECT_EQ(est.successes, 2000u);
  EXPECT_DOUBLE_EQ(est.pst, 1.0);
  const PstEstimate full = estimate_pst(c, std::nullopt, hw, NoiseModel::noiseless(), 500, 4);
  EXPECT_DOUBLE_EQ(full.pst, 1.0);
}

TEST(Simulator, DeterministicAcrossThreadsAndRuns) {
  const QuantumCircuit c = qasm::parse_file(oracle::circuit_file("4mod5-v1_22").string());
  const HardwareModel hw = pair_device(0.01, 0.01);
  const NoiseModel noise = NoiseModel::uniform(0.05);
  SimulationOptions one, four;
  four.threads = 4;
  const Histogram a = run_noisy(c, hw, noise, 3000, 77, {}, one);
  EXPECT_EQ(a, run_noisy(c, hw, noise, 3000, 77, {}, one));
  EXPECT_EQ(a, run_noisy(c, hw, noise, 3000, 77, {}, four));
  EXPECT_NE(a, run_noisy(c, hw, noise, 3000, 78, {}, one));
}

TEST(Simulator, NonDeterministicOutputRejected) {
  QuantumCircuit c(1);
  c.add(Gate::single(GateKind::H, 0));
  const HardwareModel hw = pair_device(0.01, 0.01);
  EXPECT_FALSE(deterministic_output(c).has_value());
  EXPECT_THROW(estimate_pst(c, std::nullopt, hw, NoiseModel::noiseless(), 10, 0), NonDeterministicOutput);
}

TEST(Simulator, InputValidation) {
  const HardwareModel hw = pair_device(0.01, 0.01);
  QuantumCircuit c(3);
  c.add(Gate::cx(0, 2));
  EXPECT_THROW(run_noisy(c, hw, NoiseModel::variation(), 0, 0), std::invalid_argument);
  EXPECT_THROW(run_noisy(c, hw, NoiseModel::variation(), 10, 0), std::invalid_argument);  // not an edge
  EXPECT_NO_THROW(run_noisy(c, hw, NoiseModel::uniform(0.01), 10, 0));
  EXPECT_THROW(run_noisy(c, hw, NoiseModel::uniform(1.0), 10, 0), std::invalid_argument);
  EXPECT_THROW(run_noisy(c, hw, NoiseModel::variation(200.0), 10, 0, std::vector<Qubit>{0}),
               std::invalid_argument);
  const std::vector<Qubit> bad{5};
  EXPECT_THROW(run_noisy(c, hw, NoiseModel::uniform(0.01), 10, 0, bad), std::invalid_argument);
}

TEST(Simulator, QubitCap) {
  QuantumCircuit c(4);
  for (Qubit q = 0; q < 4; ++q) c.add(Gate::single(GateKind::H, q));
  SimulationOptions opts;
  opts.qubit_cap = 3;
  const HardwareModel hw = pair_device(0.01, 0.01);
  EXPECT_THROW(run_noisy(c, hw, NoiseModel::uniform(0.0), 1, 0, {}, opts), std::invalid_argument);
  QuantumCircuit wide(40);
  for (Qubit q = 0; q < 40; ++q) wide.add(Gate::single(GateKind::X, q));
  EXPECT_EQ(deterministic_output(wide, {}, opts), std::optional<std::uint64_t>((1ULL << 40) - 1));
}

TEST(Simulator, EstimateHelpers) {
  const PstEstimate e = PstEstimate::from_counts(30, 40);
  EXPECT_DOUBLE_EQ(e.pst, 0.75);
  EXPECT_NEAR(e.stderr_, std::sqrt(0.75 * 0.25 / 40), 1e-15);
  EXPECT_EQ(format_bits(0b1011, 6), "001011");
  EXPECT_EQ(format_bits(0, 0), "");
}

}  // namespace
}  // namespace agentmap
