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

#include "agentmap/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "agentmap/parallel.hpp"
#include "agentmap/rng.hpp"

namespace agentmap {

namespace {

using Mat2 = std::array<Amplitude, 4>;  // row-major [[a, b], [c, d]]

constexpr Amplitude kI{0.0, 1.0};

Mat2 gate_matrix(const Gate &g) {
  const auto p = g.params();
  const double r = 1.0 / std::numbers::sqrt2;
  switch (g.kind()) {
    case GateKind::H: return {r, r, r, -r};
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y: return {0.0, -kI, kI, 0.0};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::S: return {1.0, 0.0, 0.0, kI};
    case GateKind::Sdg: return {1.0, 0.0, 0.0, -kI};
    case GateKind::T: return {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4)};
    case GateKind::Tdg: return {1.0, 0.0, 0.0, std::polar(1.0, -std::numbers::pi / 4)};
    case GateKind::RX: {
      const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
      return {c, -kI * s, -kI * s, c};
    }
    case GateKind::RY: {
      const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
      return {c, -s, s, c};
    }
    case GateKind::RZ: return {std::polar(1.0, -p[0] / 2), 0.0, 0.0, std::polar(1.0, p[0] / 2)};
    case GateKind::U1: return {1.0, 0.0, 0.0, std::polar(1.0, p[0])};
    case GateKind::U2:
    case GateKind::U3: {
      const double theta = g.kind() == GateKind::U2 ? std::numbers::pi / 2 : p[0];
      const double phi = g.kind() == GateKind::U2 ? p[0] : p[1];
      const double lambda = g.kind() == GateKind::U2 ? p[1] : p[2];
      const double c = std::cos(theta / 2), s = std::sin(theta / 2);
      return {c, -std::polar(s, lambda), std::polar(s, phi), std::polar(c, phi + lambda)};
    }
    case GateKind::CX:
    case GateKind::SWAP: break;
  }
  throw std::logic_error("gate_matrix: not a single-qubit gate");
}

// Plain real arithmetic; std::complex multiplication carries NaN recovery
// that dominates these loops.
inline Amplitude mul(const Amplitude &a, const Amplitude &b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

struct Op {
  enum class Kind : std::uint8_t { Identity, Diagonal, AntiDiagonal, General, CX };
  Kind kind = Kind::Identity;
  Qubit q0 = 0;
  Qubit q1 = 0;
  Mat2 m{};
};

Op compile_1q(Qubit q, const Mat2 &m) {
  Op op;
  op.q0 = q;
  op.m = m;
  const Amplitude zero{}, one{1.0, 0.0};
  if (m[1] == zero && m[2] == zero) {
    op.kind = m[0] == one && m[3] == one ? Op::Kind::Identity : Op::Kind::Diagonal;
  } else if (m[0] == zero && m[3] == zero) {
    op.kind = Op::Kind::AntiDiagonal;
  } else {
    op.kind = Op::Kind::General;
  }
  return op;
}

// SWAPs must be decomposed before compiling.
Op compile(const Gate &g) {
  if (g.kind() == GateKind::CX) {
    Op op;
    op.kind = Op::Kind::CX;
    op.q0 = g.qubit(0);
    op.q1 = g.qubit(1);
    return op;
  }
  return compile_1q(g.qubit(0), gate_matrix(g));
}

void apply_op(std::vector<Amplitude> &amps, const Op &op) {
  const std::size_t n = amps.size();
  Amplitude *a = amps.data();
  switch (op.kind) {
    case Op::Kind::Identity: return;
    case Op::Kind::CX: {
      const std::size_t cm = std::size_t{1} << op.q0, tm = std::size_t{1} << op.q1;
      const std::size_t lo = std::min(cm, tm), hi = std::max(cm, tm);
      // enumerate indices with both bits clear
      for (std::size_t b2 = 0; b2 < n; b2 += 2 * hi)
        for (std::size_t b1 = b2; b1 < b2 + hi; b1 += 2 * lo)
          for (std::size_t i = b1; i < b1 + lo; ++i) std::swap(a[i | cm], a[i | cm | tm]);
      return;
    }
    default: break;
  }
  const std::size_t mask = std::size_t{1} << op.q0;
  const Mat2 &m = op.m;
  switch (op.kind) {
    case Op::Kind::Diagonal: {
      const bool top = m[0] != Amplitude{1.0, 0.0};
      for (std::size_t base = 0; base < n; base += 2 * mask) {
        for (std::size_t i = base; i < base + mask; ++i) {
          if (top) a[i] = mul(m[0], a[i]);
          a[i + mask] = mul(m[3], a[i + mask]);
        }
      }
      return;
    }
    case Op::Kind::AntiDiagonal:
      for (std::size_t base = 0; base < n; base += 2 * mask) {
        for (std::size_t i = base; i < base + mask; ++i) {
          const Amplitude a0 = a[i], a1 = a[i + mask];
          a[i] = mul(m[1], a1);
          a[i + mask] = mul(m[2], a0);
        }
      }
      return;
    default:
      for (std::size_t base = 0; base < n; base += 2 * mask) {
        for (std::size_t i = base; i < base + mask; ++i) {
          const Amplitude a0 = a[i], a1 = a[i + mask];
          a[i] = mul(m[0], a0) + mul(m[1], a1);
          a[i + mask] = mul(m[2], a0) + mul(m[3], a1);
        }
      }
  }
}

void apply_gate(std::vector<Amplitude> &amps, const Gate &g) {
  if (g.kind() == GateKind::SWAP) {
    const Qubit a = g.qubit(0), b = g.qubit(1);
    apply_op(amps, compile(Gate::cx(a, b)));
    apply_op(amps, compile(Gate::cx(b, a)));
    apply_op(amps, compile(Gate::cx(a, b)));
    return;
  }
  apply_op(amps, compile(g));
}

const Op &pauli_op(Qubit q, int pauli) {
  static const Mat2 paulis[4] = {
      Mat2{1.0, 0.0, 0.0, 1.0}, Mat2{0.0, 1.0, 1.0, 0.0}, Mat2{0.0, -kI, kI, 0.0}, Mat2{1.0, 0.0, 0.0, -1.0}};
  thread_local Op op;
  op = compile_1q(q, paulis[pauli]);
  return op;
}

void apply_pauli_to(std::vector<Amplitude> &amps, Qubit q, int pauli) {
  if (pauli < 0 || pauli > 3) throw std::invalid_argument("pauli index must be in [0, 3]");
  if (pauli != 0) apply_op(amps, pauli_op(q, pauli));
}

std::vector<Qubit> default_readout(std::size_t n) {
  std::vector<Qubit> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<Qubit>(i);
  return r;
}

// Everything needed to draw shots for one (circuit, noise, readout) triple.
class TrajectorySampler {
 public:
  TrajectorySampler(const QuantumCircuit &circuit, const HardwareModel *hw, const NoiseModel &noise,
                    std::span<const Qubit> readout, const SimulationOptions &options) {
    if (readout.size() > 64) throw std::invalid_argument("at most 64 readout bits are supported");
    for (Qubit q : readout) {
      if (q >= circuit.num_qubits()) throw std::invalid_argument("readout qubit out of range");
    }
    const QuantumCircuit flat = decompose_swaps(circuit);
    ActiveRegion region = compress_to_active(flat);
    classical_ = std::all_of(flat.gates().begin(), flat.gates().end(),
                             [](const Gate &g) { return is_basis_preserving(g.kind()); });
    const std::size_t cap = classical_ ? 64 : options.qubit_cap;
    if (region.qubits.size() > cap) {
      throw std::invalid_argument("circuit acts on " + std::to_string(region.qubits.size()) +
                                  " qubits; simulator cap is " + std::to_string(cap));
    }
    k_ = region.qubits.size();
    gates_ = region.circuit.gates();
    ops_.reserve(gates_.size());
    for (const Gate &g : gates_) ops_.push_back(compile(g));

    std::vector<int> local(circuit.num_qubits(), -1);
    for (std::size_t i = 0; i < region.qubits.size(); ++i) local[region.qubits[i]] = static_cast<int>(i);
    for (Qubit q : readout) readout_local_.push_back(local[q]);

    for (std::size_t i = 0; i < flat.size(); ++i) {
      const Gate &g = flat[i];
      if (g.kind() == GateKind::CX) {
        double p = 0.0;
        if (hw != nullptr) p = noise.cx_error(g.qubit(0), g.qubit(1), *hw);
        cx_index_.push_back(static_cast<std::uint32_t>(i));
        cx_error_.push_back(p);
      }
    }
    p_max_ = cx_error_.empty() ? 0.0 : *std::max_element(cx_error_.begin(), cx_error_.end());
    if (p_max_ > 0.0) log_keep_max_ = std::log1p(-p_max_);
    if (classical_) {
      prepare_classical();
    } else {
      prepare_quantum(options);
    }
  }

  bool classical() const { return classical_; }

  // Readout bits of the noiseless run if they are deterministic.
  std::optional<std::uint64_t> noiseless_bits() const {
    if (classical_) return to_readout(ideal_bits_);
    for (std::size_t i = 0; i < ideal_.size(); ++i) {
      if (std::norm(ideal_[i]) >= 1.0 - 1e-9) return to_readout(i);
    }
    return std::nullopt;
  }

  std::uint64_t sample(std::uint64_t seed, std::uint64_t shot) const {
    Rng rng(seed, shot);
    thread_local std::vector<std::pair<std::uint32_t, int>> events;
    events.clear();
    draw_events(rng, events);
    if (classical_) {
      std::uint64_t bits = ideal_bits_;
      for (const auto &[j, pauli] : events) {
        const int a = pauli / 4, b = pauli % 4;
        if (a == 1 || a == 2) bits ^= flip_control_[j];
        if (b == 1 || b == 2) bits ^= flip_target_[j];
      }
      return to_readout(bits);
    }
    if (events.empty()) return to_readout(draw(ideal_cdf_, rng.uniform()));

    const std::uint32_t first = events.front().first;
    const std::size_t slot = first / stride_;
    std::vector<Amplitude> state = checkpoints_[slot];
    std::size_t ev = 0;
    const std::size_t start_cx = slot * stride_;
    for (std::size_t gi = cx_index_[start_cx]; gi < gates_.size(); ++gi) {
      if (gi != cx_index_[start_cx]) apply_op(state, ops_[gi]);
      if (gates_[gi].kind() != GateKind::CX) continue;
      while (ev < events.size() && cx_index_[events[ev].first] == gi) {
        apply_pauli_to(state, gates_[gi].qubit(0), events[ev].second / 4);
        apply_pauli_to(state, gates_[gi].qubit(1), events[ev].second % 4);
        ++ev;
      }
    }
    std::vector<double> cdf(state.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) cdf[i] = (acc += std::norm(state[i]));
    return to_readout(draw(cdf, rng.uniform()));
  }

 private:
  // Bernoulli(p_j) error per CX, drawn by geometric skips at rate p_max and
  // thinned by p_j / p_max, so the cost scales with the number of errors.
  void draw_events(Rng &rng, std::vector<std::pair<std::uint32_t, int>> &events) const {
    if (p_max_ <= 0.0) return;
    const double n = static_cast<double>(cx_error_.size());
    double pos = -1.0;
    while (true) {
      const double gap = std::floor(std::log1p(-rng.uniform()) / log_keep_max_);
      pos += gap + 1.0;
      if (pos >= n) return;
      const auto j = static_cast<std::uint32_t>(pos);
      const double p = cx_error_[j];
      if (p < p_max_ && rng.uniform() * p_max_ >= p) continue;
      events.emplace_back(j, 1 + static_cast<int>(rng.below(15)));
    }
  }

  // Output bit flips caused by an X on either operand right after each CX.
  void prepare_classical() {
    ideal_bits_ = run_classical({});
    flip_control_.assign(cx_index_.size(), 0);
    flip_target_.assign(cx_index_.size(), 0);
    std::vector<std::uint64_t> mask(k_);
    for (std::size_t q = 0; q < k_; ++q) mask[q] = std::uint64_t{1} << q;
    std::size_t j = cx_index_.size();
    for (std::size_t gi = gates_.size(); gi-- > 0;) {
      const Gate &g = gates_[gi];
      if (g.kind() != GateKind::CX) continue;
      --j;
      const Qubit c = g.qubit(0), t = g.qubit(1);
      flip_control_[j] = mask[c];
      flip_target_[j] = mask[t];
      mask[c] ^= mask[t];
    }
  }

  void prepare_quantum(const SimulationOptions &options) {
    const std::size_t dim = std::size_t{1} << k_;
    const std::size_t bytes_per_state = dim * sizeof(Amplitude);
    const std::size_t budget_states = std::max<std::size_t>(1, options.checkpoint_bytes / bytes_per_state);
    stride_ = std::max<std::size_t>(1, (cx_index_.size() + budget_states - 1) / budget_states);

    std::vector<Amplitude> state(dim);
    state[0] = 1.0;
    std::size_t next_cx = 0;
    for (std::size_t gi = 0; gi < gates_.size(); ++gi) {
      apply_op(state, ops_[gi]);
      if (gates_[gi].kind() == GateKind::CX) {
        if (next_cx % stride_ == 0) checkpoints_.push_back(state);
        ++next_cx;
      }
    }
    ideal_ = state;
    ideal_cdf_.resize(dim);
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i) ideal_cdf_[i] = (acc += std::norm(state[i]));
  }

  static std::size_t draw(const std::vector<double> &cdf, double u) {
    const double target = u * cdf.back();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    if (it == cdf.end()) --it;
    return static_cast<std::size_t>(it - cdf.begin());
  }

  std::uint64_t run_classical(std::span<const std::pair<std::uint32_t, int>> events) const {
    std::uint64_t bits = 0;
    std::size_t ev = 0;
    std::size_t cx = 0;
    for (const Gate &g : gates_) {
      switch (g.kind()) {
        case GateKind::X:
        case GateKind::Y: bits ^= std::uint64_t{1} << g.qubit(0); break;
        case GateKind::CX: {
          if ((bits >> g.qubit(0)) & 1U) bits ^= std::uint64_t{1} << g.qubit(1);
          while (ev < events.size() && events[ev].first == cx) {
            const int a = events[ev].second / 4, b = events[ev].second % 4;
            if (a == 1 || a == 2) bits ^= std::uint64_t{1} << g.qubit(0);
            if (b == 1 || b == 2) bits ^= std::uint64_t{1} << g.qubit(1);
            ++ev;
          }
          ++cx;
          break;
        }
        default: break;
      }
    }
    return bits;
  }

  std::uint64_t to_readout(std::uint64_t local_bits) const {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < readout_local_.size(); ++i) {
      const int l = readout_local_[i];
      if (l >= 0 && ((local_bits >> l) & 1U)) out |= std::uint64_t{1} << i;
    }
    return out;
  }

  std::size_t k_ = 0;
  std::vector<Gate> gates_;
  std::vector<Op> ops_;
  std::vector<int> readout_local_;
  std::vector<std::uint32_t> cx_index_;
  std::vector<double> cx_error_;
  bool classical_ = true;
  double p_max_ = 0.0;
  double log_keep_max_ = 0.0;
  std::uint64_t ideal_bits_ = 0;
  std::vector<std::uint64_t> flip_control_;
  std::vector<std::uint64_t> flip_target_;
  std::size_t stride_ = 1;
  std::vector<std::vector<Amplitude>> checkpoints_;
  std::vector<Amplitude> ideal_;
  std::vector<double> ideal_cdf_;
};

}  // namespace

StateVector::StateVector(std::size_t num_qubits, std::uint64_t basis) : num_qubits_(num_qubits) {
  if (num_qubits > 30) throw std::invalid_argument("state vector limited to 30 qubits");
  amps_.assign(std::size_t{1} << num_qubits, Amplitude{});
  if (basis >= amps_.size()) throw std::invalid_argument("basis state out of range");
  amps_[basis] = 1.0;
}

void StateVector::apply(const Gate &gate) {
  for (Qubit q : gate.qubits()) {
    if (q >= num_qubits_) throw std::out_of_range("gate qubit outside state vector");
  }
  apply_gate(amps_, gate);
}

void StateVector::apply_pauli(Qubit q, int pauli) {
  if (q >= num_qubits_) throw std::out_of_range("pauli qubit outside state vector");
  apply_pauli_to(amps_, q, pauli);
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto &a : amps_) s += std::norm(a);
  return s;
}

std::vector<Amplitude> ideal_output(const QuantumCircuit &circuit, std::uint64_t input, std::size_t qubit_cap) {
  if (circuit.num_qubits() > qubit_cap) {
    throw std::invalid_argument("circuit has " + std::to_string(circuit.num_qubits()) +
                                " qubits; simulator cap is " + std::to_string(qubit_cap));
  }
  StateVector sv(circuit.num_qubits(), input);
  for (const Gate &g : circuit.gates()) sv.apply(g);
  return {sv.amplitudes().begin(), sv.amplitudes().end()};
}

ActiveRegion compress_to_active(const QuantumCircuit &circuit) {
  std::vector<bool> used(circuit.num_qubits(), false);
  for (const Gate &g : circuit.gates()) {
    for (Qubit q : g.qubits()) used[q] = true;
  }
  ActiveRegion region;
  std::vector<Qubit> table(circuit.num_qubits(), 0);
  for (std::size_t q = 0; q < used.size(); ++q) {
    if (!used[q]) continue;
    table[q] = static_cast<Qubit>(region.qubits.size());
    region.qubits.push_back(static_cast<Qubit>(q));
  }
  region.circuit = QuantumCircuit(region.qubits.size());
  for (const Gate &g : circuit.gates()) region.circuit.add(g.remapped(table));
  return region;
}

double NoiseModel::cx_error(Qubit control, Qubit target, const HardwareModel &hw) const {
  const double base = mode == Mode::Uniform ? uniform_error : hw.calib().error(control, target);
  const double p = base * error_scale;
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("effective CX error must lie in [0, 1)");
  return p;
}

Histogram run_noisy(const QuantumCircuit &circuit, const HardwareModel &hw, const NoiseModel &noise,
                    std::uint64_t shots, std::uint64_t seed, std::span<const Qubit> readout,
                    const SimulationOptions &options) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  const std::vector<Qubit> fallback = readout.empty() ? default_readout(circuit.num_qubits()) : std::vector<Qubit>{};
  const std::span<const Qubit> bits = readout.empty() ? std::span<const Qubit>(fallback) : readout;
  const TrajectorySampler sampler(circuit, &hw, noise, bits, options);
  std::vector<std::uint64_t> outcomes(shots);
  parallel_for(shots, options.threads, [&](std::size_t s) { outcomes[s] = sampler.sample(seed, s); });
  Histogram hist;
  for (std::uint64_t o : outcomes) ++hist[o];
  return hist;
}

PstEstimate PstEstimate::from_counts(std::uint64_t successes, std::uint64_t shots) {
  PstEstimate e;
  e.successes = successes;
  e.shots = shots;
  e.pst = shots == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(shots);
  e.stderr_ = shots == 0 ? 0.0 : std::sqrt(e.pst * (1.0 - e.pst) / static_cast<double>(shots));
  return e;
}

std::optional<std::uint64_t> deterministic_output(const QuantumCircuit &circuit, std::span<const Qubit> readout,
                                                  const SimulationOptions &options) {
  const std::vector<Qubit> fallback = readout.empty() ? default_readout(circuit.num_qubits()) : std::vector<Qubit>{};
  const std::span<const Qubit> bits = readout.empty() ? std::span<const Qubit>(fallback) : readout;
  const TrajectorySampler sampler(circuit, nullptr, NoiseModel::noiseless(), bits, options);
  return sampler.noiseless_bits();
}

PstEstimate estimate_pst(const QuantumCircuit &circuit, std::optional<std::uint64_t> ideal_bits,
                         const HardwareModel &hw, const NoiseModel &noise, std::uint64_t shots,
                         std::uint64_t seed, std::span<const Qubit> readout, const SimulationOptions &options) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  const std::vector<Qubit> fallback = readout.empty() ? default_readout(circuit.num_qubits()) : std::vector<Qubit>{};
  const std::span<const Qubit> bits = readout.empty() ? std::span<const Qubit>(fallback) : readout;
  const TrajectorySampler sampler(circuit, &hw, noise, bits, options);
  const auto noiseless = sampler.noiseless_bits();
  if (!noiseless) throw NonDeterministicOutput("noiseless output is not a single basis state");
  const std::uint64_t want = ideal_bits.value_or(*noiseless);
  std::vector<std::uint8_t> hit(shots);
  parallel_for(shots, options.threads, [&](std::size_t s) { hit[s] = sampler.sample(seed, s) == want; });
  std::uint64_t successes = 0;
  for (auto h : hit) successes += h;
  return PstEstimate::from_counts(successes, shots);
}

std::string format_bits(std::uint64_t bits, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t i = 0; i < width && i < 64; ++i) {
    if ((bits >> i) & 1U) s[width - 1 - i] = '1';
  }
  return s;
}

}  // namespace agentmap
