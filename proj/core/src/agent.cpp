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

#include "agentmap/agent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace agentmap {

namespace {

constexpr std::uint32_t kSwapFlag = 1U << 31;
constexpr std::uint32_t kNodeBits = 15;
constexpr std::uint32_t kNodeMask = (1U << kNodeBits) - 1;

std::uint32_t encode_swap(Qubit u, Qubit v) { return kSwapFlag | (u << kNodeBits) | v; }

std::size_t per_gate_depth(std::size_t diameter) { return diameter == 0 ? 1 : 3 * diameter - 2; }

Qubit swapped(Qubit x, Edge e) {
  if (x == e.first) return e.second;
  if (x == e.second) return e.first;
  return x;
}

Edge orient(Edge e, const RoutingContext &ctx) {
  e = normalized(e);
  if (!ctx.variation_aware()) return e;
  const double fwd = ctx.cx_error(e.first, e.second);
  const double bwd = ctx.cx_error(e.second, e.first);
  return bwd < fwd ? Edge{e.second, e.first} : e;
}

}  // namespace

RoutingContext::RoutingContext(const QuantumCircuit &circuit, const HardwareModel &hw, bool variation_aware,
                               double uniform_error)
    : circuit_(&circuit),
      hw_(&hw),
      dag_(std::make_shared<const DependencyDag>(circuit)),
      variation_aware_(variation_aware),
      uniform_error_(uniform_error),
      g_ori_(circuit.two_qubit_count()),
      per_gate_(per_gate_depth(hw.diameter())),
      n_(hw.num_nodes()) {
  if (n_ > kNodeMask) throw std::invalid_argument("device too large for the router");
  if (circuit.num_qubits() > n_) {
    throw std::invalid_argument("circuit has more qubits than the device");
  }
  if (!(uniform_error >= 0.0 && uniform_error < 1.0)) {
    throw std::invalid_argument("uniform error must lie in [0, 1)");
  }
  e_max_ = variation_aware ? hw.calib().e_max() : uniform_error;
  log_keep_.assign(n_ * n_, 0.0);
  for (const auto &[u, v] : hw.graph().edges()) {
    log_keep_[u * n_ + v] = std::log1p(-cx_error(u, v));
    log_keep_[v * n_ + u] = std::log1p(-cx_error(v, u));
  }
}

double RoutingContext::cx_error(Qubit control, Qubit target) const {
  if (!variation_aware_) {
    if (!hw_->graph().has_edge(control, target)) throw std::invalid_argument("not a coupling edge");
    return uniform_error_;
  }
  return hw_->calib().error(control, target);
}

double FitnessValue::value() const { return std::exp(log_value); }

FitnessValue fitness_from_terms(std::size_t depth, double log_gate_keep, std::size_t remaining_two_qubit,
                                std::size_t original_two_qubit, std::size_t diameter, double e_max) {
  const double per_gate = static_cast<double>(per_gate_depth(diameter));
  const double denom = static_cast<double>(std::max<std::size_t>(1, original_two_qubit)) * per_gate;
  double log_value = -static_cast<double>(depth) / denom + log_gate_keep;
  if (remaining_two_qubit > 0) {
    log_value += static_cast<double>(remaining_two_qubit) * per_gate * std::log1p(-e_max);
  }
  return {log_value};
}

Agent::Agent(std::size_t id, const RoutingContext &ctx, Mapping initial, Rng rng)
    : id_(id),
      ctx_(&ctx),
      initial_(std::move(initial)),
      pi_(initial_),
      vcir_(ctx.dag()),
      node_level_(ctx.hw().num_nodes(), 0),
      remaining_2q_(ctx.original_two_qubit_count()),
      rng_(rng) {
  if (initial_.num_logical() != ctx.circuit().num_qubits() || initial_.num_physical() != ctx.hw().num_nodes()) {
    throw std::invalid_argument("initial mapping does not match circuit and device");
  }
  trace_.reserve(ctx.circuit().size());
  drain();
}

FitnessValue Agent::fitness() const {
  return fitness_from_terms(depth_, log_keep_, remaining_2q_, ctx_->original_two_qubit_count(),
                            ctx_->hw().diameter(), ctx_->e_max());
}

std::vector<std::uint32_t> Agent::front_two_qubit() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t node : vcir_.front()) {
    if (ctx_->circuit()[node].is_two_qubit()) out.push_back(node);
  }
  return out;
}

void Agent::bump(Qubit a, Qubit b, std::uint32_t levels) {
  const std::uint32_t level = std::max(node_level_[a], node_level_[b]) + levels;
  node_level_[a] = level;
  node_level_[b] = level;
  depth_ = std::max<std::size_t>(depth_, level);
}

void Agent::execute(std::uint32_t node) {
  vcir_.remove(node);
  trace_.push_back(node);
  stall_ = 0;
  const Gate &g = ctx_->circuit()[node];
  const Qubit a = pi_.physical(g.qubit(0));
  if (!g.is_two_qubit()) {
    bump(a, a, 1);
    return;
  }
  const Qubit b = pi_.physical(g.qubit(1));
  --remaining_2q_;
  if (g.kind() == GateKind::SWAP) {
    bump(a, b, 3);
    log_keep_ += ctx_->log_swap_keep(a, b);
  } else {
    bump(a, b, 1);
    log_keep_ += ctx_->log_cx_keep(a, b);
  }
}

void Agent::drain() {
  const QuantumCircuit &circuit = ctx_->circuit();
  const HardwareModel &hw = ctx_->hw();
  bool progress = true;
  std::vector<std::uint32_t> front;
  while (progress) {
    progress = false;
    front = vcir_.front();
    for (std::uint32_t node : front) {
      const Gate &g = circuit[node];
      if (g.is_two_qubit() && hw.distance(pi_.physical(g.qubit(0)), pi_.physical(g.qubit(1))) != 1) continue;
      execute(node);
      progress = true;
    }
  }
}

void Agent::apply_swap(Edge oriented) {
  const auto [u, v] = oriented;
  if (u >= ctx_->hw().num_nodes() || v >= ctx_->hw().num_nodes() || !ctx_->hw().graph().has_edge(u, v)) {
    throw std::invalid_argument("SWAP on a non-edge");
  }
  pi_.swap_nodes(u, v);
  trace_.push_back(encode_swap(u, v));
  ++swaps_;
  ++stall_;
  bump(u, v, 3);
  log_keep_ += ctx_->log_swap_keep(u, v);
  drain();
}

void Agent::adopt(const Agent &best) {
  if (&best == this) return;
  ctx_ = best.ctx_;
  initial_ = best.initial_;
  pi_ = best.pi_;
  vcir_ = best.vcir_;
  trace_ = best.trace_;
  node_level_ = best.node_level_;
  depth_ = best.depth_;
  swaps_ = best.swaps_;
  remaining_2q_ = best.remaining_2q_;
  log_keep_ = best.log_keep_;
  stall_ = best.stall_;
}

QuantumCircuit Agent::physical_circuit() const {
  const QuantumCircuit &circuit = ctx_->circuit();
  QuantumCircuit out(ctx_->hw().num_nodes());
  Mapping pi = initial_;
  for (std::uint32_t entry : trace_) {
    if (entry & kSwapFlag) {
      const Qubit u = (entry >> kNodeBits) & kNodeMask;
      const Qubit v = entry & kNodeMask;
      out.add(Gate::swap(u, v));
      pi.swap_nodes(u, v);
    } else {
      out.add(circuit[entry].remapped(pi.assignment()));
    }
  }
  return out;
}

std::vector<Edge> candidate_swaps(const Agent &agent) {
  const RoutingContext &ctx = agent.context();
  const HardwareModel &hw = ctx.hw();
  const Mapping &pi = agent.mapping();
  const auto front = agent.front_two_qubit();
  std::vector<Edge> pool;
  for (std::uint32_t node : front) {
    for (Qubit q : ctx.circuit()[node].qubits()) {
      const Qubit p = pi.physical(q);
      for (Qubit w : hw.graph().neighbors(p)) pool.push_back(normalized({p, w}));
    }
  }
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  std::vector<Edge> out;
  for (const Edge &e : pool) {
    for (std::uint32_t node : front) {
      const Gate &g = ctx.circuit()[node];
      const Qubit a = pi.physical(g.qubit(0)), b = pi.physical(g.qubit(1));
      if (hw.distance(swapped(a, e), swapped(b, e)) < hw.distance(a, b)) {
        out.push_back(orient(e, ctx));
        break;
      }
    }
  }
  return out;
}

int reward(Edge swap, const Agent &agent) {
  const RoutingContext &ctx = agent.context();
  const HardwareModel &hw = ctx.hw();
  const Mapping &pi = agent.mapping();
  int total = 0;
  for (std::uint32_t node : agent.front_two_qubit()) {
    const Gate &g = ctx.circuit()[node];
    const Qubit a = pi.physical(g.qubit(0)), b = pi.physical(g.qubit(1));
    total += static_cast<int>(hw.distance(a, b)) - static_cast<int>(hw.distance(swapped(a, swap), swapped(b, swap)));
  }
  return total;
}

Edge select_swap(std::span<const Edge> candidates, std::span<const int> rewards, const HardwareModel &hw,
                 bool variation_aware, Rng &rng) {
  if (candidates.empty()) throw std::invalid_argument("select_swap: no candidates");
  if (candidates.size() != rewards.size()) throw std::invalid_argument("select_swap: size mismatch");
  const int best = *std::max_element(rewards.begin(), rewards.end());
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (rewards[i] == best) ties.push_back(i);
  }
  if (ties.size() == 1) return candidates[ties[0]];
  std::vector<double> weight(ties.size(), 1.0);
  if (variation_aware) {
    for (std::size_t i = 0; i < ties.size(); ++i) weight[i] = swap_fidelity(candidates[ties[i]], hw.calib());
  }
  double total = 0.0;
  for (double w : weight) total += w;
  double x = rng.uniform() * total;
  for (std::size_t i = 0; i < ties.size(); ++i) {
    if (x < weight[i]) return candidates[ties[i]];
    x -= weight[i];
  }
  return candidates[ties.back()];
}

Edge step_agent(Agent &agent) {
  if (agent.finished()) throw std::logic_error("step_agent on a finished agent");
  const RoutingContext &ctx = agent.context();
  const std::size_t nodes = ctx.hw().num_nodes();
  if (agent.stall() >= nodes * nodes) {
    throw RoutingDefect("no gate executed after " + std::to_string(agent.stall()) + " SWAPs");
  }
  std::vector<Edge> cands = candidate_swaps(agent);
  if (cands.empty()) throw RoutingDefect("empty candidate SWAP set");

  // Livelock escape: after |V| fruitless SWAPs only moves that shorten the
  // oldest front gate are allowed, which executes it within D more steps.
  if (agent.stall() >= nodes) {
    const Gate &g = ctx.circuit()[agent.front_two_qubit().front()];
    const Qubit a = agent.mapping().physical(g.qubit(0)), b = agent.mapping().physical(g.qubit(1));
    std::erase_if(cands, [&](const Edge &e) {
      return ctx.hw().distance(swapped(a, e), swapped(b, e)) >= ctx.hw().distance(a, b);
    });
  }
  std::vector<int> rewards(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) rewards[i] = reward(cands[i], agent);
  const Edge chosen = select_swap(cands, rewards, ctx.hw(), ctx.variation_aware(), agent.rng());
  agent.apply_swap(chosen);
  return chosen;
}

FitnessValue fitness(const Agent &agent) { return agent.fitness(); }

}  // namespace agentmap
