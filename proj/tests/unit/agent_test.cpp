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

#include <algorithm>
#include <cmath>
#include <random>

#include "agentmap/agent.hpp"
#include "agentmap/hardware.hpp"
#include "agentmap/qasm.hpp"
#include "oracles.hpp"

namespace agentmap {
namespace {

HardwareModel belem() { return load_hardware(oracle::device_file("belem")); }

// belem topology with hand-picked error rates.
HardwareModel belem_with(double e01, double e10, double e12, double e21) {
  return make_hardware("belem-test", 5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}},
                       {{0, 1, e01}, {1, 0, e10}, {1, 2, e12}, {2, 1, e21},
                        {1, 3, 0.01}, {3, 1, 0.01}, {3, 4, 0.01}, {4, 3, 0.01}});
}

QuantumCircuit ghz4() {
  QuantumCircuit c(4);
  c.add(Gate::single(GateKind::H, 0));
  c.add(Gate::cx(0, 1));
  c.add(Gate::cx(0, 2));
  c.add(Gate::cx(0, 3));
  return c;
}

QuantumCircuit random_circuit(std::size_t n, std::size_t gates, std::mt19937_64 &gen) {
  QuantumCircuit c(n);
  for (std::size_t i = 0; i < gates; ++i) {
    if (gen() % 3 == 0) {
      c.add(Gate::single(gen() % 2 ? GateKind::H : GateKind::T, static_cast<Qubit>(gen() % n)));
    } else {
      const Qubit a = gen() % n;
      Qubit b = gen() % (n - 1);
      if (b >= a) ++b;
      c.add(Gate::cx(a, b));
    }
  }
  return c;
}

void run_to_completion(Agent &a) {
  while (!a.finished()) step_agent(a);
}

double physical_log_keep(const QuantumCircuit &p, const RoutingContext &ctx) {
  double s = 0;
  for (const Gate &g : p.gates()) {
    if (g.kind() == GateKind::CX) s += std::log(1 - ctx.cx_error(g.qubit(0), g.qubit(1)));
    if (g.kind() == GateKind::SWAP) {
      const Qubit u = g.qubit(0), v = g.qubit(1);
      s += 2 * std::log(1 - ctx.cx_error(u, v)) + std::log(1 - ctx.cx_error(v, u));
    }
  }
  return s;
}

TEST(RoutingContext, Quantities) {
  const HardwareModel hw = belem();
  const QuantumCircuit c = ghz4();
  const RoutingContext ctx(c, hw);
  EXPECT_EQ(ctx.original_two_qubit_count(), 3u);
  EXPECT_EQ(ctx.per_gate_worst_depth(), 7u);
  EXPECT_DOUBLE_EQ(ctx.e_max(), hw.calib().e_max());
  EXPECT_DOUBLE_EQ(ctx.cx_error(1, 0), hw.calib().error(1, 0));
  EXPECT_NEAR(ctx.log_cx_keep(0, 1), std::log(1 - hw.calib().error(0, 1)), 1e-15);
  EXPECT_THROW(ctx.cx_error(0, 2), std::invalid_argument);

  const RoutingContext na(c, hw, false, 0.02);
  EXPECT_DOUBLE_EQ(na.cx_error(1, 0), 0.02);
  EXPECT_DOUBLE_EQ(na.e_max(), 0.02);
  EXPECT_NEAR(na.log_swap_keep(0, 1), 3 * std::log(0.98), 1e-15);
}

TEST(RoutingContext, Validation) {
  const HardwareModel hw = belem();
  EXPECT_THROW(RoutingContext(QuantumCircuit(6), hw), std::invalid_argument);
  EXPECT_THROW(RoutingContext(ghz4(), hw, false, 1.0), std::invalid_argument);
  EXPECT_THROW(RoutingContext(ghz4(), hw, false, -0.1), std::invalid_argument);
}

TEST(Fitness, WorkedValue) {
  const double got = fitness_from_terms(1, std::log(0.99), 9, 10, 3, 0.02).value();
  const double want = std::exp(-1.0 / 70) * 0.99 * std::pow(0.98, 63);
  EXPECT_NEAR(got, want, 1e-12);
}

TEST(Fitness, Guards) {
  // no two-qubit gates and a single-node device
  EXPECT_DOUBLE_EQ(fitness_from_terms(0, 0.0, 0, 0, 0, 0.0).value(), 1.0);
  EXPECT_NEAR(fitness_from_terms(2, 0.0, 0, 0, 0, 0.0).log_value, -2.0, 1e-15);
  EXPECT_TRUE(std::isfinite(fitness_from_terms(1000000, -5000.0, 100000, 100000, 10, 0.3).log_value));
  EXPECT_LT(fitness_from_terms(10, 0, 1, 5, 3, 0.01), fitness_from_terms(10, 0, 0, 5, 3, 0.01));
  EXPECT_LT(fitness_from_terms(11, 0, 0, 5, 3, 0.01), fitness_from_terms(10, 0, 0, 5, 3, 0.01));
}

TEST(Agent, ConstructorDrainsExecutableGates) {
  const HardwareModel hw = belem();
  const QuantumCircuit c = ghz4();
  const RoutingContext ctx(c, hw);
  const Agent a(0, ctx, Mapping::identity(4, 5), Rng(1));
  EXPECT_EQ(a.executed_count(), 2u);  // h, cx(0,1)
  EXPECT_EQ(a.remaining_two_qubit(), 2u);
  EXPECT_EQ(a.front_two_qubit(), (std::vector<std::uint32_t>{2}));
  EXPECT_EQ(a.depth(), 2u);
  EXPECT_FALSE(a.finished());
  EXPECT_THROW(Agent(1, ctx, Mapping::identity(3, 5), Rng(1)), std::invalid_argument);
}

TEST(Agent, CandidatesAndRewards) {
  const HardwareModel hw = belem_with(0.01, 0.02, 0.03, 0.02);
  const QuantumCircuit c = ghz4();
  const RoutingContext ctx(c, hw);
  const Agent a(0, ctx, Mapping::identity(4, 5), Rng(1));
  // front gate cx(q0, q2) on nodes 0 and 2; both incident edges shorten it.
  // (1,3) is incident to nothing in the front.
  const auto cands = candidate_swaps(a);
  ASSERT_EQ(cands.size(), 2u);
  EXPECT_EQ(cands[0], Edge(0, 1));  // err(0,1) <= err(1,0)
  EXPECT_EQ(cands[1], Edge(2, 1));  // err(2,1) <= err(1,2)
  EXPECT_EQ(reward({0, 1}, a), 1);
  EXPECT_EQ(reward({1, 2}, a), 1);
  EXPECT_EQ(reward({1, 3}, a), 0);
  EXPECT_EQ(reward({3, 4}, a), 0);

  const RoutingContext na(c, hw, false, 0.02);
  const Agent b(0, na, Mapping::identity(4, 5), Rng(1));
  EXPECT_EQ(candidate_swaps(b)[1], Edge(1, 2));
}

TEST(Agent, RewardSumsOverFrontGates) {
  // Two interleaved distance-3 gates on a line.
  std::vector<Edge> edges;
  std::vector<CxError> errs;
  for (Qubit i = 0; i + 1 < 6; ++i) {
    edges.push_back({i, i + 1});
    errs.push_back({i, i + 1, 0.01});
    errs.push_back({i + 1, i, 0.01});
  }
  const HardwareModel hw = make_hardware("line6", 6, edges, errs);
  QuantumCircuit c(4);
  c.add(Gate::cx(0, 2));
  c.add(Gate::cx(1, 3));
  const RoutingContext ctx(c, hw);
  const Agent a(0, ctx, Mapping({0, 2, 3, 5}, 6), Rng(0));
  EXPECT_EQ(a.front_two_qubit().size(), 2u);
  EXPECT_EQ(reward({2, 3}, a), 2);  // both gates shrink
  EXPECT_EQ(reward({0, 1}, a), 1);
  EXPECT_EQ(reward({1, 2}, a), -1);  // q1 moves away from q3
  EXPECT_EQ(reward({4, 5}, a), 1);
}

TEST(Agent, GhzNeedsOneSwapWhenTieIsForced) {
  const HardwareModel hw = belem_with(0.01, 0.01, 0.99 - 1e-9, 0.99 - 1e-9);
  const QuantumCircuit c = ghz4();
  const RoutingContext ctx(c, hw);
  Agent a(0, ctx, Mapping::identity(4, 5), Rng(3));
  EXPECT_EQ(step_agent(a), Edge(0, 1));
  EXPECT_TRUE(a.finished());
  EXPECT_EQ(a.swap_count(), 1u);
  const QuantumCircuit p = a.physical_circuit();
  EXPECT_TRUE(is_topology_compliant(p, hw.graph()));
  EXPECT_EQ(p.count(GateKind::SWAP), 1u);
  EXPECT_LT(oracle::routed_mismatch(c, p, a.initial_mapping(), a.mapping(), 16, 1), 1e-9);
  EXPECT_THROW(step_agent(a), std::logic_error);
}

TEST(Agent, SelectSwapUniqueMaximum) {
  const HardwareModel hw = belem();
  const std::vector<Edge> cands{{0, 1}, {1, 2}, {1, 3}};
  const std::vector<int> rewards{0, 2, 1};
  Rng rng(0);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(select_swap(cands, rewards, hw, true, rng), Edge(1, 2));
  EXPECT_THROW(select_swap({}, {}, hw, true, rng), std::invalid_argument);
  EXPECT_THROW(select_swap(cands, std::vector<int>{1}, hw, true, rng), std::invalid_argument);
}

TEST(Agent, SelectSwapRouletteWeights) {
  const HardwareModel hw = belem_with(0.01, 0.01, 0.3, 0.2);
  const std::vector<Edge> cands{{0, 1}, {2, 1}, {3, 4}};
  const std::vector<int> rewards{1, 1, 0};
  const double f0 = swap_fidelity({0, 1}, hw.calib());
  const double f1 = swap_fidelity({2, 1}, hw.calib());
  const double p = f0 / (f0 + f1);
  Rng rng(17);
  const int draws = 20000;
  int first = 0, uniform_first = 0;
  for (int i = 0; i < draws; ++i) {
    const Edge e = select_swap(cands, rewards, hw, true, rng);
    ASSERT_NE(e, Edge(3, 4));
    first += e == Edge(0, 1);
    uniform_first += select_swap(cands, rewards, hw, false, rng) == Edge(0, 1);
  }
  EXPECT_NEAR(static_cast<double>(first) / draws, p, 4 * std::sqrt(p * (1 - p) / draws));
  EXPECT_NEAR(static_cast<double>(uniform_first) / draws, 0.5, 4 * std::sqrt(0.25 / draws));
}

TEST(Agent, SwapFidelityValues) {
  const HardwareModel a = belem_with(0.01, 0.01, 0.01, 0.01);
  EXPECT_NEAR(swap_fidelity({0, 1}, a.calib()), 0.970299, 1e-12);
  const HardwareModel b = belem_with(0.03, 0.03, 0.01, 0.01);
  EXPECT_NEAR(swap_fidelity({0, 1}, b.calib()), 0.912673, 1e-12);
}

TEST(Agent, RandomRoutingIsCorrect) {
  std::mt19937_64 gen(99);
  const HardwareModel hw = load_hardware(oracle::device_file("guadalupe"));
  for (int t = 0; t < 25; ++t) {
    const std::size_t n = 2 + gen() % 6;
    const QuantumCircuit c = random_circuit(n, 40, gen);
    const RoutingContext ctx(c, hw, t % 2 == 0, 0.015);
    std::vector<Qubit> nodes(hw.num_nodes());
    for (Qubit i = 0; i < nodes.size(); ++i) nodes[i] = i;
    std::shuffle(nodes.begin(), nodes.end(), gen);
    nodes.resize(n);
    Agent a(0, ctx, Mapping(nodes, hw.num_nodes()), Rng(gen()));
    run_to_completion(a);
    const QuantumCircuit p = a.physical_circuit();
    ASSERT_TRUE(is_topology_compliant(p, hw.graph()));
    EXPECT_EQ(p.count(GateKind::SWAP), a.swap_count());
    EXPECT_EQ(p.size() - a.swap_count(), c.size());
    EXPECT_EQ(a.depth(), circuit_depth(p));
    EXPECT_NEAR(a.log_gate_keep(), physical_log_keep(p, ctx), 1e-9);
    EXPECT_EQ(a.remaining_two_qubit(), 0u);
    EXPECT_LT(oracle::routed_mismatch(c, p, a.initial_mapping(), a.mapping(), 4, t), 1e-9);
    EXPECT_LT(oracle::occupied_mismatch(c, p, a.initial_mapping(), a.mapping(), 4, t), 1e-9);
  }
}

TEST(Agent, OraclesCatchBrokenRouting) {
  const HardwareModel hw = belem();
  QuantumCircuit c(3);
  c.add(Gate::single(GateKind::H, 0));
  c.add(Gate::cx(0, 2));
  c.add(Gate::cx(1, 2));
  const RoutingContext ctx(c, hw);
  Agent a(0, ctx, Mapping({0, 3, 2}, 5), Rng(4));
  run_to_completion(a);
  const QuantumCircuit good = a.physical_circuit();
  ASSERT_GE(a.swap_count(), 1u);
  // drop the first SWAP but keep the claimed final mapping
  QuantumCircuit bad(good.num_qubits());
  bool dropped = false;
  for (const Gate &g : good.gates()) {
    if (!dropped && g.kind() == GateKind::SWAP) {
      dropped = true;
      continue;
    }
    bad.add(g);
  }
  EXPECT_GT(oracle::routed_mismatch(c, bad, a.initial_mapping(), a.mapping(), 8, 0), 0.1);
  EXPECT_GT(oracle::occupied_mismatch(c, bad, a.initial_mapping(), a.mapping(), 8, 0), 0.1);
}

TEST(Agent, LogicalSwapGatesAreRouted) {
  const HardwareModel hw = belem();
  QuantumCircuit c(4);
  c.add(Gate::single(GateKind::H, 0));
  c.add(Gate::swap(0, 3));
  c.add(Gate::cx(3, 2));
  const RoutingContext ctx(c, hw);
  Agent a(0, ctx, Mapping::identity(4, 5), Rng(2));
  run_to_completion(a);
  const QuantumCircuit p = a.physical_circuit();
  EXPECT_TRUE(is_topology_compliant(p, hw.graph()));
  EXPECT_LT(oracle::routed_mismatch(c, p, a.initial_mapping(), a.mapping(), 16, 0), 1e-9);
}

TEST(Agent, AdoptKeepsIdentityAndRng) {
  const HardwareModel hw = belem();
  const QuantumCircuit c = ghz4();
  const RoutingContext ctx(c, hw);
  Agent best(0, ctx, Mapping({1, 0, 2, 3}, 5), Rng(10));
  Agent worst(7, ctx, Mapping::identity(4, 5), Rng(20));
  ASSERT_TRUE(best.finished());
  Rng reference(20);
  worst.adopt(best);
  EXPECT_EQ(worst.id(), 7u);
  EXPECT_TRUE(worst.finished());
  EXPECT_EQ(worst.initial_mapping(), best.initial_mapping());
  EXPECT_EQ(worst.physical_circuit(), best.physical_circuit());
  EXPECT_EQ(worst.rng()(), reference());
}

TEST(Agent, ApplySwapRejectsNonEdges) {
  const HardwareModel hw = belem();
  const QuantumCircuit c = ghz4();
  const RoutingContext ctx(c, hw);
  Agent a(0, ctx, Mapping::identity(4, 5), Rng(1));
  EXPECT_THROW(a.apply_swap({0, 2}), std::invalid_argument);
  EXPECT_THROW(a.apply_swap({0, 9}), std::invalid_argument);
}

TEST(Agent, SwapIntoFreeNodeMovesQubit) {
  const HardwareModel hw = belem();
  QuantumCircuit c(2);
  c.add(Gate::cx(0, 1));
  const RoutingContext ctx(c, hw);
  Agent a(0, ctx, Mapping({0, 4}, 5), Rng(1));
  run_to_completion(a);
  EXPECT_EQ(a.swap_count(), 2u);  // distance 3
  EXPECT_EQ(a.mapping().num_logical(), 2u);
  EXPECT_LT(oracle::routed_mismatch(c, a.physical_circuit(), a.initial_mapping(), a.mapping(), 4, 0), 1e-9);
}

TEST(Agent, SwapFidelityAsymmetric) {
  const HardwareModel hw = belem_with(0.02, 0.05, 0.01, 0.01);
  EXPECT_NEAR(swap_fidelity({0, 1}, hw.calib()), 0.912380, 1e-12);
}

TEST(Agent, DistanceThreeGateCandidates) {
  const HardwareModel hw = belem();
  QuantumCircuit c(5);
  c.add(Gate::cx(0, 4));
  const RoutingContext ctx(c, hw);
  Agent a(0, ctx, Mapping::identity(5, 5), Rng(1));
  EXPECT_EQ(physical_distance(c[0], a.mapping(), hw), 3u);
  std::vector<Edge> got;
  for (const Edge &e : candidate_swaps(a)) got.push_back(normalized(e));
  EXPECT_EQ(got, (std::vector<Edge>{{0, 1}, {3, 4}}));
  EXPECT_EQ(reward({1, 2}, a), 0);
  run_to_completion(a);
  EXPECT_GE(a.swap_count(), 2u);
}

TEST(Agent, OppositeRewardsCancel) {
  // line 0-1-2-3; gate A on (0,2) and gate B on (1,3). SWAP(2,3) brings A's
  // target away (distance 3) while bringing B's endpoints together.
  std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}};
  std::vector<CxError> errs;
  for (const Edge &e : edges) {
    errs.push_back({e.first, e.second, 0.01});
    errs.push_back({e.second, e.first, 0.01});
  }
  const HardwareModel hw = make_hardware("line4", 4, edges, errs);
  QuantumCircuit c(4);
  c.add(Gate::cx(0, 2));
  c.add(Gate::cx(1, 3));
  const RoutingContext ctx(c, hw);
  const Agent a(0, ctx, Mapping::identity(4, 4), Rng(0));
  ASSERT_EQ(a.front_two_qubit().size(), 2u);
  EXPECT_EQ(reward({2, 3}, a), 0);
}

TEST(Agent, RouletteTwoToOne) {
  // fid(0->1) = 1 * 1 * 0.98, fid(1->2) = 0.7^2 * 1 = 0.49
  const HardwareModel hw = belem_with(0.0, 0.02, 0.3, 0.0);
  EXPECT_NEAR(swap_fidelity({0, 1}, hw.calib()), 0.98, 1e-15);
  EXPECT_NEAR(swap_fidelity({1, 2}, hw.calib()), 0.49, 1e-15);
  const std::vector<Edge> cands{{0, 1}, {1, 2}};
  const std::vector<int> rewards{1, 1};
  Rng rng(5);
  const int draws = 30000;
  int first = 0;
  for (int i = 0; i < draws; ++i) first += select_swap(cands, rewards, hw, true, rng) == Edge(0, 1);
  const double p = 2.0 / 3.0;
  EXPECT_NEAR(static_cast<double>(first) / draws, p, 3 * std::sqrt(p * (1 - p) / draws));
}

}  // namespace
}  // namespace agentmap
