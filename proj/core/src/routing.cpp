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

#include "agentmap/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "agentmap/parallel.hpp"

namespace agentmap {

void RoutingConfig::validate() const {
  if (groups == 0 || group_size == 0) throw std::invalid_argument("agent groups and group size must be positive");
  if (!(C >= 0.0)) throw std::invalid_argument("C must be non-negative");
  if (!(uniform_error >= 0.0 && uniform_error < 1.0)) throw std::invalid_argument("uniform error must lie in [0, 1)");
}

std::vector<std::vector<std::size_t>> rank_and_partition(std::span<const FitnessValue> fitness, std::size_t m,
                                                         std::size_t n) {
  if (m == 0 || n == 0) throw std::invalid_argument("m and n must be positive");
  if (fitness.size() != m * n) throw std::invalid_argument("population size must equal m * n");
  std::vector<std::size_t> order(fitness.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return fitness[b].log_value < fitness[a].log_value; });
  std::vector<std::vector<std::size_t>> groups(m);
  for (std::size_t k = 0; k < m; ++k) {
    groups[k].reserve(n);
    for (std::size_t j = 0; j < n; ++j) groups[k].push_back(order[k + m * j]);
  }
  return groups;
}

bool evolution_predicate(double r, double delta_g, double fit_best, double fit_worst, double C) {
  const double lhs = r * delta_g;
  if (lhs <= 0.0) return 0.0 > C;
  if (fit_worst <= 0.0) return true;
  return lhs * (fit_best / fit_worst) > C;
}

bool evolution_predicate_log(double r, double delta_g, double log_ratio, double C) {
  const double lhs = r * delta_g;
  if (lhs <= 0.0) return 0.0 > C;
  return C == 0.0 || std::log(lhs) + log_ratio > std::log(C);
}

EvolutionStats evolve_groups(std::vector<Agent> &agents, const std::vector<std::vector<std::size_t>> &groups,
                             std::span<const FitnessValue> fitness, double C, Rng &rng) {
  EvolutionStats stats;
  for (const auto &group : groups) {
    const double r = rng.uniform();
    if (group.size() < 2) continue;
    const std::size_t best = group.front();
    const std::size_t worst = group.back();
    if (agents[worst].finished()) continue;
    const std::size_t gb = agents[best].remaining_two_qubit();
    const std::size_t gw = agents[worst].remaining_two_qubit();
    const double delta_g = gw > gb ? static_cast<double>(gw - gb) : 0.0;
    const double log_ratio = fitness[best].log_value - fitness[worst].log_value;
    if (evolution_predicate_log(r, delta_g, log_ratio, C)) {
      agents[worst].adopt(agents[best]);
      ++stats.evolved;
    }
  }
  return stats;
}

RoutingResult route(const QuantumCircuit &circuit, const HardwareModel &hw, std::span<const Mapping> initial_mappings,
                    const RoutingConfig &cfg) {
  cfg.validate();
  const std::size_t total = cfg.num_agents();
  if (initial_mappings.size() != total) {
    throw std::invalid_argument("expected " + std::to_string(total) + " initial mappings, got " +
                                std::to_string(initial_mappings.size()));
  }
  const RoutingContext ctx(circuit, hw, cfg.variation_aware, cfg.uniform_error);
  const std::uint64_t agent_seed = mix_seed(cfg.seed, 1);
  std::vector<Agent> agents;
  agents.reserve(total);
  for (std::size_t i = 0; i < total; ++i) agents.emplace_back(i, ctx, initial_mappings[i], Rng(agent_seed, i));
  Rng evo_rng(mix_seed(cfg.seed, 2));

  const std::size_t nodes = hw.num_nodes();
  const std::size_t cap = std::max<std::size_t>(1, circuit.size()) * nodes * nodes;
  std::vector<FitnessValue> fit(total);
  RoutingReport report;
  const auto done = [&] {
    const auto finished = static_cast<std::size_t>(
        std::count_if(agents.begin(), agents.end(), [](const Agent &a) { return a.finished(); }));
    if (finished == total) return true;
    return cfg.stop_inclusive ? finished >= cfg.group_size : finished > cfg.group_size;
  };
  while (!done()) {
    if (report.iterations >= cap) throw RoutingDefect("routing exceeded the iteration cap");
    for (std::size_t i = 0; i < total; ++i) fit[i] = agents[i].fitness();
    const auto groups = rank_and_partition(fit, cfg.groups, cfg.group_size);
    report.evolutions += evolve_groups(agents, groups, fit, cfg.C, evo_rng).evolved;
    parallel_for(total, cfg.threads, [&](std::size_t i) {
      if (!agents[i].finished()) step_agent(agents[i]);
    });
    ++report.iterations;
  }

  std::size_t best = total;
  for (std::size_t i = 0; i < total; ++i) {
    fit[i] = agents[i].fitness();
    if (!agents[i].finished()) continue;
    if (best == total || fit[best].log_value < fit[i].log_value) best = i;
  }
  if (best == total) throw RoutingDefect("no agent finished routing");

  for (const Agent &a : agents) {
    report.agents.push_back({a.id(), a.finished(), a.swap_count(), a.remaining_two_qubit(), a.fitness().log_value});
  }
  const Agent &winner = agents[best];
  RoutingResult result{winner.physical_circuit(), winner.initial_mapping(), winner.mapping(), {}};
  report.swaps = winner.swap_count();
  report.g_add = 3 * report.swaps;
  report.depth = winner.depth();
  report.best_agent = best;
  report.log_fitness = fit[best].log_value;
  result.report = std::move(report);
  return result;
}

}  // namespace agentmap
