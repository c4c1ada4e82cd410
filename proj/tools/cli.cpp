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

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "agentmap/hardware.hpp"
#include "agentmap/qasm.hpp"
#include "agentmap/simulator.hpp"

namespace agentmap::cli {

namespace fs = std::filesystem;

namespace {

class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::uint64_t to_u64(const std::string &key, const std::string &v) {
  std::size_t used = 0;
  unsigned long long x = 0;
  try {
    x = std::stoull(v, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != v.size() || v.empty() || v[0] == '-') throw std::invalid_argument(key + ": expected a non-negative integer, got '" + v + "'");
  return x;
}

double to_double(const std::string &key, const std::string &v) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw std::invalid_argument(key + ": expected a number, got '" + v + "'");
  return x;
}

MapMode to_mode(const std::string &v) {
  std::string s = v;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "ma") return MapMode::MA;
  if (s == "ma_na") return MapMode::MA_NA;
  throw std::invalid_argument("mode: expected ma or ma_na, got '" + v + "'");
}

std::pair<std::uint64_t, std::uint64_t> to_pair(const std::string &key, const std::string &v) {
  const auto comma = v.find(',');
  if (comma == std::string::npos) throw std::invalid_argument(key + ": expected two comma-separated integers");
  return {to_u64(key, trim(v.substr(0, comma))), to_u64(key, trim(v.substr(comma + 1)))};
}

bool to_bool(const std::string &key, const std::string &v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw std::invalid_argument(key + ": expected true or false");
}

std::string read_text(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

fs::path resolve_device(const std::string &spec) {
  const fs::path direct(spec);
  if (fs::exists(direct)) return direct;
  std::vector<fs::path> dirs;
  if (const char *env = std::getenv("AGENTMAP_DEVICE_DIR")) dirs.emplace_back(env);
#ifdef AGENTMAP_SOURCE_DEVICE_DIR
  dirs.emplace_back(AGENTMAP_SOURCE_DEVICE_DIR);
#endif
#ifdef AGENTMAP_INSTALL_DEVICE_DIR
  dirs.emplace_back(AGENTMAP_INSTALL_DEVICE_DIR);
#endif
  for (const auto &d : dirs) {
    const fs::path p = d / (spec + ".json");
    if (fs::exists(p)) return p;
  }
  return direct;
}

std::string format_double(double x, const char *fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

// Noisy-device PST of a routed circuit, or nullopt when undefined.
std::optional<double> routed_pst(const QuantumCircuit &logical, const RoutingResult &routed, const HardwareModel &hw,
                                 std::uint64_t shots, std::uint64_t seed, unsigned threads) {
  if (shots == 0) return std::nullopt;
  SimulationOptions opts;
  opts.threads = threads;
  try {
    const auto ideal = deterministic_output(logical, {}, opts);
    if (!ideal) return std::nullopt;
    return estimate_pst(routed.physical, *ideal, hw, NoiseModel::variation(), shots, mix_seed(seed, 0x9e57), 
                        routed.final_mapping.assignment(), opts)
        .pst;
  } catch (const std::invalid_argument &) {
    return std::nullopt;  // beyond the simulator cap
  }
}

struct RunOutcome {
  ReportRow row;
  RoutingResult routing;
};

RunOutcome map_once(const std::string &name, const QuantumCircuit &circuit, const HardwareModel &hw,
                    const Settings &s) {
  if (circuit.num_qubits() > hw.num_nodes()) {
    throw Infeasible(name + ": " + std::to_string(circuit.num_qubits()) + " logical qubits exceed the " +
                     std::to_string(hw.num_nodes()) + " nodes of " + hw.name());
  }
  const auto start = std::chrono::steady_clock::now();
  MapResult mapped = map_circuit(circuit, hw, s.mapper_config());
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!is_topology_compliant(mapped.routing.physical, hw.graph())) {
    throw RoutingDefect("routed circuit violates the coupling graph");
  }
  RunOutcome out;
  out.row.name = name;
  out.row.n = circuit.num_qubits();
  out.row.g_ori = circuit.size();
  out.row.g_add = mapped.routing.report.g_add;
  out.row.dep = mapped.routing.report.depth;
  out.row.pst = routed_pst(circuit, mapped.routing, hw, s.shots, s.seed, s.threads);
  out.row.seconds = seconds;
  out.row.seed = s.seed;
  out.row.mode = mode_name(s.mode);
  out.routing = std::move(mapped.routing);
  return out;
}

// Options common to map and bench.
struct SharedFlags {
  std::string agents, ils, mode, config;
  double C = 1.0, uniform_error = 0.0;
  std::uint64_t seed = 0, shots = 0, placement_shots = 0;
  unsigned threads = 1;
  bool stop_inclusive = false;
  bool no_timing = false;

  void attach(CLI::App *cmd) {
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_option("--agents", agents, "Agent groups and group size as m,n (default 20,5)");
    cmd->add_option("--C", C, "Evolution threshold constant (default 1)");
    cmd->add_option("--mode", mode, "ma (variation-aware) or ma_na (uniform error)");
    cmd->add_option("--uniform-error", uniform_error, "Error rate assumed by ma_na (default: calibration mean)");
    cmd->add_option("--ils", ils, "Placement iterations as I,J (default 10,5)");
    cmd->add_option("--placement-shots", placement_shots, "Shots per placement evaluation (default 1024)");
    cmd->add_option("--shots", shots, "Shots for the reported PST; 0 skips it (default 8192)");
    cmd->add_option("--threads", threads, "Worker threads (default 1)");
    cmd->add_option("--config", config, "key=value defaults file");
    cmd->add_flag("--stop-inclusive", stop_inclusive, "Stop when finished agents reach n instead of exceeding it");
    cmd->add_flag("--no-timing", no_timing, "Leave the t column empty");
  }

  Settings resolve(const CLI::App *cmd) const {
    Settings s;
    if (!config.empty()) apply_config_text(s, read_text(config));
    const auto given = [&](const char *flag) { return cmd->count(flag) > 0; };
    if (given("--seed")) s.seed = seed;
    if (given("--agents")) std::tie(s.m, s.n) = to_pair("agents", agents);
    if (given("--C")) s.C = C;
    if (given("--mode")) s.mode = to_mode(mode);
    if (given("--uniform-error")) s.uniform_error = uniform_error;
    if (given("--ils")) std::tie(s.I, s.J) = to_pair("ils", ils);
    if (given("--placement-shots")) s.placement_shots = placement_shots;
    if (given("--shots")) s.shots = shots;
    if (given("--threads")) s.threads = threads;
    if (stop_inclusive) s.stop_inclusive = true;
    if (s.m == 0 || s.n == 0) throw std::invalid_argument("agents: m and n must be positive");
    if (s.I == 0 || s.J == 0) throw std::invalid_argument("ils: I and J must be positive");
    if (s.placement_shots == 0) throw std::invalid_argument("placement_shots must be positive");
    if (s.threads == 0) s.threads = 1;
    return s;
  }
};

std::string stem_of(const std::string &path) { return fs::path(path).stem().string(); }

int cmd_map(const SharedFlags &f, const CLI::App *cmd, const std::string &circuit_path, const std::string &device,
            const std::string &out_path, const std::string &report_path, bool expand, std::ostream &out) {
  const Settings s = f.resolve(cmd);
  const HardwareModel hw = load_hardware(resolve_device(device));
  const QuantumCircuit circuit = qasm::parse_file(circuit_path);
  RunOutcome run = map_once(stem_of(circuit_path), circuit, hw, s);
  if (f.no_timing) run.row.seconds.reset();
  if (!out_path.empty()) {
    write_text(out_path, qasm::serialize(run.routing.physical, run.routing.final_mapping, {expand}));
  }
  const std::string csv = csv_header() + csv_row(run.row);
  if (!report_path.empty()) write_text(report_path, csv);
  out << csv;
  return kOk;
}

std::vector<Qubit> readout_of(const qasm::Program &prog) {
  std::vector<Qubit> readout;
  if (prog.measurements.empty()) return readout;
  std::map<std::size_t, Qubit> by_bit;
  for (const auto &m : prog.measurements) by_bit[m.clbit] = m.qubit;
  for (const auto &[bit, q] : by_bit) readout.push_back(q);
  return readout;
}

int cmd_simulate(const std::string &circuit_path, const std::string &device, std::uint64_t shots, double scale,
                 const std::optional<double> &uniform, std::uint64_t seed, unsigned threads, std::ostream &out,
                 std::ostream &err) {
  const HardwareModel hw = load_hardware(resolve_device(device));
  const qasm::Program prog = qasm::parse_program_file(circuit_path);
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  if (!(scale >= 0.0)) throw std::invalid_argument("scale must be non-negative");
  const NoiseModel noise = uniform ? NoiseModel::uniform(*uniform, scale) : NoiseModel::variation(scale);
  if (!uniform) {
    if (prog.circuit.num_qubits() > hw.num_nodes()) {
      throw std::invalid_argument("circuit has more qubits than " + hw.name());
    }
    if (auto bad = first_violation(prog.circuit, hw.graph())) {
      throw std::invalid_argument("gate " + std::to_string(*bad) + " does not act on a coupling edge of " + hw.name());
    }
  }
  const std::vector<Qubit> readout = readout_of(prog);
  SimulationOptions opts;
  opts.threads = threads == 0 ? 1 : threads;
  const auto ideal = deterministic_output(prog.circuit, readout, opts);
  if (!ideal) {
    err << "error: noiseless output is not a single basis state; PST is undefined\n";
    return kNonDeterministic;
  }
  const PstEstimate est = estimate_pst(prog.circuit, *ideal, hw, noise, shots, seed, readout, opts);
  const std::size_t width = readout.empty() ? prog.circuit.num_qubits() : readout.size();
  out << "pst=" << format_double(est.pst, "%.6f") << " stderr=" << format_double(est.stderr_, "%.6f")
      << " successes=" << est.successes << " shots=" << est.shots << " ideal=" << format_bits(*ideal, width) << '\n';
  return kOk;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size();
  return k % 2 == 1 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

int cmd_bench(const SharedFlags &f, const CLI::App *cmd, const std::string &suite, const std::string &device,
              std::size_t runs, const std::string &modes, const std::string &report_path, std::ostream &out) {
  Settings base = f.resolve(cmd);
  if (runs == 0) throw std::invalid_argument("runs must be positive");
  if (!fs::is_directory(suite)) throw std::runtime_error("suite '" + suite + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(suite)) {
    if (entry.is_regular_file() && entry.path().extension() == ".qasm") files.push_back(entry.path());
  }
  if (files.empty()) throw std::runtime_error("suite '" + suite + "' contains no .qasm files");
  std::sort(files.begin(), files.end());
  std::vector<MapMode> mode_list;
  if (modes == "both") {
    mode_list = {MapMode::MA, MapMode::MA_NA};
  } else {
    mode_list = {cmd->count("--mode") > 0 || modes.empty() ? base.mode : to_mode(modes)};
  }
  const HardwareModel hw = load_hardware(resolve_device(device));

  std::string csv = csv_header();
  csv.pop_back();
  csv += ",g_add_median,dep_median,pst_median,runs\n";
  for (const auto &file : files) {
    const QuantumCircuit circuit = qasm::parse_file(file.string());
    for (MapMode mode : mode_list) {
      std::vector<ReportRow> rows;
      for (std::size_t r = 0; r < runs; ++r) {
        Settings s = base;
        s.mode = mode;
        s.seed = base.seed + r;
        rows.push_back(map_once(file.stem().string(), circuit, hw, s).row);
      }
      ReportRow best = *std::min_element(rows.begin(), rows.end(), [](const ReportRow &a, const ReportRow &b) {
        return std::tie(a.g_add, a.dep, a.seed) < std::tie(b.g_add, b.dep, b.seed);
      });
      std::vector<double> adds, deps, psts;
      for (const auto &row : rows) {
        adds.push_back(static_cast<double>(row.g_add));
        deps.push_back(static_cast<double>(row.dep));
        if (row.pst) psts.push_back(*row.pst);
        best.dep = std::min(best.dep, row.dep);
        if (row.pst && (!best.pst || *row.pst > *best.pst)) best.pst = row.pst;
      }
      if (f.no_timing) best.seconds.reset();
      std::string line = csv_row(best);
      line.pop_back();
      line += "," + format_double(median(adds), "%g") + "," + format_double(median(deps), "%g") + ",";
      if (psts.size() == rows.size()) line += format_double(median(psts), "%.6f");
      line += "," + std::to_string(runs) + "\n";
      csv += line;
      out << line << std::flush;
    }
  }
  if (!report_path.empty()) write_text(report_path, csv);
  return kOk;
}

template <typename Fn>
int guarded(Fn &&fn, std::ostream &err) {
  try {
    return fn();
  } catch (const qasm::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const HardwareError &e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Infeasible &e) {
    err << "error: " << e.what() << '\n';
    return kInfeasible;
  } catch (const NonDeterministicOutput &e) {
    err << "error: " << e.what() << '\n';
    return kNonDeterministic;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::out_of_range &e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::logic_error &e) {
    err << "internal error: " << e.what() << '\n';
    return kDefect;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace

MapperConfig Settings::mapper_config() const {
  MapperConfig cfg;
  cfg.groups = m;
  cfg.group_size = n;
  cfg.C = C;
  cfg.outer_iters = I;
  cfg.inner_iters = J;
  cfg.placement_shots = placement_shots;
  cfg.seed = seed;
  cfg.mode = mode;
  cfg.uniform_error = uniform_error;
  cfg.stop_inclusive = stop_inclusive;
  cfg.threads = threads;
  return cfg;
}

void apply_config_text(Settings &s, const std::string &text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "m") s.m = to_u64(key, value);
    else if (key == "n") s.n = to_u64(key, value);
    else if (key == "C") s.C = to_double(key, value);
    else if (key == "I") s.I = to_u64(key, value);
    else if (key == "J") s.J = to_u64(key, value);
    else if (key == "shots") s.shots = to_u64(key, value);
    else if (key == "placement_shots") s.placement_shots = to_u64(key, value);
    else if (key == "seed") s.seed = to_u64(key, value);
    else if (key == "mode") s.mode = to_mode(value);
    else if (key == "uniform_error") s.uniform_error = to_double(key, value);
    else if (key == "stop_inclusive") s.stop_inclusive = to_bool(key, value);
    else if (key == "threads") s.threads = static_cast<unsigned>(to_u64(key, value));
    else throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
}

std::string csv_header() { return "name,n,g_ori,g_add,dep,pst,t,seed,mode\n"; }

std::string csv_row(const ReportRow &row) {
  std::ostringstream os;
  os << row.name << ',' << row.n << ',' << row.g_ori << ',' << row.g_add << ',' << row.dep << ',';
  if (row.pst) os << format_double(*row.pst, "%.6f");
  os << ',';
  if (row.seconds) os << format_double(*row.seconds, "%.3f");
  os << ',' << row.seed << ',' << row.mode << '\n';
  return os.str();
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Noise-variation-aware qubit mapping with multi-agent routing", "agentmap"};
  app.require_subcommand(1);

  auto *map = app.add_subcommand("map", "Place and route one circuit");
  SharedFlags map_flags;
  std::string circuit, device, out_path, report;
  bool expand = false;
  map->add_option("--circuit", circuit, "OpenQASM 2.0 input")->required();
  map->add_option("--device", device, "Device JSON path or shipped name (belem, guadalupe, tokyo)")->required();
  map->add_option("--out", out_path, "Write the routed circuit here");
  map->add_option("--report", report, "Write the CSV report here");
  map->add_flag("--expand-swaps", expand, "Emit SWAPs as three CX");
  map_flags.attach(map);

  auto *sim = app.add_subcommand("simulate", "Estimate PST of a circuit under CX noise");
  std::string sim_circuit, sim_device;
  std::uint64_t sim_shots = 8192, sim_seed = 0;
  double scale = 1.0, uniform = 0.0;
  unsigned sim_threads = 1;
  sim->add_option("--circuit", sim_circuit, "OpenQASM 2.0 input")->required();
  sim->add_option("--device", sim_device, "Device JSON path or shipped name")->required();
  sim->add_option("--shots", sim_shots, "Trajectories (default 8192)");
  sim->add_option("--scale", scale, "Multiplier on every CX error (default 1)");
  sim->add_option("--uniform-error", uniform, "Use this error for every CX instead of the calibration");
  sim->add_option("--seed", sim_seed, "Random seed");
  sim->add_option("--threads", sim_threads, "Worker threads");

  auto *bench = app.add_subcommand("bench", "Map every circuit of a directory several times");
  SharedFlags bench_flags;
  std::string suite, bench_device, bench_report, bench_modes;
  std::size_t runs = 1;
  bench->add_option("--suite", suite, "Directory of .qasm files")->required();
  bench->add_option("--device", bench_device, "Device JSON path or shipped name")->required();
  bench->add_option("--runs", runs, "Seeded runs per circuit (seeds seed..seed+runs-1)");
  bench->add_option("--report", bench_report, "Write the CSV report here");
  bench->add_option("--modes", bench_modes, "ma, ma_na or both (default: --mode)");
  bench_flags.attach(bench);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  if (map->parsed()) {
    return guarded([&] { return cmd_map(map_flags, map, circuit, device, out_path, report, expand, out); }, err);
  }
  if (sim->parsed()) {
    std::optional<double> u;
    if (sim->count("--uniform-error") > 0) u = uniform;
    return guarded(
        [&] { return cmd_simulate(sim_circuit, sim_device, sim_shots, scale, u, sim_seed, sim_threads, out, err); },
        err);
  }
  return guarded([&] { return cmd_bench(bench_flags, bench, suite, bench_device, runs, bench_modes, bench_report, out); },
                 err);
}

}  // namespace agentmap::cli
