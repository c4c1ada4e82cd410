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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "agentmap/mapper.hpp"

namespace agentmap::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kInfeasible = 2,
  kDefect = 3,
  kNonDeterministic = 4,
};

/// Tunables shared by `map` and `bench`. Precedence when filled from the
/// command line: flags, then --config file, then these defaults.
struct Settings {
  std::size_t m = 20;
  std::size_t n = 5;
  double C = 1.0;
  std::size_t I = 10;
  std::size_t J = 5;
  std::uint64_t shots = 8192;
  std::uint64_t placement_shots = 1024;
  std::uint64_t seed = 0;
  MapMode mode = MapMode::MA;
  std::optional<double> uniform_error;
  bool stop_inclusive = false;
  unsigned threads = 1;

  MapperConfig mapper_config() const;
};

/// Applies `key=value` lines ('#' starts a comment). Throws
/// std::invalid_argument on unknown keys or bad values.
void apply_config_text(Settings &settings, const std::string &text);

struct ReportRow {
  std::string name;
  std::size_t n = 0;
  std::size_t g_ori = 0;
  std::size_t g_add = 0;
  std::size_t dep = 0;
  std::optional<double> pst;
  std::optional<double> seconds;
  std::uint64_t seed = 0;
  std::string mode;
};

std::string csv_header();
std::string csv_row(const ReportRow &row);

/// Entry point; `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace agentmap::cli
