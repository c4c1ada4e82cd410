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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "agentmap/circuit.hpp"
#include "agentmap/mapping.hpp"

namespace agentmap::qasm {

struct ParseDiagnostic {
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based
  std::string message;

  std::string to_string() const;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(ParseDiagnostic diagnostic);
  const ParseDiagnostic &diagnostic() const { return diagnostic_; }

 private:
  ParseDiagnostic diagnostic_;
};

struct Register {
  std::string name;
  std::size_t offset = 0;  // first flattened index
  std::size_t size = 0;
};

struct Measurement {
  Qubit qubit;
  std::size_t clbit;
};

struct Program {
  QuantumCircuit circuit;
  std::vector<Register> qregs;
  std::vector<Register> cregs;
  std::vector<Measurement> measurements;
};

/// Parses the supported OpenQASM 2.0 subset. Quantum registers are flattened
/// in declaration order; ccx and cz are expanded into the native gate set;
/// barriers are dropped and measurements are returned separately.
/// Throws ParseError on any problem.
Program parse_program(std::string_view source);

inline QuantumCircuit parse(std::string_view source) { return parse_program(source).circuit; }

/// Throws std::runtime_error when the file cannot be read.
Program parse_program_file(const std::string &path);
QuantumCircuit parse_file(const std::string &path);

struct SerializeOptions {
  bool expand_swaps = false;
};

/// Emits OpenQASM 2.0 over a single register `q`. With a final mapping, a
/// classical register `c` of num_logical() bits is declared and each logical
/// qubit i is measured from its final node into c[i].
std::string serialize(const QuantumCircuit &circuit, const std::optional<Mapping> &final_mapping = std::nullopt,
                      SerializeOptions options = {});

}  // namespace agentmap::qasm
