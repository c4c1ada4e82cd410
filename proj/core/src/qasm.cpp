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

#include "agentmap/qasm.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace agentmap::qasm {

std::string ParseDiagnostic::to_string() const {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

ParseError::ParseError(ParseDiagnostic diagnostic)
    : std::runtime_error(diagnostic.to_string()), diagnostic_(std::move(diagnostic)) {}

namespace {

// Upper bound on the flattened qubit and clbit count; anything larger is
// certainly not a circuit we can map or simulate.
constexpr std::size_t kMaxRegisterBits = std::size_t{1} << 20;

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
  Tok type;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line_, col_});
        return out;
      }
      const std::size_t line = line_;
      const std::size_t col = col_;
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          advance();
        }
        out.push_back({Tok::Ident, std::string(src_.substr(start, pos_ - start)), line, col});
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        out.push_back({Tok::Number, lex_number(line, col), line, col});
      } else if (c == '"') {
        advance();
        std::size_t start = pos_;
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
          advance();
        }
        if (pos_ >= src_.size() || src_[pos_] != '"') {
          throw ParseError({line, col, "unterminated string literal"});
        }
        std::string text(src_.substr(start, pos_ - start));
        advance();
        out.push_back({Tok::String, std::move(text), line, col});
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        advance();
        advance();
        out.push_back({Tok::Symbol, "->", line, col});
      } else if (c == '=' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
        advance();
        advance();
        out.push_back({Tok::Symbol, "==", line, col});
      } else if (std::string_view(";,[](){}+-*/^").find(c) != std::string_view::npos) {
        advance();
        out.push_back({Tok::Symbol, std::string(1, c), line, col});
      } else {
        throw ParseError({line, col, std::string("unexpected character '") + c + "'"});
      }
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') {
          advance();
        }
      } else {
        return;
      }
    }
  }

  std::string lex_number(std::size_t line, std::size_t col) {
    std::size_t start = pos_;
    bool digits = false;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      advance();
      digits = true;
    }
    if (pos_ < src_.size() && src_[pos_] == '.') {
      advance();
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        advance();
        digits = true;
      }
    }
    if (!digits) {
      throw ParseError({line, col, "malformed number"});
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
        advance();
      }
      bool exp_digits = false;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        advance();
        exp_digits = true;
      }
      if (!exp_digits) {
        throw ParseError({line, col, "malformed exponent"});
      }
    }
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

struct Operand {
  const Register *reg;
  std::optional<std::size_t> index;  // nullopt: whole register
  const Token *where;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program run() {
    parse_header();
    while (peek().type != Tok::End) {
      statement();
    }
    Program program;
    QuantumCircuit circuit(num_qubits_);
    for (const Gate &g : gates_) {
      circuit.add(g);
    }
    program.circuit = std::move(circuit);
    program.qregs = qregs_;
    program.cregs = cregs_;
    program.measurements = std::move(measurements_);
    return program;
  }

 private:
  [[noreturn]] void fail(const Token &at, std::string message) const {
    throw ParseError({at.line, at.column, std::move(message)});
  }

  const Token &peek() const { return toks_[pos_]; }
  const Token &next() {
    const Token &t = toks_[pos_];
    if (t.type != Tok::End) {
      ++pos_;
    }
    return t;
  }
  bool accept(std::string_view symbol) {
    if (peek().type == Tok::Symbol && peek().text == symbol) {
      ++pos_;
      return true;
    }
    return false;
  }
  const Token &expect(std::string_view symbol) {
    const Token &t = peek();
    if (t.type != Tok::Symbol || t.text != symbol) {
      fail(t, "expected '" + std::string(symbol) + "'" + found(t));
    }
    return next();
  }
  const Token &expect_ident() {
    const Token &t = peek();
    if (t.type != Tok::Ident) {
      fail(t, "expected identifier" + found(t));
    }
    return next();
  }
  static std::string found(const Token &t) {
    if (t.type == Tok::End) {
      return " but reached end of input";
    }
    return " but found '" + t.text + "'";
  }

  std::size_t expect_index() {
    const Token &t = peek();
    if (t.type != Tok::Number || t.text.find_first_not_of("0123456789") != std::string::npos) {
      fail(t, "expected non-negative integer" + found(t));
    }
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
      fail(t, "integer '" + t.text + "' is out of range");
    }
    next();
    return value;
  }

  void parse_header() {
    const Token &t = peek();
    if (t.type != Tok::Ident || t.text != "OPENQASM") {
      fail(t, "expected 'OPENQASM 2.0;' header" + found(t));
    }
    next();
    const Token &version = peek();
    if (version.type != Tok::Number) {
      fail(version, "expected version number" + found(version));
    }
    if (version.text != "2.0" && version.text != "2") {
      fail(version, "only OpenQASM 2.0 is supported, got version " + version.text);
    }
    next();
    expect(";");
  }

  void statement() {
    const Token &t = peek();
    if (t.type != Tok::Ident) {
      fail(t, "expected statement" + found(t));
    }
    const std::string &word = t.text;
    if (word == "include") {
      next();
      if (peek().type != Tok::String) {
        fail(peek(), "expected file name string" + found(peek()));
      }
      next();
      expect(";");
    } else if (word == "qreg" || word == "creg") {
      declare(word == "qreg");
    } else if (word == "measure") {
      measure();
    } else if (word == "barrier") {
      next();
      operand_list(false);
      expect(";");
    } else if (word == "gate" || word == "opaque") {
      fail(t, "custom gate definitions are not supported");
    } else if (word == "if") {
      fail(t, "classical control ('if') is not supported");
    } else if (word == "reset") {
      fail(t, "'reset' is not supported");
    } else {
      gate_statement();
    }
  }

  void declare(bool quantum) {
    next();
    const Token &name = expect_ident();
    if (find_register(qregs_, name.text) || find_register(cregs_, name.text)) {
      fail(name, "register '" + name.text + "' redeclared");
    }
    expect("[");
    const Token &size_tok = peek();
    const std::size_t size = expect_index();
    expect("]");
    expect(";");
    std::size_t &total = quantum ? num_qubits_ : num_clbits_;
    if (size == 0) {
      fail(size_tok, "register '" + name.text + "' must have positive size");
    }
    if (size > kMaxRegisterBits || total + size > kMaxRegisterBits) {
      fail(size_tok, "register '" + name.text + "' is too large");
    }
    (quantum ? qregs_ : cregs_).push_back({name.text, total, size});
    total += size;
  }

  static const Register *find_register(const std::vector<Register> &regs, const std::string &name) {
    for (const auto &r : regs) {
      if (r.name == name) {
        return &r;
      }
    }
    return nullptr;
  }

  Operand operand(bool classical) {
    const Token &name = expect_ident();
    const auto &regs = classical ? cregs_ : qregs_;
    const Register *reg = find_register(regs, name.text);
    if (reg == nullptr) {
      fail(name, std::string(classical ? "classical" : "quantum") + " register '" + name.text +
                     "' is not declared");
    }
    Operand op{reg, std::nullopt, &name};
    if (accept("[")) {
      const Token &idx_tok = peek();
      const std::size_t idx = expect_index();
      if (idx >= reg->size) {
        fail(idx_tok, "index " + std::to_string(idx) + " out of range for register '" + reg->name +
                          "' of size " + std::to_string(reg->size));
      }
      op.index = idx;
      expect("]");
    }
    return op;
  }

  std::vector<Operand> operand_list(bool classical) {
    std::vector<Operand> ops{operand(classical)};
    while (accept(",")) {
      ops.push_back(operand(classical));
    }
    return ops;
  }

  // Number of broadcast instances, or fails if whole-register operands differ
  // in size.
  std::size_t broadcast_width(const std::vector<Operand> &ops) const {
    std::optional<std::size_t> width;
    for (const Operand &op : ops) {
      if (!op.index) {
        if (width && *width != op.reg->size) {
          fail(*op.where, "register size mismatch in broadcast over '" + op.reg->name + "'");
        }
        width = op.reg->size;
      }
    }
    return width.value_or(1);
  }

  static std::size_t flat(const Operand &op, std::size_t instance) {
    return op.reg->offset + op.index.value_or(instance);
  }

  void measure() {
    next();
    Operand q = operand(false);
    expect("->");
    Operand c = operand(true);
    expect(";");
    const std::vector<Operand> both{q, c};
    const std::size_t width = broadcast_width(both);
    if (q.index.has_value() != c.index.has_value()) {
      fail(*q.where, "measure must pair a qubit with a bit or a register with a register");
    }
    for (std::size_t i = 0; i < width; ++i) {
      measurements_.push_back({static_cast<Qubit>(flat(q, i)), flat(c, i)});
    }
  }

  // expr := term (('+'|'-') term)*
  double expr() {
    double value = term();
    while (true) {
      if (accept("+")) {
        value += term();
      } else if (accept("-")) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  double term() {
    double value = unary();
    while (true) {
      if (accept("*")) {
        value *= unary();
      } else if (peek().type == Tok::Symbol && peek().text == "/") {
        const Token &slash = next();
        const double divisor = unary();
        if (divisor == 0.0) {
          fail(slash, "division by zero in parameter expression");
        }
        value /= divisor;
      } else {
        return value;
      }
    }
  }

  double unary() {
    if (accept("-")) {
      return -unary();
    }
    if (accept("+")) {
      return unary();
    }
    return primary();
  }

  double primary() {
    const Token &t = peek();
    if (t.type == Tok::Number) {
      next();
      return std::strtod(t.text.c_str(), nullptr);
    }
    if (t.type == Tok::Ident) {
      if (t.text == "pi") {
        next();
        return std::numbers::pi;
      }
      fail(t, "unsupported symbol '" + t.text + "' in parameter expression");
    }
    if (accept("(")) {
      const double value = expr();
      expect(")");
      return value;
    }
    fail(t, "expected parameter expression" + found(t));
  }

  void gate_statement() {
    const Token &name_tok = next();
    std::string name = name_tok.text;
    if (name == "CX") {
      name = "cx";
    } else if (name == "U" || name == "u") {
      name = "u3";
    } else if (name == "p") {
      name = "u1";
    }

    std::vector<double> params;
    if (accept("(")) {
      if (!accept(")")) {
        params.push_back(expr());
        while (accept(",")) {
          params.push_back(expr());
        }
        expect(")");
      }
    }
    std::vector<Operand> ops = operand_list(false);
    expect(";");

    std::size_t arity = 0;
    std::size_t num_params = 0;
    std::optional<GateKind> kind;
    if (name == "ccx") {
      arity = 3;
    } else if (name == "cz") {
      arity = 2;
    } else {
      kind = gate_kind_from_name(name);
      if (!kind) {
        fail(name_tok, "unsupported gate '" + name_tok.text + "'");
      }
      arity = gate_arity(*kind);
      num_params = gate_param_count(*kind);
    }
    if (ops.size() != arity) {
      fail(name_tok, "gate '" + name_tok.text + "' takes " + std::to_string(arity) + " qubit(s), got " +
                         std::to_string(ops.size()));
    }
    if (params.size() != num_params) {
      fail(name_tok, "gate '" + name_tok.text + "' takes " + std::to_string(num_params) +
                         " parameter(s), got " + std::to_string(params.size()));
    }
    const std::size_t width = broadcast_width(ops);
    for (std::size_t i = 0; i < width; ++i) {
      std::vector<Qubit> qs;
      for (const Operand &op : ops) {
        const auto q = static_cast<Qubit>(flat(op, i));
        for (Qubit prev : qs) {
          if (prev == q) {
            fail(name_tok, "gate '" + name_tok.text + "' repeats a qubit operand");
          }
        }
        qs.push_back(q);
      }
      emit(name, kind, qs, params);
    }
  }

  void emit(const std::string &name, std::optional<GateKind> kind, const std::vector<Qubit> &qs,
            const std::vector<double> &params) {
    if (kind) {
      gates_.emplace_back(*kind, qs, params);
      return;
    }
    auto one = [this](GateKind k, Qubit q) { gates_.push_back(Gate::single(k, q)); };
    auto cx = [this](Qubit c, Qubit t) { gates_.push_back(Gate::cx(c, t)); };
    if (name == "cz") {
      one(GateKind::H, qs[1]);
      cx(qs[0], qs[1]);
      one(GateKind::H, qs[1]);
      return;
    }
    // ccx a, b, c: the qelib1 Clifford+T decomposition (6 CX, 9 single-qubit).
    const Qubit a = qs[0];
    const Qubit b = qs[1];
    const Qubit c = qs[2];
    one(GateKind::H, c);
    cx(b, c);
    one(GateKind::Tdg, c);
    cx(a, c);
    one(GateKind::T, c);
    cx(b, c);
    one(GateKind::Tdg, c);
    cx(a, c);
    one(GateKind::T, b);
    one(GateKind::T, c);
    one(GateKind::H, c);
    cx(a, b);
    one(GateKind::T, a);
    one(GateKind::Tdg, b);
    cx(a, b);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Register> qregs_;
  std::vector<Register> cregs_;
  std::size_t num_qubits_ = 0;
  std::size_t num_clbits_ = 0;
  std::vector<Gate> gates_;
  std::vector<Measurement> measurements_;
};

std::string format_param(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace

Program parse_program(std::string_view source) {
  return Parser(Lexer(source).run()).run();
}

Program parse_program_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read circuit file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_program(buffer.str());
}

QuantumCircuit parse_file(const std::string &path) { return parse_program_file(path).circuit; }

std::string serialize(const QuantumCircuit &circuit, const std::optional<Mapping> &final_mapping,
                      SerializeOptions options) {
  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  out += "qreg q[" + std::to_string(circuit.num_qubits()) + "];\n";
  if (final_mapping) {
    out += "creg c[" + std::to_string(final_mapping->num_logical()) + "];\n";
  }
  auto q = [](Qubit i) { return "q[" + std::to_string(i) + "]"; };
  for (const Gate &g : circuit.gates()) {
    if (options.expand_swaps && g.kind() == GateKind::SWAP) {
      const Qubit a = g.qubit(0);
      const Qubit b = g.qubit(1);
      out += "cx " + q(a) + "," + q(b) + ";\n";
      out += "cx " + q(b) + "," + q(a) + ";\n";
      out += "cx " + q(a) + "," + q(b) + ";\n";
      continue;
    }
    out += gate_name(g.kind());
    if (!g.params().empty()) {
      out += '(';
      for (std::size_t i = 0; i < g.params().size(); ++i) {
        if (i != 0) {
          out += ',';
        }
        out += format_param(g.params()[i]);
      }
      out += ')';
    }
    out += ' ';
    for (std::size_t i = 0; i < g.arity(); ++i) {
      if (i != 0) {
        out += ',';
      }
      out += q(g.qubit(i));
    }
    out += ";\n";
  }
  if (final_mapping) {
    for (Qubit l = 0; l < final_mapping->num_logical(); ++l) {
      out += "measure " + q(final_mapping->physical(l)) + " -> c[" + std::to_string(l) + "];\n";
    }
  }
  return out;
}

}  // namespace agentmap::qasm
