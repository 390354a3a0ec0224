/*
 * Copyright 2026 The qwinoc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "qwinoc/circuit.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qwinoc/event_queue.hpp"

namespace qwinoc {

namespace {

constexpr std::string_view kOpcodeNames[kOpcodeCount] = {"h", "x", "sx", "rz", "cx"};

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw std::invalid_argument("circuit parse error at line " + std::to_string(line_no) + ": " +
                              what);
}

// Native-set identity H = RZ(pi/2) . SX . RZ(pi/2), angles implicit.
void emit_native_h(std::vector<Gate>& gates, std::uint32_t q) {
  gates.push_back(g1(Opcode::RZ, q));
  gates.push_back(g1(Opcode::SX, q));
  gates.push_back(g1(Opcode::RZ, q));
}

// CPhase(c, t) = RZ(t) . CX(c,t) . RZ(t) . CX(c,t) . RZ(c).
void emit_cphase(std::vector<Gate>& gates, std::uint32_t c, std::uint32_t t) {
  gates.push_back(g1(Opcode::RZ, t));
  gates.push_back(g2(Opcode::CX, c, t));
  gates.push_back(g1(Opcode::RZ, t));
  gates.push_back(g2(Opcode::CX, c, t));
  gates.push_back(g1(Opcode::RZ, c));
}

void emit_swap(std::vector<Gate>& gates, std::uint32_t a, std::uint32_t b) {
  gates.push_back(g2(Opcode::CX, a, b));
  gates.push_back(g2(Opcode::CX, b, a));
  gates.push_back(g2(Opcode::CX, a, b));
}

}  // namespace

bool is_two_qubit(Opcode op) { return op == Opcode::CX; }

std::string_view opcode_name(Opcode op) { return kOpcodeNames[static_cast<std::size_t>(op)]; }

std::optional<Opcode> opcode_from_name(std::string_view name) {
  for (std::uint32_t i = 0; i < kOpcodeCount; ++i) {
    if (kOpcodeNames[i] == name) return static_cast<Opcode>(i);
  }
  return std::nullopt;
}

void validate_circuit(const LogicalCircuit& c) {
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    const bool two = is_two_qubit(g.opcode);
    if (two != (g.q1 != kNoOperand)) {
      throw std::invalid_argument("gate " + std::to_string(i) + ": operand count does not match " +
                                  std::string(opcode_name(g.opcode)));
    }
    if (g.q0 >= c.n_qubits || (two && g.q1 >= c.n_qubits)) {
      throw std::invalid_argument("gate " + std::to_string(i) + ": operand out of range");
    }
    if (two && g.q0 == g.q1) {
      throw std::invalid_argument("gate " + std::to_string(i) + ": identical operands");
    }
  }
}

LogicalCircuit gen_random_circuit(std::uint32_t n_qubits, std::uint32_t n_gates,
                                  double two_qubit_fraction, std::uint64_t seed) {
  if (n_qubits == 0) throw std::invalid_argument("gen_random_circuit: n_qubits must be > 0");
  if (two_qubit_fraction < 0.0 || two_qubit_fraction > 1.0) {
    throw std::invalid_argument("gen_random_circuit: two_qubit_fraction outside [0, 1]");
  }
  const auto n_two = static_cast<std::uint32_t>(
      std::llround(static_cast<double>(n_gates) * two_qubit_fraction));
  if (n_two > 0 && n_qubits < 2) {
    throw std::invalid_argument("gen_random_circuit: two-qubit gates need at least 2 qubits");
  }

  Rng rng(seed);
  constexpr std::string_view kStream = "circuit-gen";

  // Spread the two-qubit gates uniformly over the gate positions with a
  // Fisher-Yates pass over the arity flags.
  std::vector<std::uint8_t> two_flags(n_gates, 0);
  for (std::uint32_t i = 0; i < n_two; ++i) two_flags[i] = 1;
  for (std::uint32_t i = n_gates; i > 1; --i) {
    const auto j = static_cast<std::uint32_t>(rng.below(kStream, i));
    std::swap(two_flags[i - 1], two_flags[j]);
  }

  constexpr Opcode kSingle[] = {Opcode::RZ, Opcode::SX, Opcode::X};

  LogicalCircuit c;
  c.n_qubits = n_qubits;
  c.gates.reserve(n_gates);
  for (std::uint32_t i = 0; i < n_gates; ++i) {
    if (two_flags[i]) {
      const auto a = static_cast<std::uint32_t>(rng.below(kStream, n_qubits));
      auto b = static_cast<std::uint32_t>(rng.below(kStream, n_qubits - 1));
      if (b >= a) ++b;  // uniform over pairs without replacement
      c.gates.push_back(g2(Opcode::CX, a, b));
    } else {
      const auto op = kSingle[rng.below(kStream, 3)];
      const auto q = static_cast<std::uint32_t>(rng.below(kStream, n_qubits));
      c.gates.push_back(g1(op, q));
    }
  }
  return c;
}

LogicalCircuit gen_ghz(std::uint32_t n_qubits) {
  if (n_qubits == 0) throw std::invalid_argument("gen_ghz: n_qubits must be > 0");
  LogicalCircuit c;
  c.n_qubits = n_qubits;
  c.gates.push_back(g1(Opcode::H, 0));
  for (std::uint32_t i = 0; i + 1 < n_qubits; ++i) c.gates.push_back(g2(Opcode::CX, i, i + 1));
  return c;
}

LogicalCircuit gen_qft(std::uint32_t n_qubits) {
  if (n_qubits == 0) throw std::invalid_argument("gen_qft: n_qubits must be > 0");
  LogicalCircuit c;
  c.n_qubits = n_qubits;
  for (std::uint32_t i = 0; i < n_qubits; ++i) {
    emit_native_h(c.gates, i);
    for (std::uint32_t j = i + 1; j < n_qubits; ++j) emit_cphase(c.gates, j, i);
  }
  for (std::uint32_t i = 0; i < n_qubits / 2; ++i) emit_swap(c.gates, i, n_qubits - 1 - i);
  return c;
}

LogicalCircuit gen_graphstate(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                              std::uint32_t n_qubits) {
  if (n_qubits == 0) throw std::invalid_argument("gen_graphstate: n_qubits must be > 0");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("gen_graphstate: self-loop on vertex " + std::to_string(u));
    if (u >= n_qubits || v >= n_qubits) {
      throw std::invalid_argument("gen_graphstate: edge vertex out of range");
    }
    const std::pair<std::uint32_t, std::uint32_t> key{std::min(u, v), std::max(u, v)};
    for (const auto& s : seen) {
      if (s == key) {
        throw std::invalid_argument("gen_graphstate: duplicate edge (" + std::to_string(u) + "," +
                                    std::to_string(v) + ")");
      }
    }
    seen.push_back(key);
  }

  LogicalCircuit c;
  c.n_qubits = n_qubits;
  for (std::uint32_t q = 0; q < n_qubits; ++q) c.gates.push_back(g1(Opcode::H, q));
  for (const auto& [u, v] : edges) {
    emit_native_h(c.gates, v);
    c.gates.push_back(g2(Opcode::CX, u, v));
    emit_native_h(c.gates, v);
  }
  return c;
}

LogicalCircuit parse_circuit_file(std::istream& in) {
  LogicalCircuit c;
  bool have_header = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank or comment-only

    if (!have_header) {
      if (tok != "qubits") parse_fail(line_no, "expected 'qubits <N>' header, got '" + tok + "'");
      long long n = -1;
      if (!(ls >> n) || n <= 0) parse_fail(line_no, "qubit count must be a positive integer");
      std::string extra;
      if (ls >> extra) parse_fail(line_no, "trailing token '" + extra + "' after header");
      c.n_qubits = static_cast<std::uint32_t>(n);
      have_header = true;
      continue;
    }

    const auto op = opcode_from_name(tok);
    if (!op) parse_fail(line_no, "unknown mnemonic '" + tok + "'");
    long long q0 = -1, q1 = -1;
    if (!(ls >> q0)) parse_fail(line_no, "missing first operand");
    const bool two = is_two_qubit(*op);
    if (two && !(ls >> q1)) parse_fail(line_no, "two-qubit mnemonic needs two operands");
    std::string extra;
    if (ls >> extra) parse_fail(line_no, "trailing token '" + extra + "'");
    if (q0 < 0 || q0 >= c.n_qubits || (two && (q1 < 0 || q1 >= c.n_qubits))) {
      parse_fail(line_no, "operand index out of range");
    }
    if (two && q0 == q1) parse_fail(line_no, "two-qubit gate with identical operands");
    c.gates.push_back(two ? g2(*op, static_cast<std::uint32_t>(q0), static_cast<std::uint32_t>(q1))
                          : g1(*op, static_cast<std::uint32_t>(q0)));
  }
  if (!have_header) throw std::invalid_argument("circuit parse error: missing 'qubits' header");
  return c;
}

LogicalCircuit parse_circuit_text(const std::string& text) {
  std::istringstream in(text);
  return parse_circuit_file(in);
}

LogicalCircuit load_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open circuit file: " + path);
  return parse_circuit_file(in);
}

void serialize_circuit(const LogicalCircuit& c, std::ostream& out) {
  out << "qubits " << c.n_qubits << "\n";
  for (const Gate& g : c.gates) {
    out << opcode_name(g.opcode) << ' ' << g.q0;
    if (g.q1 != kNoOperand) out << ' ' << g.q1;
    out << "\n";
  }
}

std::string circuit_to_text(const LogicalCircuit& c) {
  std::ostringstream out;
  serialize_circuit(c, out);
  return out.str();
}

}  // namespace qwinoc
