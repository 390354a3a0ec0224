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
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qwinoc {

/// Gate mnemonics. The instruction word reserves a 4-bit opcode field, so the
/// ISA is capped at 16 mnemonics; only these five are in use. RZ carries no
/// angle parameter: the simulator models timing, not unitaries, and every
/// Z-rotation costs the same.
enum class Opcode : std::uint8_t { H = 0, X = 1, SX = 2, RZ = 3, CX = 4 };

constexpr std::uint32_t kOpcodeCount = 5;
constexpr std::uint32_t kNoOperand = UINT32_MAX;

bool is_two_qubit(Opcode op);
std::string_view opcode_name(Opcode op);                       // lowercase mnemonic
std::optional<Opcode> opcode_from_name(std::string_view name); // lowercase only

/// One gate on one or two logical qubits. q1 is kNoOperand for single-qubit
/// opcodes.
struct Gate {
  Opcode opcode;
  std::uint32_t q0;
  std::uint32_t q1 = kNoOperand;

  bool operator==(const Gate&) const = default;
};

inline Gate g1(Opcode op, std::uint32_t q) { return Gate{op, q, kNoOperand}; }
inline Gate g2(Opcode op, std::uint32_t a, std::uint32_t b) { return Gate{op, a, b}; }

/// An ordered gate list over logical qubits. Gate order is program order;
/// dependencies are implied by shared operands.
struct LogicalCircuit {
  std::uint32_t n_qubits = 0;
  std::vector<Gate> gates;

  bool operator==(const LogicalCircuit&) const = default;
};

/// Throws std::invalid_argument if any gate violates arity, operand
/// distinctness, or operand range.
void validate_circuit(const LogicalCircuit& c);

/// Random circuit with exactly round(n_gates * two_qubit_fraction) CX gates,
/// the remainder drawn uniformly from the single-qubit mnemonics, operands
/// uniform (two-qubit pairs without replacement). Deterministic per seed.
LogicalCircuit gen_random_circuit(std::uint32_t n_qubits, std::uint32_t n_gates,
                                  double two_qubit_fraction, std::uint64_t seed);

/// H on qubit 0 followed by the CX ladder CX(i, i+1).
LogicalCircuit gen_ghz(std::uint32_t n_qubits);

/// QFT lowered to the native set {RZ, SX, X, CX}:
///   H            -> RZ q, SX q, RZ q
///   CPhase(c, t) -> RZ t, CX(c,t), RZ t, CX(c,t), RZ c
///   final swap network, SWAP(a, b) -> CX(a,b), CX(b,a), CX(a,b)
LogicalCircuit gen_qft(std::uint32_t n_qubits);

/// H on every qubit, then per edge (u, v) one CZ with v as target,
/// CZ = H.CX.H with the inner H in native form:
///   RZ v, SX v, RZ v, CX(u,v), RZ v, SX v, RZ v
/// Edge order follows the input. Rejects self-loops, out-of-range vertices
/// and duplicate edges (undirected: (a,b) duplicates (b,a)).
LogicalCircuit gen_graphstate(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                              std::uint32_t n_qubits);

/// Circuit file format: '#' starts a comment; first non-comment line is
/// "qubits <N>"; each following line is "<mnemonic> <q0> [<q1>]" with
/// lowercase mnemonics. Errors carry the 1-based line number.
LogicalCircuit parse_circuit_file(std::istream& in);
LogicalCircuit parse_circuit_text(const std::string& text);
LogicalCircuit load_circuit_file(const std::string& path);

void serialize_circuit(const LogicalCircuit& c, std::ostream& out);
std::string circuit_to_text(const LogicalCircuit& c);

}  // namespace qwinoc
