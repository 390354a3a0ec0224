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
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qwinoc/circuit.hpp"

namespace qwinoc {

constexpr std::uint32_t kNoSlot = UINT32_MAX;
constexpr std::uint32_t kUnboundedSlots = UINT32_MAX;

/// Maps each logical qubit to a (core, slot) address. Mutated during
/// compilation as teleports move qubits between cores.
struct Placement {
  std::uint32_t n_qc = 1;
  std::uint32_t slots_per_qc = 1;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> loc;  // qubit -> (qc, slot)

  bool operator==(const Placement&) const = default;
};

/// qubit i -> (i mod n_qc, i div n_qc). Throws on capacity violation
/// (ceil(n_qubits / n_qc) > slots_per_qc).
Placement map_modulo(const LogicalCircuit& circuit, std::uint32_t n_qc,
                     std::uint32_t slots_per_qc);

/// One compiled instruction. Field use by kind:
///   Local       opcode, qc (executing core), slot0 [, slot1]
///   TeleportSrc qc/slot0 = source address, dst_qc/dst_slot = global
///               destination address (kept global: the source needs it to
///               address the correction bits), token_order once assigned
///   TeleportDst qc/slot0 = destination address
struct Instruction {
  enum class Kind : std::uint8_t { kLocal, kTeleportSrc, kTeleportDst };

  Kind kind = Kind::kLocal;
  Opcode opcode = Opcode::H;
  std::uint32_t qc = 0;
  std::uint32_t slot0 = kNoSlot;
  std::uint32_t slot1 = kNoSlot;
  std::uint32_t dst_qc = 0;
  std::uint32_t dst_slot = kNoSlot;
  std::optional<std::uint32_t> token_order;

  bool operator==(const Instruction&) const = default;

  /// Dispatcher emission key: core-id ascending, then slot ascending.
  std::pair<std::uint32_t, std::uint32_t> emission_key() const;
};

Instruction make_local(Opcode op, std::uint32_t qc, std::uint32_t slot0,
                       std::uint32_t slot1 = kNoSlot);
Instruction make_tps(std::uint32_t src_qc, std::uint32_t src_slot, std::uint32_t dst_qc,
                     std::uint32_t dst_slot);
Instruction make_tpd(std::uint32_t dst_qc, std::uint32_t dst_slot);

/// Instructions executable in parallel: slot-disjoint, every TeleportSrc
/// paired with its TeleportDst, at most one teleport source and one teleport
/// destination per core (one LTM port each).
struct Bundle {
  std::vector<Instruction> instructions;  // stored in emission order

  bool operator==(const Bundle&) const = default;
};

/// Field widths used by packet encodings and the in-memory bundle layout.
struct BitWidths {
  std::uint32_t type_bits = 3;  // 6 packet types
  std::uint32_t opcode_bits = 4;
  std::uint32_t qc_addr_bits = 1;
  std::uint32_t slot_addr_bits = 1;
  std::uint32_t to_bits = 8;
  std::uint32_t cb_bits = 2;

  bool operator==(const BitWidths&) const = default;
};

std::uint32_t ceil_log2(std::uint64_t n);  // ceil(log2(max(n, 2)))

struct CompileOptions {
  std::uint32_t to_bits = 8;
  std::uint32_t header_bits = 16;  // bundle header: instruction count
  /// Communication slots available beyond slots_per_qc for teleported qubits.
  std::uint32_t overflow_slots = kUnboundedSlots;
};

struct Program {
  std::vector<Bundle> bundles;
  Placement initial_placement;
  BitWidths widths;
  std::uint32_t header_bits = 16;

  bool operator==(const Program&) const = default;
};

/// ASAP greedy layering. Cross-core two-qubit gates expand into a teleport
/// (TPS at the first operand's core, TPD into a fresh slot at the second
/// operand's core) followed by the now-local gate in a later bundle. The
/// teleported qubit stays at the destination. Teleports that would need a
/// second LTM port on a core in the same bundle spill to the next one.
/// Throws when the destination core has no free slot (bounded overflow).
Program compile(const LogicalCircuit& circuit, const Placement& placement,
                const CompileOptions& opts = {});

/// Within each bundle, TPS instructions receive token orders 0, 1, 2, ... in
/// dispatcher emission order. Recomputes from zero on every call.
Program assign_token_orders(Program program);

/// In-memory size of one bundle (header + per-instruction encodings), the
/// unit the control unit fetches over the RAM interface.
std::uint64_t bundle_memory_bits(const Bundle& b, const BitWidths& w, std::uint32_t header_bits);
std::uint64_t instruction_memory_bits(const Instruction& in, const BitWidths& w);

/// JSON document with bundles, instructions, token orders and the initial
/// placement, for inspection and golden-file tests.
std::string program_to_json(const Program& p);

/// Throws std::invalid_argument when a bundle invariant is broken
/// (slot overlap, unpaired teleports, port over-subscription).
void validate_program(const Program& p);

}  // namespace qwinoc
