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
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qwinoc/circuit.hpp"
#include "qwinoc/compiler.hpp"

namespace qwinoc {

/// 3-bit packet type tags. Frozen: golden tests pin the encodings.
enum class PacketKind : std::uint8_t {
  kLip = 0,    // local instruction
  kTpsip = 1,  // teleport-source instruction (+ token order)
  kTpdip = 2,  // teleport-destination instruction
  kCbp = 3,    // correction bits
  kTp = 4,     // token
  kEoc = 5,    // end of computation
};

std::string_view packet_kind_name(PacketKind k);

struct LipPayload {
  std::uint32_t qc = 0;
  Opcode opcode = Opcode::H;
  std::uint32_t slot0 = 0;
  std::uint32_t slot1 = 0;  // zero-filled for single-qubit gates (fixed width)
  bool operator==(const LipPayload&) const = default;
};
struct TpsipPayload {
  std::uint32_t src_qc = 0, src_slot = 0;
  std::uint32_t dst_qc = 0, dst_slot = 0;
  std::uint32_t token_order = 0;
  bool operator==(const TpsipPayload&) const = default;
};
struct TpdipPayload {
  std::uint32_t dst_qc = 0, dst_slot = 0;
  bool operator==(const TpdipPayload&) const = default;
};
struct CbpPayload {
  std::uint32_t cb = 0;  // two correction bits
  std::uint32_t dst_qc = 0, dst_slot = 0;
  bool operator==(const CbpPayload&) const = default;
};
struct TpPayload {
  std::uint32_t token_order = 0;
  bool operator==(const TpPayload&) const = default;
};
struct EocPayload {
  std::uint32_t qc = 0;
  bool operator==(const EocPayload&) const = default;
};

struct Packet {
  std::variant<LipPayload, TpsipPayload, TpdipPayload, CbpPayload, TpPayload, EocPayload>
      payload;

  PacketKind kind() const { return static_cast<PacketKind>(payload.index()); }
  bool operator==(const Packet&) const = default;
};

/// Packet sizes are a pure function of kind and widths:
///   LIP   = 3 + qc + opcode + 2*slot
///   TPSIP = 3 + 2*(qc + slot) + to
///   TPDIP = 3 + qc + slot
///   CBP   = 3 + 2 + qc + slot
///   TP    = 3 + to
///   EOC   = 3 + qc
std::uint32_t size_bits(PacketKind k, const BitWidths& w);
std::uint32_t size_bits(const Packet& p, const BitWidths& w);

class PacketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// MSB-first bit string of exactly size_bits(p, w) bits.
struct BitString {
  std::vector<std::uint8_t> bytes;
  std::uint32_t n_bits = 0;

  bool get(std::uint32_t i) const { return (bytes[i / 8] >> (7 - i % 8)) & 1; }
  std::string to_string() const;  // "0101..." for golden tests
  bool operator==(const BitString&) const = default;
};

/// Throws PacketError when a field does not fit its width.
BitString encode(const Packet& p, const BitWidths& w);

/// Throws PacketError on an unknown type tag or a bit count that does not
/// match the tag's expected length.
Packet decode(const BitString& bits, const BitWidths& w);

}  // namespace qwinoc
