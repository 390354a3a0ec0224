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
#include "qwinoc/packets.hpp"

namespace qwinoc {

namespace {

constexpr std::string_view kKindNames[6] = {"lip", "tpsip", "tpdip", "cbp", "tp", "eoc"};

class BitWriter {
 public:
  void put(std::uint64_t value, std::uint32_t width) {
    if (width < 64 && value >= (1ULL << width)) {
      throw PacketError("field value " + std::to_string(value) + " does not fit in " +
                        std::to_string(width) + " bits");
    }
    for (std::uint32_t i = width; i-- > 0;) push_bit((value >> i) & 1);
  }

  BitString finish() && { return std::move(bits_); }

 private:
  void push_bit(bool b) {
    if (bits_.n_bits % 8 == 0) bits_.bytes.push_back(0);
    if (b) bits_.bytes.back() |= static_cast<std::uint8_t>(1u << (7 - bits_.n_bits % 8));
    ++bits_.n_bits;
  }

  BitString bits_;
};

class BitReader {
 public:
  explicit BitReader(const BitString& bits) : bits_(bits) {}

  std::uint64_t get(std::uint32_t width) {
    std::uint64_t v = 0;
    for (std::uint32_t i = 0; i < width; ++i) {
      if (pos_ >= bits_.n_bits) throw PacketError("truncated packet payload");
      v = (v << 1) | static_cast<std::uint64_t>(bits_.get(pos_++));
    }
    return v;
  }

  std::uint32_t remaining() const { return bits_.n_bits - pos_; }

 private:
  const BitString& bits_;
  std::uint32_t pos_ = 0;
};

}  // namespace

std::string_view packet_kind_name(PacketKind k) {
  return kKindNames[static_cast<std::size_t>(k)];
}

std::uint32_t size_bits(PacketKind k, const BitWidths& w) {
  switch (k) {
    case PacketKind::kLip:
      return w.type_bits + w.qc_addr_bits + w.opcode_bits + 2 * w.slot_addr_bits;
    case PacketKind::kTpsip:
      return w.type_bits + 2 * (w.qc_addr_bits + w.slot_addr_bits) + w.to_bits;
    case PacketKind::kTpdip:
      return w.type_bits + w.qc_addr_bits + w.slot_addr_bits;
    case PacketKind::kCbp:
      return w.type_bits + w.cb_bits + w.qc_addr_bits + w.slot_addr_bits;
    case PacketKind::kTp:
      return w.type_bits + w.to_bits;
    case PacketKind::kEoc:
      return w.type_bits + w.qc_addr_bits;
  }
  throw PacketError("unknown packet kind");
}

std::uint32_t size_bits(const Packet& p, const BitWidths& w) { return size_bits(p.kind(), w); }

std::string BitString::to_string() const {
  std::string s;
  s.reserve(n_bits);
  for (std::uint32_t i = 0; i < n_bits; ++i) s.push_back(get(i) ? '1' : '0');
  return s;
}

BitString encode(const Packet& p, const BitWidths& w) {
  BitWriter out;
  out.put(static_cast<std::uint64_t>(p.kind()), w.type_bits);
  std::visit(
      [&](const auto& pl) {
        using T = std::decay_t<decltype(pl)>;
        if constexpr (std::is_same_v<T, LipPayload>) {
          out.put(pl.qc, w.qc_addr_bits);
          out.put(static_cast<std::uint64_t>(pl.opcode), w.opcode_bits);
          out.put(pl.slot0, w.slot_addr_bits);
          out.put(pl.slot1, w.slot_addr_bits);
        } else if constexpr (std::is_same_v<T, TpsipPayload>) {
          out.put(pl.src_qc, w.qc_addr_bits);
          out.put(pl.src_slot, w.slot_addr_bits);
          out.put(pl.dst_qc, w.qc_addr_bits);
          out.put(pl.dst_slot, w.slot_addr_bits);
          out.put(pl.token_order, w.to_bits);
        } else if constexpr (std::is_same_v<T, TpdipPayload>) {
          out.put(pl.dst_qc, w.qc_addr_bits);
          out.put(pl.dst_slot, w.slot_addr_bits);
        } else if constexpr (std::is_same_v<T, CbpPayload>) {
          out.put(pl.cb, w.cb_bits);
          out.put(pl.dst_qc, w.qc_addr_bits);
          out.put(pl.dst_slot, w.slot_addr_bits);
        } else if constexpr (std::is_same_v<T, TpPayload>) {
          out.put(pl.token_order, w.to_bits);
        } else {
          static_assert(std::is_same_v<T, EocPayload>);
          out.put(pl.qc, w.qc_addr_bits);
        }
      },
      p.payload);
  return std::move(out).finish();
}

Packet decode(const BitString& bits, const BitWidths& w) {
  if (bits.n_bits < w.type_bits) throw PacketError("bit string shorter than the type tag");
  BitReader in(bits);
  const auto tag = in.get(w.type_bits);
  if (tag > 5) throw PacketError("unknown packet type tag " + std::to_string(tag));
  const auto kind = static_cast<PacketKind>(tag);
  if (bits.n_bits != size_bits(kind, w)) {
    throw PacketError("packet length " + std::to_string(bits.n_bits) + " does not match " +
                      std::string(packet_kind_name(kind)) + " length " +
                      std::to_string(size_bits(kind, w)));
  }

  Packet p;
  switch (kind) {
    case PacketKind::kLip: {
      LipPayload pl;
      pl.qc = static_cast<std::uint32_t>(in.get(w.qc_addr_bits));
      const auto op = in.get(w.opcode_bits);
      if (op >= kOpcodeCount) throw PacketError("unknown opcode " + std::to_string(op));
      pl.opcode = static_cast<Opcode>(op);
      pl.slot0 = static_cast<std::uint32_t>(in.get(w.slot_addr_bits));
      pl.slot1 = static_cast<std::uint32_t>(in.get(w.slot_addr_bits));
      p.payload = pl;
      break;
    }
    case PacketKind::kTpsip: {
      TpsipPayload pl;
      pl.src_qc = static_cast<std::uint32_t>(in.get(w.qc_addr_bits));
      pl.src_slot = static_cast<std::uint32_t>(in.get(w.slot_addr_bits));
      pl.dst_qc = static_cast<std::uint32_t>(in.get(w.qc_addr_bits));
      pl.dst_slot = static_cast<std::uint32_t>(in.get(w.slot_addr_bits));
      pl.token_order = static_cast<std::uint32_t>(in.get(w.to_bits));
      p.payload = pl;
      break;
    }
    case PacketKind::kTpdip: {
      TpdipPayload pl;
      pl.dst_qc = static_cast<std::uint32_t>(in.get(w.qc_addr_bits));
      pl.dst_slot = static_cast<std::uint32_t>(in.get(w.slot_addr_bits));
      p.payload = pl;
      break;
    }
    case PacketKind::kCbp: {
      CbpPayload pl;
      pl.cb = static_cast<std::uint32_t>(in.get(w.cb_bits));
      pl.dst_qc = static_cast<std::uint32_t>(in.get(w.qc_addr_bits));
      pl.dst_slot = static_cast<std::uint32_t>(in.get(w.slot_addr_bits));
      p.payload = pl;
      break;
    }
    case PacketKind::kTp: {
      TpPayload pl;
      pl.token_order = static_cast<std::uint32_t>(in.get(w.to_bits));
      p.payload = pl;
      break;
    }
    case PacketKind::kEoc: {
      EocPayload pl;
      pl.qc = static_cast<std::uint32_t>(in.get(w.qc_addr_bits));
      p.payload = pl;
      break;
    }
  }
  return p;
}

}  // namespace qwinoc
