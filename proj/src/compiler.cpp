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
#include "qwinoc/compiler.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace qwinoc {

std::uint32_t ceil_log2(std::uint64_t n) {
  if (n < 2) n = 2;
  return static_cast<std::uint32_t>(std::bit_width(n - 1));
}

std::pair<std::uint32_t, std::uint32_t> Instruction::emission_key() const {
  return {qc, slot0};
}

Instruction make_local(Opcode op, std::uint32_t qc, std::uint32_t slot0, std::uint32_t slot1) {
  Instruction in;
  in.kind = Instruction::Kind::kLocal;
  in.opcode = op;
  in.qc = qc;
  in.slot0 = slot0;
  in.slot1 = slot1;
  return in;
}

Instruction make_tps(std::uint32_t src_qc, std::uint32_t src_slot, std::uint32_t dst_qc,
                     std::uint32_t dst_slot) {
  Instruction in;
  in.kind = Instruction::Kind::kTeleportSrc;
  in.qc = src_qc;
  in.slot0 = src_slot;
  in.dst_qc = dst_qc;
  in.dst_slot = dst_slot;
  return in;
}

Instruction make_tpd(std::uint32_t dst_qc, std::uint32_t dst_slot) {
  Instruction in;
  in.kind = Instruction::Kind::kTeleportDst;
  in.qc = dst_qc;
  in.slot0 = dst_slot;
  return in;
}

Placement map_modulo(const LogicalCircuit& circuit, std::uint32_t n_qc,
                     std::uint32_t slots_per_qc) {
  if (n_qc == 0 || slots_per_qc == 0) {
    throw std::invalid_argument("map_modulo: n_qc and slots_per_qc must be > 0");
  }
  const std::uint32_t needed = (circuit.n_qubits + n_qc - 1) / n_qc;
  if (needed > slots_per_qc) {
    throw std::invalid_argument("map_modulo: " + std::to_string(circuit.n_qubits) +
                                " qubits need " + std::to_string(needed) + " slots per core, have " +
                                std::to_string(slots_per_qc));
  }
  Placement p;
  p.n_qc = n_qc;
  p.slots_per_qc = slots_per_qc;
  p.loc.reserve(circuit.n_qubits);
  for (std::uint32_t i = 0; i < circuit.n_qubits; ++i) p.loc.emplace_back(i % n_qc, i / n_qc);
  return p;
}

namespace {

struct Layer {
  std::vector<Instruction> instrs;
  std::set<std::uint32_t> tps_src;  // cores already sourcing a teleport here
  std::set<std::uint32_t> tpd_dst;  // cores already receiving one here
};

// Free-slot bookkeeping for one core: slots freed by outbound teleports
// (keyed by index, usable from a given layer) plus overflow communication
// slots materialized on demand above slots_per_qc.
struct CoreSlots {
  std::map<std::uint32_t, std::uint32_t> free_from;  // slot -> first usable layer
  std::uint32_t next_overflow;
  std::uint32_t overflow_end;  // one past the last materializable slot

  // Earliest layer >= layer_hint at which some slot is usable, or nullopt.
  std::optional<std::uint32_t> earliest_layer(std::uint32_t layer_hint) const {
    if (next_overflow < overflow_end) return layer_hint;
    std::optional<std::uint32_t> best;
    for (const auto& [slot, from] : free_from) {
      const std::uint32_t l = std::max(from, layer_hint);
      if (!best || l < *best) best = l;
    }
    return best;
  }

  bool usable_at(std::uint32_t layer) const {
    if (next_overflow < overflow_end) return true;
    for (const auto& [slot, from] : free_from) {
      if (from <= layer) return true;
    }
    return false;
  }

  std::uint32_t take(std::uint32_t layer) {
    std::uint32_t best = kNoSlot;
    for (const auto& [slot, from] : free_from) {
      if (from <= layer && slot < best) best = slot;
    }
    if (next_overflow < overflow_end && next_overflow < best) {
      return next_overflow++;
    }
    free_from.erase(best);
    return best;
  }
};

}  // namespace

Program compile(const LogicalCircuit& circuit, const Placement& placement,
                const CompileOptions& opts) {
  validate_circuit(circuit);
  if (placement.loc.size() < circuit.n_qubits) {
    throw std::invalid_argument("compile: placement does not cover all circuit qubits");
  }

  const std::uint32_t n_qc = placement.n_qc;
  const std::uint32_t base_slots = placement.slots_per_qc;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> loc(placement.loc.begin(),
                                                           placement.loc.end());
  std::vector<std::uint32_t> ready(circuit.n_qubits, 0);
  std::vector<Layer> layers;
  auto layer = [&layers](std::uint32_t l) -> Layer& {
    if (layers.size() <= l) layers.resize(l + 1);
    return layers[l];
  };

  std::vector<CoreSlots> slots(n_qc);
  {
    std::vector<std::set<std::uint32_t>> occupied(n_qc);
    for (std::uint32_t q = 0; q < circuit.n_qubits; ++q) {
      const auto [c, s] = loc[q];
      if (c >= n_qc || s >= base_slots) {
        throw std::invalid_argument("compile: placement address out of range for qubit " +
                                    std::to_string(q));
      }
      if (!occupied[c].insert(s).second) {
        throw std::invalid_argument("compile: two qubits share slot (" + std::to_string(c) + "," +
                                    std::to_string(s) + ")");
      }
    }
    for (std::uint32_t c = 0; c < n_qc; ++c) {
      for (std::uint32_t s = 0; s < base_slots; ++s) {
        if (!occupied[c].count(s)) slots[c].free_from.emplace(s, 0);
      }
      slots[c].next_overflow = base_slots;
      slots[c].overflow_end = (opts.overflow_slots == kUnboundedSlots ||
                               base_slots > kUnboundedSlots - opts.overflow_slots)
                                  ? kUnboundedSlots
                                  : base_slots + opts.overflow_slots;
    }
  }

  std::uint32_t max_slot_used = base_slots == 0 ? 0 : base_slots - 1;

  for (const Gate& g : circuit.gates) {
    if (!is_two_qubit(g.opcode)) {
      const std::uint32_t l = ready[g.q0];
      const auto [c, s] = loc[g.q0];
      layer(l).instrs.push_back(make_local(g.opcode, c, s));
      ready[g.q0] = l + 1;
      continue;
    }

    const auto [ca, sa] = loc[g.q0];
    const auto [cb, sb] = loc[g.q1];
    if (ca == cb) {
      const std::uint32_t l = std::max(ready[g.q0], ready[g.q1]);
      layer(l).instrs.push_back(make_local(g.opcode, ca, sa, sb));
      ready[g.q0] = ready[g.q1] = l + 1;
      continue;
    }

    // Cross-core: teleport the first operand to the second operand's core,
    // then issue the gate locally in the following bundle.
    std::uint32_t l = std::max(ready[g.q0], ready[g.q1]);
    if (!slots[cb].usable_at(l)) {
      const auto el = slots[cb].earliest_layer(l);
      if (!el) {
        throw std::invalid_argument("compile: core " + std::to_string(cb) +
                                    " is out of free slots (overflow exhausted)");
      }
      l = *el;
    }
    while (layer(l).tps_src.count(ca) || layer(l).tpd_dst.count(cb) || !slots[cb].usable_at(l)) {
      ++l;
    }

    const std::uint32_t fresh = slots[cb].take(l);
    max_slot_used = std::max(max_slot_used, fresh);
    layer(l).instrs.push_back(make_tps(ca, sa, cb, fresh));
    layer(l).instrs.push_back(make_tpd(cb, fresh));
    layer(l).tps_src.insert(ca);
    layer(l).tpd_dst.insert(cb);
    slots[ca].free_from[sa] = l + 1;
    loc[g.q0] = {cb, fresh};

    layer(l + 1).instrs.push_back(make_local(g.opcode, cb, fresh, sb));
    ready[g.q0] = ready[g.q1] = l + 2;
  }

  Program p;
  p.initial_placement = placement;
  p.header_bits = opts.header_bits;
  p.bundles.reserve(layers.size());
  std::size_t max_tps = 0;
  std::size_t max_chain = 0;
  for (Layer& l : layers) {
    Bundle b;
    b.instructions = std::move(l.instrs);
    std::stable_sort(b.instructions.begin(), b.instructions.end(),
                     [](const Instruction& x, const Instruction& y) {
                       return x.emission_key() < y.emission_key();
                     });
    std::set<std::uint32_t> participants;
    std::size_t tps = 0;
    for (const Instruction& in : b.instructions) {
      participants.insert(in.qc);
      if (in.kind == Instruction::Kind::kTeleportSrc) ++tps;
    }
    max_tps = std::max(max_tps, tps);
    max_chain = std::max(max_chain, tps + participants.size());
    p.bundles.push_back(std::move(b));
  }

  p.widths.type_bits = 3;
  p.widths.opcode_bits = 4;
  p.widths.cb_bits = 2;
  p.widths.qc_addr_bits = ceil_log2(n_qc);
  p.widths.slot_addr_bits = ceil_log2(std::max<std::uint64_t>(base_slots, max_slot_used + 1));
  p.widths.to_bits = opts.to_bits;
  if (opts.to_bits < 64 && max_chain > (1ULL << opts.to_bits)) {
    throw std::invalid_argument("compile: token order field too narrow (" +
                                std::to_string(opts.to_bits) + " bits) for a chain of " +
                                std::to_string(max_chain));
  }
  (void)max_tps;
  return p;
}

Program assign_token_orders(Program program) {
  for (Bundle& b : program.bundles) {
    std::vector<Instruction*> tps;
    for (Instruction& in : b.instructions) {
      if (in.kind == Instruction::Kind::kTeleportSrc) tps.push_back(&in);
    }
    std::stable_sort(tps.begin(), tps.end(), [](const Instruction* x, const Instruction* y) {
      return x->emission_key() < y->emission_key();
    });
    std::uint32_t to = 0;
    for (Instruction* in : tps) in->token_order = to++;
  }
  return program;
}

std::uint64_t instruction_memory_bits(const Instruction& in, const BitWidths& w) {
  switch (in.kind) {
    case Instruction::Kind::kLocal:
      return w.opcode_bits + w.qc_addr_bits + 2ULL * w.slot_addr_bits;
    case Instruction::Kind::kTeleportSrc:
      return w.opcode_bits + 2ULL * (w.qc_addr_bits + w.slot_addr_bits) + w.to_bits;
    case Instruction::Kind::kTeleportDst:
      return w.opcode_bits + w.qc_addr_bits + w.slot_addr_bits;
  }
  return 0;
}

std::uint64_t bundle_memory_bits(const Bundle& b, const BitWidths& w, std::uint32_t header_bits) {
  std::uint64_t bits = header_bits;
  for (const Instruction& in : b.instructions) bits += instruction_memory_bits(in, w);
  return bits;
}

void validate_program(const Program& p) {
  for (std::size_t bi = 0; bi < p.bundles.size(); ++bi) {
    const Bundle& b = p.bundles[bi];
    std::set<std::pair<std::uint32_t, std::uint32_t>> touched;
    std::set<std::uint32_t> tps_src, tpd_dst;
    std::multiset<std::pair<std::uint32_t, std::uint32_t>> tps_targets, tpd_addrs;
    auto touch = [&](std::uint32_t qc, std::uint32_t slot) {
      if (!touched.emplace(qc, slot).second) {
        throw std::invalid_argument("bundle " + std::to_string(bi) + ": slot (" +
                                    std::to_string(qc) + "," + std::to_string(slot) +
                                    ") touched twice");
      }
    };
    for (const Instruction& in : b.instructions) {
      switch (in.kind) {
        case Instruction::Kind::kLocal:
          touch(in.qc, in.slot0);
          if (in.slot1 != kNoSlot) touch(in.qc, in.slot1);
          break;
        case Instruction::Kind::kTeleportSrc:
          touch(in.qc, in.slot0);
          if (!tps_src.insert(in.qc).second) {
            throw std::invalid_argument("bundle " + std::to_string(bi) + ": core " +
                                        std::to_string(in.qc) + " sources two teleports");
          }
          tps_targets.emplace(in.dst_qc, in.dst_slot);
          break;
        case Instruction::Kind::kTeleportDst:
          touch(in.qc, in.slot0);
          if (!tpd_dst.insert(in.qc).second) {
            throw std::invalid_argument("bundle " + std::to_string(bi) + ": core " +
                                        std::to_string(in.qc) + " receives two teleports");
          }
          tpd_addrs.emplace(in.qc, in.slot0);
          break;
      }
    }
    if (tps_targets != tpd_addrs) {
      throw std::invalid_argument("bundle " + std::to_string(bi) +
                                  ": teleport source/destination pairing broken");
    }
  }
}

std::string program_to_json(const Program& p) {
  nlohmann::json j;
  j["n_qc"] = p.initial_placement.n_qc;
  j["slots_per_qc"] = p.initial_placement.slots_per_qc;
  j["header_bits"] = p.header_bits;
  j["widths"] = {{"type_bits", p.widths.type_bits},      {"opcode_bits", p.widths.opcode_bits},
                 {"qc_addr_bits", p.widths.qc_addr_bits}, {"slot_addr_bits", p.widths.slot_addr_bits},
                 {"to_bits", p.widths.to_bits},           {"cb_bits", p.widths.cb_bits}};
  auto& pl = j["initial_placement"] = nlohmann::json::array();
  for (const auto& [qc, slot] : p.initial_placement.loc) pl.push_back({qc, slot});
  auto& bundles = j["bundles"] = nlohmann::json::array();
  for (const Bundle& b : p.bundles) {
    nlohmann::json jb = nlohmann::json::array();
    for (const Instruction& in : b.instructions) {
      nlohmann::json ji;
      switch (in.kind) {
        case Instruction::Kind::kLocal:
          ji["kind"] = "local";
          ji["opcode"] = std::string(opcode_name(in.opcode));
          ji["qc"] = in.qc;
          ji["slots"] = in.slot1 == kNoSlot ? nlohmann::json::array({in.slot0})
                                            : nlohmann::json::array({in.slot0, in.slot1});
          break;
        case Instruction::Kind::kTeleportSrc:
          ji["kind"] = "tps";
          ji["src"] = {in.qc, in.slot0};
          ji["dst"] = {in.dst_qc, in.dst_slot};
          if (in.token_order) ji["to"] = *in.token_order;
          break;
        case Instruction::Kind::kTeleportDst:
          ji["kind"] = "tpd";
          ji["dst"] = {in.qc, in.slot0};
          break;
      }
      jb.push_back(std::move(ji));
    }
    bundles.push_back(std::move(jb));
  }
  return j.dump(2);
}

}  // namespace qwinoc
