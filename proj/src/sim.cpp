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
#include "qwinoc/sim.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "qwinoc/packets.hpp"

namespace qwinoc {

void TimingConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0)) throw std::invalid_argument(std::string(name) + " must be > 0");
  };
  positive(epr_gen_mean_ns, "epr_gen_mean_ns");
  positive(preprocessing_ns, "preprocessing_ns");
  positive(postprocessing_ns, "postprocessing_ns");
  positive(winoc_bitrate_gbps, "winoc_bitrate_gbps");
  positive(token_pass_ns, "token_pass_ns");
  positive(ram_bandwidth_gbps, "ram_bandwidth_gbps");
  positive(decode_per_instr_ns, "decode_per_instr_ns");
  positive(gate_1q_ns, "gate_1q_ns");
  positive(gate_2q_ns, "gate_2q_ns");
  positive(qsf, "qsf");
  if (epr_distribution_ns < 0) throw std::invalid_argument("epr_distribution_ns must be >= 0");
}

std::string_view category_name(Category c) {
  switch (c) {
    case Category::kQuantumComm: return "q_comm";
    case Category::kQuantumComp: return "q_comp";
    case Category::kClassicalComm: return "c_comm";
    case Category::kClassicalComp: return "c_comp";
  }
  return "?";
}

std::string_view activity_name(Activity a) {
  switch (a) {
    case Activity::kFetch: return "fetch";
    case Activity::kDecode: return "decode";
    case Activity::kLip: return "lip";
    case Activity::kTpsip: return "tpsip";
    case Activity::kTpdip: return "tpdip";
    case Activity::kCbp: return "cbp";
    case Activity::kTp: return "tp";
    case Activity::kEoc: return "eoc";
    case Activity::kTokenHop: return "token-hop";
    case Activity::kEprGen: return "epr-gen";
    case Activity::kEprDist: return "epr-dist";
    case Activity::kGate: return "gate";
    case Activity::kPreproc: return "preproc";
    case Activity::kPostproc: return "postproc";
  }
  return "?";
}

std::string node_name(int node) {
  if (node == kNodeCu) return "cu";
  if (node == kNodeEpr) return "epr";
  return "qc" + std::to_string(node);
}

double SimResult::total_category_ns() const {
  double s = 0;
  for (const double v : category_ns) s += v;
  return s;
}

namespace {

constexpr std::string_view kEprStream = "epr-gen";

Activity packet_activity(PacketKind k) {
  switch (k) {
    case PacketKind::kLip: return Activity::kLip;
    case PacketKind::kTpsip: return Activity::kTpsip;
    case PacketKind::kTpdip: return Activity::kTpdip;
    case PacketKind::kCbp: return Activity::kCbp;
    case PacketKind::kTp: return Activity::kTp;
    case PacketKind::kEoc: return Activity::kEoc;
  }
  return Activity::kTp;
}

PacketKind instruction_packet_kind(const Instruction& in) {
  switch (in.kind) {
    case Instruction::Kind::kLocal: return PacketKind::kLip;
    case Instruction::Kind::kTeleportSrc: return PacketKind::kTpsip;
    case Instruction::Kind::kTeleportDst: return PacketKind::kTpdip;
  }
  return PacketKind::kLip;
}

struct EprRequest {
  std::uint32_t src_qc = 0;
  std::uint32_t dst_qc = 0;
  double gen_ns = 0;
  bool done = false;
  SimTime ready_time = 0;
  std::function<void(SimTime)> waiter;  // at most one TPS waits per request
};

struct CoreState {
  std::vector<const Instruction*> locals;
  std::vector<const Instruction*> tps;  // drain order (token order for compiled programs)
  std::vector<const Instruction*> tpds;
  std::vector<bool> tpd_consumed;
  std::size_t remaining = 0;
  std::size_t tps_index = 0;
  std::uint32_t eoc_order = 0;
};

class Simulation {
 public:
  Simulation(const Program& program, const TimingConfig& cfg, MacMode mode, std::uint64_t seed,
             const RunOptions& opt)
      : program_(program), cfg_(cfg), mode_(mode), opt_(opt), rng_(seed) {
    cfg_.validate();
    channel_.bitrate_bits_per_ns = cfg_.winoc_bitrate_gbps;
    n_qc_ = program.initial_placement.n_qc;
    ltm_free_.assign(n_qc_, 0.0);
    slot_busy_.resize(n_qc_);
    out_.full = opt.full_trace;

    if (mode_ == MacMode::kCt) {
      ring_ = std::make_unique<CtRing>(
          queue_, static_cast<int>(n_qc_) + 1, cfg_.token_pass_ns, opt_.ct_service, opt_.ct_idle,
          [this](int ring_node, const MacPacket& pkt, SimTime start) {
            return transmit(ring_node - 1 == -1 ? kNodeCu : ring_node - 1,
                            static_cast<Activity>(pkt.tag), pkt.bits, start);
          },
          [this](int from_node, SimTime start, std::uint64_t hops) {
            charge_hops(from_node, start, hops);
          });
    }
  }

  SimResult run() {
    validate_for_mode();
    if (!program_.bundles.empty()) {
      queue_.schedule(0.0, [this] { start_bundle(0); });
      queue_.run();
      if (!finished_) throw_deadlock();
      if (ring_) ring_->settle(out_.makespan_ns);
    }
    if (out_.full) {
      std::sort(out_.records.begin(), out_.records.end(),
                [](const TraceRecord& a, const TraceRecord& b) {
                  return std::tie(a.start_ns, a.end_ns, a.node, a.activity, a.bundle) <
                         std::tie(b.start_ns, b.end_ns, b.node, b.activity, b.bundle);
                });
    }
    if (ring_) out_.token_hops = ring_->hop_count();
    return std::move(out_);
  }

 private:
  // ---- bookkeeping ----------------------------------------------------------

  void record(SimTime start, SimTime end, int node, Activity act, Category cat) {
    if (end <= start) return;
    out_.category_ns[static_cast<std::size_t>(cat)] += end - start;
    if (out_.full) out_.records.push_back({start, end, node, act, cat, bundle_idx_});
  }

  SimTime transmit(int node, Activity act, double bits, SimTime start) {
    const SimTime end = channel_.occupy(start, bits);
    record(start, end, node, act, Category::kClassicalComm);
    ++out_.transmissions;
    return end;
  }

  void charge_hops(int from_ring_node, SimTime start, std::uint64_t hops) {
    const double pass = cfg_.token_pass_ns;
    out_.category_ns[static_cast<std::size_t>(Category::kClassicalComm)] +=
        static_cast<double>(hops) * pass;
    if (out_.full) {
      const auto n = static_cast<std::uint64_t>(n_ring_());
      for (std::uint64_t i = 0; i < hops; ++i) {
        const int ring_node =
            static_cast<int>((static_cast<std::uint64_t>(from_ring_node) + i % n) % n);
        out_.records.push_back({start + static_cast<double>(i) * pass,
                                start + static_cast<double>(i + 1) * pass,
                                ring_node == 0 ? kNodeCu : ring_node - 1, Activity::kTokenHop,
                                Category::kClassicalComm, bundle_idx_});
      }
    }
  }

  int n_ring_() const { return static_cast<int>(n_qc_) + 1; }

  void occupy_slot(std::uint32_t qc, std::uint32_t slot, SimTime start, SimTime end) {
    auto& busy = slot_busy_[qc][slot];
    if (start + 1e-12 < busy) {
      throw std::logic_error("slot (" + std::to_string(qc) + "," + std::to_string(slot) +
                             ") double-booked at t=" + std::to_string(start));
    }
    busy = end;
  }

  double qsf_scaled(double v) const { return v * cfg_.qsf; }

  // ---- validation & failure reporting --------------------------------------

  void validate_for_mode() {
    if (!opt_.validate) return;
    validate_program(program_);
    for (std::size_t bi = 0; bi < program_.bundles.size(); ++bi) {
      std::set<std::uint32_t> orders;
      std::size_t k = 0;
      for (const Instruction& in : program_.bundles[bi].instructions) {
        if (in.kind != Instruction::Kind::kTeleportSrc) continue;
        ++k;
        if (mode_ == MacMode::kId) {
          if (!in.token_order) {
            throw std::invalid_argument("bundle " + std::to_string(bi) +
                                        ": teleport source without token order in ID mode");
          }
          orders.insert(*in.token_order);
        }
      }
      // A token order no one waits for (gap or duplicate) is a model fault.
      if (mode_ == MacMode::kId && (orders.size() != k || (k > 0 && *orders.rbegin() != k - 1))) {
        throw std::invalid_argument("bundle " + std::to_string(bi) +
                                    ": token orders are not exactly {0.." + std::to_string(k - 1) +
                                    "}");
      }
    }
  }

  void throw_deadlock() const {
    std::ostringstream msg;
    msg << "simulation deadlock in bundle " << bundle_idx_ << ": ";
    msg << eoc_received_ << "/" << expected_eocs_ << " end-of-computation packets arrived;";
    for (std::uint32_t c = 0; c < n_qc_; ++c) {
      const CoreState& st = cores_[c];
      if (st.remaining == 0) continue;
      msg << " qc" << c << " has " << st.remaining << " unfinished instruction(s)"
          << " (teleport-source drain at " << st.tps_index << "/" << st.tps.size() << ");";
    }
    if (chain_ && !chain_->done()) {
      msg << " token chain blocked waiting for order " << chain_->next_order() << ";";
    }
    throw SimDeadlockError(msg.str());
  }

  // ---- EPR generator --------------------------------------------------------

  std::size_t epr_enqueue(const Instruction& tps, SimTime t) {
    EprRequest req;
    req.src_qc = tps.qc;
    req.dst_qc = tps.dst_qc;
    req.gen_ns = opt_.epr_deterministic
                     ? qsf_scaled(cfg_.epr_gen_mean_ns)
                     : rng_.exponential(kEprStream, qsf_scaled(cfg_.epr_gen_mean_ns));

    SimTime gen_start = t;
    if (opt_.epr_parallel_capacity > 0) {
      if (epr_free_.size() < opt_.epr_parallel_capacity) {
        epr_free_.push_back(0.0);
        std::push_heap(epr_free_.begin(), epr_free_.end(), std::greater<>{});
      }
      std::pop_heap(epr_free_.begin(), epr_free_.end(), std::greater<>{});
      gen_start = std::max(t, epr_free_.back());
      epr_free_.back() = gen_start + req.gen_ns;
      std::push_heap(epr_free_.begin(), epr_free_.end(), std::greater<>{});
    }
    const SimTime gen_end = gen_start + req.gen_ns;
    record(gen_start, gen_end, kNodeEpr, Activity::kEprGen, Category::kQuantumComm);

    epr_requests_.push_back(std::move(req));
    const std::size_t idx = epr_requests_.size() - 1;
    queue_.schedule(gen_end, [this, idx] {
      EprRequest& r = epr_requests_[idx];
      const SimTime ds = std::max({queue_.now(), ltm_free_[r.src_qc], ltm_free_[r.dst_qc]});
      const SimTime de = ds + qsf_scaled(cfg_.epr_distribution_ns);
      record(ds, de, kNodeEpr, Activity::kEprDist, Category::kQuantumComm);
      ltm_free_[r.src_qc] = de;
      ltm_free_[r.dst_qc] = de;
      if (de > queue_.now()) {
        queue_.schedule(de, [this, idx] { epr_ready(idx); });
      } else {
        epr_ready(idx);  // zero distribution latency
      }
    });
    return idx;
  }

  void epr_ready(std::size_t idx) {
    EprRequest& r = epr_requests_[idx];
    r.done = true;
    r.ready_time = queue_.now();
    if (r.waiter) {
      auto w = std::move(r.waiter);
      r.waiter = nullptr;
      w(r.ready_time);
    }
  }

  void when_epr_ready(std::size_t idx, std::function<void(SimTime)> fn) {
    EprRequest& r = epr_requests_[idx];
    if (r.done) {
      fn(r.ready_time);
    } else {
      if (r.waiter) throw std::logic_error("EPR request already has a waiter");
      r.waiter = std::move(fn);
    }
  }

  // ---- per-bundle flow ------------------------------------------------------

  void start_bundle(std::int32_t bi) {
    if (static_cast<std::size_t>(bi) == program_.bundles.size()) {
      finished_ = true;
      out_.makespan_ns = queue_.now();
      return;
    }
    bundle_idx_ = bi;
    const Bundle& b = program_.bundles[static_cast<std::size_t>(bi)];

    // Execution-phase structure: per-core buffers, participants, chain orders.
    cores_.assign(n_qc_, CoreState{});
    epr_of_.clear();
    std::set<std::uint32_t> participants;
    std::size_t k = 0;
    for (const Instruction& in : b.instructions) {
      CoreState& st = cores_[in.qc];
      participants.insert(in.qc);
      st.remaining += 1;
      switch (in.kind) {
        case Instruction::Kind::kLocal: st.locals.push_back(&in); break;
        case Instruction::Kind::kTeleportSrc: st.tps.push_back(&in); ++k; break;
        case Instruction::Kind::kTeleportDst: st.tpds.push_back(&in); break;
      }
    }
    for (CoreState& st : cores_) {
      st.tpd_consumed.assign(st.tpds.size(), false);
      if (st.tps.size() > 1 && mode_ == MacMode::kId) {
        std::stable_sort(st.tps.begin(), st.tps.end(),
                         [](const Instruction* a, const Instruction* b) {
                           return a->token_order < b->token_order;
                         });
      }
    }
    expected_eocs_ = participants.size();
    eoc_received_ = 0;

    chain_.reset();
    if (mode_ == MacMode::kId) {
      std::uint32_t order = static_cast<std::uint32_t>(k);
      for (const std::uint32_t c : participants) cores_[c].eoc_order = order++;
      chain_ = std::make_unique<IdChain>(
          queue_,
          [this](int core, const MacPacket& pkt, SimTime start) {
            return transmit(core, static_cast<Activity>(pkt.tag), pkt.bits, start);
          },
          [this](int core, std::uint32_t next_order, SimTime start) {
            const SimTime end = transmit(core, Activity::kTp,
                                         size_bits(PacketKind::kTp, program_.widths), start);
            if (out_.full) out_.tp_orders.emplace_back(bundle_idx_, next_order);
            return end;
          },
          static_cast<std::uint32_t>(k + participants.size()));
    }

    // FETCH and DECODE, charged to classical computation at the CU.
    const SimTime t0 = queue_.now();
    const double fetch_ns =
        static_cast<double>(bundle_memory_bits(b, program_.widths, program_.header_bits)) /
        cfg_.ram_bandwidth_gbps;
    record(t0, t0 + fetch_ns, kNodeCu, Activity::kFetch, Category::kClassicalComp);
    const double decode_ns = static_cast<double>(b.instructions.size()) * cfg_.decode_per_instr_ns;
    record(t0 + fetch_ns, t0 + fetch_ns + decode_ns, kNodeCu, Activity::kDecode,
           Category::kClassicalComp);

    queue_.schedule(t0 + fetch_ns + decode_ns, [this, bi] { dispatch(bi); });
  }

  void dispatch(std::int32_t bi) {
    const Bundle& b = program_.bundles[static_cast<std::size_t>(bi)];
    if (b.instructions.empty()) {
      start_bundle(bi + 1);
      return;
    }
    dispatched_ = 0;
    const std::size_t total = b.instructions.size();

    if (mode_ == MacMode::kId) {
      // Only the dispatcher transmits during this phase, so the instruction
      // packets stream back-to-back without arbitration.
      SimTime t = queue_.now();
      for (const Instruction& in : b.instructions) {
        const PacketKind kind = instruction_packet_kind(in);
        const SimTime end = transmit(kNodeCu, packet_activity(kind),
                                     size_bits(kind, program_.widths), t);
        queue_.schedule(end, [this, bi, total, pin = &in, end] {
          on_instruction_delivered(bi, *pin, end, total);
        });
        t = end;
      }
    } else {
      for (const Instruction& in : b.instructions) {
        const PacketKind kind = instruction_packet_kind(in);
        MacPacket pkt;
        pkt.bits = size_bits(kind, program_.widths);
        pkt.tag = static_cast<int>(packet_activity(kind));
        pkt.on_delivered = [this, bi, total, pin = &in](SimTime end) {
          on_instruction_delivered(bi, *pin, end, total);
        };
        ring_->enqueue(0, std::move(pkt));
      }
    }
  }

  void on_instruction_delivered(std::int32_t bi, const Instruction& in, SimTime end,
                                std::size_t total) {
    if (in.kind == Instruction::Kind::kTeleportSrc &&
        opt_.epr_request == EprRequestTime::kAtDispatch) {
      epr_of_[&in] = epr_enqueue(in, end);
    }
    if (++dispatched_ == total) exec_phase(bi);
  }

  void exec_phase(std::int32_t bi) {
    const Bundle& b = program_.bundles[static_cast<std::size_t>(bi)];
    const SimTime t = queue_.now();

    if (opt_.epr_request == EprRequestTime::kAtExecStart) {
      for (const Instruction& in : b.instructions) {
        if (in.kind == Instruction::Kind::kTeleportSrc) epr_of_[&in] = epr_enqueue(in, t);
      }
    }

    for (std::uint32_t c = 0; c < n_qc_; ++c) {
      CoreState& st = cores_[c];
      for (const Instruction* in : st.locals) {
        const double dur =
            qsf_scaled(in->slot1 == kNoSlot ? cfg_.gate_1q_ns : cfg_.gate_2q_ns);
        occupy_slot(c, in->slot0, t, t + dur);
        if (in->slot1 != kNoSlot) occupy_slot(c, in->slot1, t, t + dur);
        record(t, t + dur, static_cast<int>(c), Activity::kGate, Category::kQuantumComp);
        queue_.schedule(t + dur, [this, c] { complete_one(c); });
      }
      if (!st.tps.empty()) step_tps(c, t);
    }
  }

  // Teleport-source drain: sequential per core. For each instruction, wait
  // for the EPR half, run preprocessing, then hand the correction-bit packet
  // to the MAC; the process resumes after its transmissions complete.
  void step_tps(std::uint32_t core, SimTime t_free) {
    CoreState& st = cores_[core];
    if (st.tps_index == st.tps.size()) return;
    const Instruction* in = st.tps[st.tps_index];
    ++st.tps_index;

    when_epr_ready(epr_of_.at(in), [this, core, in, t_free](SimTime epr_ready) {
      const SimTime ps = std::max(t_free, epr_ready);
      const double pre = qsf_scaled(cfg_.preprocessing_ns);
      occupy_slot(core, in->slot0, ps, ps + pre);
      record(ps, ps + pre, static_cast<int>(core), Activity::kPreproc, Category::kQuantumComp);
      queue_.schedule(ps + pre, [this, core, in] { cbp_ready(core, *in); });
    });
  }

  void cbp_ready(std::uint32_t core, const Instruction& in) {
    MacPacket pkt;
    pkt.bits = size_bits(PacketKind::kCbp, program_.widths);
    pkt.tag = static_cast<int>(Activity::kCbp);
    pkt.on_delivered = [this, &in](SimTime end) { deliver_cbp(in, end); };

    if (mode_ == MacMode::kId) {
      IdChain::Holder h;
      h.node = static_cast<int>(core);
      h.data = std::move(pkt);
      h.on_finished = [this, core](SimTime end) {
        complete_one(core);
        step_tps(core, end);
      };
      chain_->holder_ready(*in.token_order, std::move(h));
    } else {
      auto base = std::move(pkt.on_delivered);
      pkt.on_delivered = [this, core, base = std::move(base)](SimTime end) {
        base(end);
        complete_one(core);
        step_tps(core, end);
      };
      ring_->enqueue(static_cast<int>(core) + 1, std::move(pkt));
    }
  }

  void deliver_cbp(const Instruction& tps, SimTime end) {
    const std::uint32_t dst = tps.dst_qc;
    CoreState& st = cores_[dst];
    std::size_t match = st.tpds.size();
    for (std::size_t i = 0; i < st.tpds.size(); ++i) {
      if (!st.tpd_consumed[i] && st.tpds[i]->qc == tps.dst_qc && st.tpds[i]->slot0 == tps.dst_slot) {
        match = i;
        break;
      }
    }
    if (match == st.tpds.size()) {
      throw std::logic_error("correction bits for (" + std::to_string(tps.dst_qc) + "," +
                             std::to_string(tps.dst_slot) +
                             ") have no matching teleport destination");
    }
    st.tpd_consumed[match] = true;
    const double post = qsf_scaled(cfg_.postprocessing_ns);
    occupy_slot(dst, tps.dst_slot, end, end + post);
    record(end, end + post, static_cast<int>(dst), Activity::kPostproc, Category::kQuantumComp);
    queue_.schedule(end + post, [this, dst] { complete_one(dst); });
  }

  void complete_one(std::uint32_t core) {
    CoreState& st = cores_[core];
    if (st.remaining == 0) throw std::logic_error("completion underflow at qc" + std::to_string(core));
    if (--st.remaining == 0) core_done(core);
  }

  // All buffers empty: the core emits its end-of-computation packet.
  void core_done(std::uint32_t core) {
    MacPacket pkt;
    pkt.bits = size_bits(PacketKind::kEoc, program_.widths);
    pkt.tag = static_cast<int>(Activity::kEoc);
    pkt.on_delivered = [this](SimTime end) { eoc_received(end); };

    if (mode_ == MacMode::kId) {
      IdChain::Holder h;
      h.node = static_cast<int>(core);
      h.data = std::move(pkt);
      chain_->holder_ready(cores_[core].eoc_order, std::move(h));
    } else {
      ring_->enqueue(static_cast<int>(core) + 1, std::move(pkt));
    }
  }

  void eoc_received(SimTime end) {
    if (++eoc_received_ == expected_eocs_) {
      // Deferred: the caller may still be inside this bundle's chain/ring
      // machinery, which start_bundle tears down.
      queue_.schedule(end, [this, next = bundle_idx_ + 1] { start_bundle(next); });
    }
  }

  // ---- state ----------------------------------------------------------------

  const Program& program_;
  TimingConfig cfg_;
  MacMode mode_;
  RunOptions opt_;
  Rng rng_;
  EventQueue queue_;
  Channel channel_;
  std::unique_ptr<CtRing> ring_;
  std::unique_ptr<IdChain> chain_;

  std::uint32_t n_qc_ = 0;
  std::int32_t bundle_idx_ = 0;
  bool finished_ = false;

  std::vector<CoreState> cores_;
  std::size_t expected_eocs_ = 0;
  std::size_t eoc_received_ = 0;
  std::size_t dispatched_ = 0;

  std::vector<EprRequest> epr_requests_;
  std::vector<SimTime> epr_free_;  // min-heap of generator-capacity free times
  std::unordered_map<const Instruction*, std::size_t> epr_of_;
  std::vector<SimTime> ltm_free_;
  std::vector<std::map<std::uint32_t, SimTime>> slot_busy_;

  SimResult out_;
};

}  // namespace

SimResult run_program(const Program& program, const TimingConfig& cfg, MacMode mode,
                      std::uint64_t seed, const RunOptions& opt) {
  Simulation sim(program, cfg, mode, seed, opt);
  return sim.run();
}

void trace_to_csv(const SimResult& r, std::ostream& out) {
  out << "start_ns,end_ns,node,activity,category,bundle_idx\n";
  char buf[64];
  for (const TraceRecord& rec : r.records) {
    std::snprintf(buf, sizeof buf, "%.9f,%.9f,", rec.start_ns, rec.end_ns);
    out << buf << node_name(rec.node) << ',' << activity_name(rec.activity) << ','
        << category_name(rec.category) << ',' << rec.bundle << "\n";
  }
}

}  // namespace qwinoc
