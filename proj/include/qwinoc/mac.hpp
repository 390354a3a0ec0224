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
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "qwinoc/event_queue.hpp"

namespace qwinoc {

enum class MacMode : std::uint8_t { kCt, kId };

/// The single shared wireless channel. At most one transmission may occupy
/// it at any instant; occupy() asserts that.
struct Channel {
  double bitrate_bits_per_ns = 12.0;
  SimTime busy_until = 0.0;

  double transmit_duration(double bits) const { return bits / bitrate_bits_per_ns; }
  /// Marks [start, start + bits/bitrate) busy; returns the end time.
  /// Throws std::logic_error on overlap (collision = model bug).
  SimTime occupy(SimTime start, double bits);
};

/// A packet waiting at a wireless node. `tag` is opaque to the MAC layer;
/// the owner uses it to identify the packet kind in its transmit callback.
struct MacPacket {
  double bits = 0;
  int tag = 0;
  std::function<void(SimTime end)> on_delivered;
};

/// Performs one transmission bookkeeping step (trace record, channel
/// occupancy) and returns the end time.
using TransmitFn = std::function<SimTime(int node, const MacPacket& pkt, SimTime start)>;

/// Charges `hops` token passes beginning at `start` from ring position
/// `from_node` (pass i runs [start + i*pass, start + (i+1)*pass) leaving node
/// (from_node + i) mod n).
using HopSink = std::function<void(int from_node, SimTime start, std::uint64_t hops)>;

enum class CtService : std::uint8_t {
  kOnePacket,   // holder sends one packet per grant, then releases
  kExhaustive,  // holder drains its queue before releasing
};
enum class CtIdlePolicy : std::uint8_t {
  kCirculate,  // token keeps hopping while all nodes are idle
  kPark,       // token stays at the last holder until traffic appears
};

/// Circulating-token arbitration over the fixed ring [CU, QC0, ..., QCn-1]
/// (ring node 0 is the CU). Idle hops are materialized analytically: grants
/// land exactly where a hop-by-hop simulation would put them, including the
/// tie rule that a packet enqueued at time t is seen by a token arrival at t.
class CtRing {
 public:
  CtRing(EventQueue& queue, int n_nodes, double pass_ns, CtService service,
         CtIdlePolicy idle_policy, TransmitFn transmit, HopSink hops);

  /// Queues a packet at `node` at the current simulation time.
  void enqueue(int node, MacPacket pkt);

  /// Charges the idle circulation between the last grant and `t_end`
  /// (complete hops only). Call once, at end of run.
  void settle(SimTime t_end);

  std::uint64_t hop_count() const { return hop_count_; }
  bool serving() const { return serving_; }
  int anchor_node() const { return anchor_node_; }

 private:
  void request_grant();
  void serve(int node, SimTime t, std::uint64_t hops);
  void transmit_step(int node, SimTime t);
  void finish_service(int node, SimTime end);
  /// Earliest token arrival at `node` no earlier than `ready`, as
  /// (time, hop count from anchor).
  std::pair<SimTime, std::uint64_t> arrival_at(int node, SimTime ready) const;

  EventQueue& queue_;
  int n_nodes_;
  double pass_ns_;
  CtService service_;
  CtIdlePolicy idle_policy_;
  TransmitFn transmit_;
  HopSink hops_;

  std::vector<std::deque<MacPacket>> queues_;
  std::size_t pending_ = 0;
  int anchor_node_ = 0;       // token position after the last grant (or start)
  SimTime anchor_time_ = 0.0; // when it left that position
  bool parked_ = false;
  bool serving_ = false;
  std::uint64_t grant_gen_ = 0;
  std::uint64_t hop_count_ = 0;
};

/// Emits the token packet that hands order `next_order` the channel;
/// returns the transmission end time.
using TpEmitFn = std::function<SimTime(int node, std::uint32_t next_order, SimTime start)>;

/// Instruction-directed token chain for one bundle's execution phase.
/// Holders carry consecutive orders 0..total-1 (TPS CBPs first, then EOC
/// slots). Order 0 transmits as soon as it is ready; order o > 0 transmits at
/// max(ready, end of TP{o}); each holder except the last forwards TP{o+1}
/// right after its data packet.
class IdChain {
 public:
  struct Holder {
    int node = 0;
    MacPacket data;
    std::function<void(SimTime end)> on_finished;  // after data + optional TP
  };

  IdChain(EventQueue& queue, TransmitFn transmit, TpEmitFn emit_tp,
          std::uint32_t total_orders);

  /// Called when holder `order`'s data packet becomes ready (at queue.now()).
  void holder_ready(std::uint32_t order, Holder h);

  bool done() const { return next_order_ == total_; }
  std::uint32_t next_order() const { return next_order_; }

 private:
  void try_advance();

  EventQueue& queue_;
  TransmitFn transmit_;
  TpEmitFn emit_tp_;
  std::uint32_t total_;
  std::uint32_t next_order_ = 0;
  bool enabled_ = true;  // next_order_'s token (or phase start) has arrived
  std::map<std::uint32_t, Holder> ready_;
};

}  // namespace qwinoc
