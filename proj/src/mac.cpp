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
#include "qwinoc/mac.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qwinoc {

SimTime Channel::occupy(SimTime start, double bits) {
  if (start < busy_until) {
    throw std::logic_error("channel collision: transmission at t=" + std::to_string(start) +
                           " overlaps one ending at t=" + std::to_string(busy_until));
  }
  busy_until = start + transmit_duration(bits);
  return busy_until;
}

CtRing::CtRing(EventQueue& queue, int n_nodes, double pass_ns, CtService service,
               CtIdlePolicy idle_policy, TransmitFn transmit, HopSink hops)
    : queue_(queue),
      n_nodes_(n_nodes),
      pass_ns_(pass_ns),
      service_(service),
      idle_policy_(idle_policy),
      transmit_(std::move(transmit)),
      hops_(std::move(hops)),
      queues_(static_cast<std::size_t>(n_nodes)) {
  if (n_nodes < 1) throw std::invalid_argument("CtRing: need at least one node");
  parked_ = idle_policy_ == CtIdlePolicy::kPark;
}

// Token walk: having left `anchor_node_` at `anchor_time_`, the token reaches
// node (anchor_node_ + j) mod N at anchor_time_ + j*pass for j = 1, 2, ...
// A packet enqueued at time t is seen by an arrival at exactly t.
std::pair<SimTime, std::uint64_t> CtRing::arrival_at(int node, SimTime ready) const {
  std::uint64_t j = static_cast<std::uint64_t>(
      ((node - anchor_node_) % n_nodes_ + n_nodes_) % n_nodes_);
  if (j == 0) j = static_cast<std::uint64_t>(n_nodes_);
  SimTime t = anchor_time_ + static_cast<double>(j) * pass_ns_;
  if (t < ready) {
    const double laps =
        std::ceil((ready - t) / (static_cast<double>(n_nodes_) * pass_ns_));
    auto m = static_cast<std::uint64_t>(laps);
    j += m * static_cast<std::uint64_t>(n_nodes_);
    t = anchor_time_ + static_cast<double>(j) * pass_ns_;
    while (t < ready) {  // guard against ceil() rounding down on the boundary
      j += static_cast<std::uint64_t>(n_nodes_);
      t = anchor_time_ + static_cast<double>(j) * pass_ns_;
    }
  }
  return {t, j};
}

void CtRing::enqueue(int node, MacPacket pkt) {
  if (node < 0 || node >= n_nodes_) throw std::invalid_argument("CtRing: node out of range");
  const SimTime now = queue_.now();
  queues_[static_cast<std::size_t>(node)].push_back(std::move(pkt));
  ++pending_;
  if (serving_) return;  // picked up when the current holder releases

  if (parked_) {
    parked_ = false;
    if (node == anchor_node_) {
      // The token is held here; grant without any pass.
      serve(node, now, 0);
      return;
    }
    anchor_time_ = now;  // hopping resumes toward the pending node
  }
  request_grant();
}

void CtRing::request_grant() {
  if (serving_ || pending_ == 0) return;
  int best_node = -1;
  SimTime best_t = 0;
  std::uint64_t best_hops = 0;
  for (int n = 0; n < n_nodes_; ++n) {
    if (queues_[static_cast<std::size_t>(n)].empty()) continue;
    const auto [t, j] = arrival_at(n, queue_.now());
    if (best_node < 0 || t < best_t) {
      best_node = n;
      best_t = t;
      best_hops = j;
    }
  }
  const std::uint64_t gen = ++grant_gen_;
  queue_.schedule(best_t, [this, gen, best_node, best_t, best_hops] {
    if (gen != grant_gen_ || serving_) return;
    serve(best_node, best_t, best_hops);
  });
}

void CtRing::serve(int node, SimTime t, std::uint64_t hops) {
  ++grant_gen_;  // invalidate any scheduled grant
  if (hops > 0) {
    hops_(anchor_node_, anchor_time_, hops);
    hop_count_ += hops;
  }
  serving_ = true;
  transmit_step(node, t);
}

void CtRing::transmit_step(int node, SimTime t) {
  auto& q = queues_[static_cast<std::size_t>(node)];
  MacPacket pkt = std::move(q.front());
  q.pop_front();
  --pending_;
  const SimTime end = transmit_(node, pkt, t);
  queue_.schedule(end, [this, node, end, cb = std::move(pkt.on_delivered)] {
    if (cb) cb(end);
    if (service_ == CtService::kExhaustive && !queues_[static_cast<std::size_t>(node)].empty()) {
      transmit_step(node, end);
    } else {
      finish_service(node, end);
    }
  });
}

void CtRing::finish_service(int node, SimTime end) {
  serving_ = false;
  anchor_node_ = node;
  anchor_time_ = end;
  if (pending_ > 0) {
    request_grant();
  } else if (idle_policy_ == CtIdlePolicy::kPark) {
    parked_ = true;
  }
}

void CtRing::settle(SimTime t_end) {
  if (parked_ || serving_) return;
  if (t_end <= anchor_time_) return;
  const auto hops = static_cast<std::uint64_t>((t_end - anchor_time_) / pass_ns_ + 1e-9);
  if (hops > 0) {
    hops_(anchor_node_, anchor_time_, hops);
    hop_count_ += hops;
  }
}

IdChain::IdChain(EventQueue& queue, TransmitFn transmit, TpEmitFn emit_tp,
                 std::uint32_t total_orders)
    : queue_(queue), transmit_(std::move(transmit)), emit_tp_(std::move(emit_tp)),
      total_(total_orders) {}

void IdChain::holder_ready(std::uint32_t order, Holder h) {
  if (order >= total_) throw std::logic_error("IdChain: order beyond chain length");
  if (!ready_.emplace(order, std::move(h)).second) {
    throw std::logic_error("IdChain: order " + std::to_string(order) + " claimed twice");
  }
  try_advance();
}

void IdChain::try_advance() {
  if (!enabled_ || next_order_ == total_) return;
  const auto it = ready_.find(next_order_);
  if (it == ready_.end()) return;

  Holder h = std::move(it->second);
  ready_.erase(it);
  enabled_ = false;

  const std::uint32_t order = next_order_;
  const SimTime end = transmit_(h.node, h.data, queue_.now());
  queue_.schedule(end, [this, order, end, node = h.node,
                        on_delivered = std::move(h.data.on_delivered),
                        on_finished = std::move(h.on_finished)]() mutable {
    if (on_delivered) on_delivered(end);
    if (order + 1 < total_) {
      const SimTime tp_end = emit_tp_(node, order + 1, end);
      queue_.schedule(tp_end, [this, tp_end, on_finished = std::move(on_finished)] {
        if (on_finished) on_finished(tp_end);
        next_order_ += 1;
        enabled_ = true;
        try_advance();
      });
    } else {
      if (on_finished) on_finished(end);
      next_order_ += 1;  // == total_: chain complete
    }
  });
}

}  // namespace qwinoc
