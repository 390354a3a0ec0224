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
#include <functional>
#include <queue>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qwinoc {

/// Simulated time in nanoseconds.
using SimTime = double;

/// Deterministic discrete-event kernel. Events are totally ordered by
/// (time, insertion sequence number); the seq tiebreak makes runs with
/// float-equal timestamps reproducible. Scheduling in the past is a hard
/// fault: it signals a model bug, not a recoverable condition.
class EventQueue {
 public:
  struct Event {
    SimTime time;
    std::uint64_t seq;
    std::function<void()> fn;
  };

  void schedule(SimTime t, std::function<void()> fn);
  void schedule_after(SimTime dt, std::function<void()> fn) { schedule(now_ + dt, std::move(fn)); }

  /// Pops the minimum (time, seq) event and advances the clock, or returns
  /// false when exhausted.
  bool pop_next(Event& out);

  /// Runs events until the queue is empty.
  void run();

  SimTime now() const { return now_; }
  bool empty() const { return heap_.empty(); }
  std::uint64_t scheduled_count() const { return scheduled_; }
  std::uint64_t popped_count() const { return popped_; }

 private:
  struct Order {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Order> heap_;
  SimTime now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t scheduled_ = 0;
  std::uint64_t popped_ = 0;
};

/// Seeded randomness with named streams so that one stochastic source can be
/// reconfigured without perturbing the draw sequences of the others. The
/// generator core is mt19937_64 (bit-exact across platforms); uniforms are
/// derived from raw 64-bit draws rather than std::uniform_real_distribution,
/// whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01(std::string_view stream);

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::string_view stream, std::uint64_t n);

  /// Exponential draw via inverse CDF on the stream's next uniform.
  double exponential(std::string_view stream, double mean_ns);

  /// The inverse-CDF map itself, u in [0, 1): -mean * ln(1 - u).
  static double exponential_from_uniform(double u, double mean_ns);

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t next_u64(std::string_view stream);

  std::uint64_t seed_;
  std::unordered_map<std::string, std::mt19937_64> streams_;
};

}  // namespace qwinoc
