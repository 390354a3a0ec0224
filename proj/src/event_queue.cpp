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
#include "qwinoc/event_queue.hpp"

#include <cmath>
#include <stdexcept>

namespace qwinoc {

void EventQueue::schedule(SimTime t, std::function<void()> fn) {
  if (t < now_) {
    throw std::logic_error("EventQueue: scheduling at t=" + std::to_string(t) +
                           " before now=" + std::to_string(now_));
  }
  heap_.push(Event{t, next_seq_++, std::move(fn)});
  ++scheduled_;
}

bool EventQueue::pop_next(Event& out) {
  if (heap_.empty()) return false;
  out = heap_.top();
  heap_.pop();
  now_ = out.time;
  ++popped_;
  return true;
}

void EventQueue::run() {
  Event ev;
  while (pop_next(ev)) ev.fn();
}

namespace {

// FNV-1a, to give each named stream an independent seed offset.
std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const char ch : s) {
    h ^= static_cast<std::uint8_t>(ch);
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::uint64_t Rng::next_u64(std::string_view stream) {
  auto it = streams_.find(std::string(stream));
  if (it == streams_.end()) {
    std::mt19937_64 gen(seed_ ^ fnv1a(stream));
    it = streams_.emplace(std::string(stream), std::move(gen)).first;
  }
  return it->second();
}

double Rng::uniform01(std::string_view stream) {
  return static_cast<double>(next_u64(stream) >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::string_view stream, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: n must be > 0");
  return next_u64(stream) % n;
}

double Rng::exponential_from_uniform(double u, double mean_ns) {
  if (mean_ns <= 0) throw std::invalid_argument("exponential: mean must be > 0");
  return -mean_ns * std::log1p(-u);
}

double Rng::exponential(std::string_view stream, double mean_ns) {
  return exponential_from_uniform(uniform01(stream), mean_ns);
}

}  // namespace qwinoc
