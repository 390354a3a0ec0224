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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwinoc/compiler.hpp"
#include "qwinoc/mac.hpp"

namespace qwinoc {

/// All latencies and bandwidths of the modeled hardware. The quantum scaling
/// factor multiplies every quantum-related delay (EPR generation and
/// distribution, pre/post-processing, gate times); classical parameters are
/// untouched by it. 1 Gbps == 1 bit/ns.
struct TimingConfig {
  double epr_gen_mean_ns = 1000.0;
  double epr_distribution_ns = 0.01;
  double preprocessing_ns = 390.0;
  double postprocessing_ns = 30.0;
  double winoc_bitrate_gbps = 12.0;
  double token_pass_ns = 1.0;
  double ram_bandwidth_gbps = 128.0;
  double decode_per_instr_ns = 10.0;
  double gate_1q_ns = 25.0;
  double gate_2q_ns = 100.0;
  double qsf = 1.0;

  void validate() const;  // throws std::invalid_argument
};

enum class Category : std::uint8_t {
  kQuantumComm = 0,
  kQuantumComp = 1,
  kClassicalComm = 2,
  kClassicalComp = 3,
};
constexpr std::size_t kCategoryCount = 4;
std::string_view category_name(Category c);

enum class Activity : std::uint8_t {
  kFetch, kDecode,
  kLip, kTpsip, kTpdip, kCbp, kTp, kEoc,
  kTokenHop,
  kEprGen, kEprDist,
  kGate, kPreproc, kPostproc,
};
std::string_view activity_name(Activity a);

/// Trace node ids: quantum cores are 0..n_qc-1, plus the control unit and
/// the EPR generator.
constexpr int kNodeCu = -1;
constexpr int kNodeEpr = -2;
std::string node_name(int node);

struct TraceRecord {
  double start_ns = 0;
  double end_ns = 0;
  int node = 0;
  Activity activity = Activity::kGate;
  Category category = Category::kQuantumComp;
  std::int32_t bundle = 0;
};

/// When the EPR generator receives a teleport's pair request.
enum class EprRequestTime : std::uint8_t {
  kAtDispatch,   // when the TPS instruction packet leaves the dispatcher
  kAtExecStart,  // when the bundle's execution phase opens
};

struct RunOptions {
  bool epr_deterministic = false;          // generation takes exactly the mean
  std::uint32_t epr_parallel_capacity = 0; // 0 = unbounded concurrent generations
  CtService ct_service = CtService::kOnePacket;
  CtIdlePolicy ct_idle = CtIdlePolicy::kCirculate;
  EprRequestTime epr_request = EprRequestTime::kAtDispatch;
  bool full_trace = false;  // keep per-interval records (and per-hop records)
  bool validate = true;     // static program checks before running
};

struct SimResult {
  double makespan_ns = 0;
  std::array<double, kCategoryCount> category_ns{};
  std::uint64_t token_hops = 0;
  std::uint64_t transmissions = 0;
  bool full = false;
  std::vector<TraceRecord> records;  // full mode only, sorted on completion
  /// full mode only: (bundle, order) per TP packet, for protocol audits
  std::vector<std::pair<std::int32_t, std::uint32_t>> tp_orders;

  double total_category_ns() const;
};

class SimDeadlockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Executes a compiled program: per bundle, fetch and decode at the CU,
/// dispatch of one instruction packet per instruction over the channel,
/// per-core execution (local gates, teleport source/destination processes,
/// EPR service), and the end-of-computation barrier. Deterministic per seed.
/// Throws SimDeadlockError (with per-core diagnostics) if the event queue
/// drains with unfinished instructions.
SimResult run_program(const Program& program, const TimingConfig& cfg, MacMode mode,
                      std::uint64_t seed, const RunOptions& opt = {});

/// CSV schema: start_ns,end_ns,node,activity,category,bundle_idx.
void trace_to_csv(const SimResult& r, std::ostream& out);

}  // namespace qwinoc
