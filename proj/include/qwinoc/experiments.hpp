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
#include <string>
#include <vector>

#include "qwinoc/circuit.hpp"
#include "qwinoc/compiler.hpp"
#include "qwinoc/metrics.hpp"
#include "qwinoc/sim.hpp"

namespace qwinoc {

constexpr const char* kToolVersion = "0.1.0";

struct SystemConfig {
  std::uint32_t n_qc = 2;
  std::uint32_t slots_per_qc = 16;
  std::uint32_t to_bits = 8;
  std::uint32_t header_bits = 16;
  std::uint32_t overflow_slots = kUnboundedSlots;
};

struct WorkloadConfig {
  enum class Kind : std::uint8_t { kRandom, kGhz, kQft, kGraphstate, kFile };
  Kind kind = Kind::kRandom;
  std::uint32_t n_qubits = 16;
  std::uint32_t n_gates = 160;
  double two_qubit_fraction = 0.5;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // graphstate
  std::string file;                                            // kFile
};

struct ExperimentConfig {
  SystemConfig system;
  TimingConfig timing;
  RunOptions sim;
  WorkloadConfig workload;
  bool has_workload = false;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::vector<MacMode> modes{MacMode::kCt, MacMode::kId};
  double t2_ns = kDefaultT2Ns;
  bool full_grid = false;  // size sweeps: every n in 1..100 instead of the coarse grid
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict parse: unknown keys are rejected with their JSON path; a workload
/// file must exist at load time (relative to the config's directory).
ExperimentConfig parse_config_json(const std::string& text, const std::string& base_dir);
ExperimentConfig load_config(const std::string& path);

/// Config echo (used by the manifest and by determinism tests).
std::string config_to_json(const ExperimentConfig& cfg);

std::vector<MacMode> parse_modes(const std::string& s);  // "ct" | "id" | "both"

LogicalCircuit build_workload(const WorkloadConfig& w, std::uint64_t seed);
Program build_program(const LogicalCircuit& c, const SystemConfig& sys);

/// One full pipeline run (compile is the caller's job); fills report metadata.
BreakdownReport run_once(const Program& p, const TimingConfig& t, const RunOptions& opt,
                         MacMode mode, std::uint64_t seed, std::uint32_t n_qc);

// ---- experiment drivers ----------------------------------------------------

/// cmd run: one report per (mode, seed).
std::vector<BreakdownReport> run_reports(const ExperimentConfig& cfg);

struct SweepPoint {
  std::uint32_t n_qc = 0;
  double qsf = 1.0;
  MacMode mode = MacMode::kCt;
  std::uint32_t n_seeds = 0;
  BreakdownReport mean;  // seed-averaged categories and makespan
};

std::vector<std::uint32_t> sweep_sizes(bool full_grid);
constexpr std::array<double, 4> kQsfGrid{1.0, 0.5, 0.25, 0.125};

/// Size sweep: per n, a random circuit with 16n qubits and 160n gates on
/// n cores of 16 slots, both configured modes, seed-averaged.
std::vector<SweepPoint> sweep_size(const ExperimentConfig& cfg);

/// QSF sweep: the size sweep repeated for each qsf in {1.0, 0.5, 0.25, 0.125}.
std::vector<SweepPoint> sweep_qsf(const ExperimentConfig& cfg);

struct BenchmarkRow {
  std::string name;
  std::uint32_t n_qubits = 0;
  std::uint32_t n_qc = 0;
  std::uint32_t n_seeds = 0;
  double ct_makespan_ns = 0;
  double id_makespan_ns = 0;
  double improvement_pct = 0;
  double coherence_improvement_pct = 0;
};

/// ghz / qft / graphstate / random at 25 qubits on 4 cores x 9 slots.
std::vector<BenchmarkRow> run_benchmarks(const ExperimentConfig& cfg);

// ---- CLI entry points (CSV + manifest emission) ----------------------------

int cmd_run(const ExperimentConfig& cfg, const std::string& out_path, bool trace);
int cmd_sweep_size(const ExperimentConfig& cfg, const std::string& out_path);
int cmd_sweep_qsf(const ExperimentConfig& cfg, const std::string& out_path);
int cmd_benchmarks(const ExperimentConfig& cfg, const std::string& out_path);
int cmd_gen_circuit(const ExperimentConfig& cfg, const std::string& out_path,
                    std::uint64_t seed);

void write_sweep_csv(const std::vector<SweepPoint>& rows, std::ostream& out);
void write_benchmark_csv(const std::vector<BenchmarkRow>& rows, std::ostream& out);
void write_manifest(const ExperimentConfig& cfg, const std::string& command,
                    const std::string& path);

}  // namespace qwinoc
