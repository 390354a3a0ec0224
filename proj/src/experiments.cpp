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
#include "qwinoc/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace qwinoc {

namespace {

using nlohmann::json;

void require_keys(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& path) {
  if (!obj.is_object()) throw ConfigError("config: " + path + " must be an object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) {
      if (item.key() == a) {
        ok = true;
        break;
      }
    }
    if (!ok) throw ConfigError("config: unknown key '" + path + "." + item.key() + "'");
  }
}

double jnum(const json& o, const char* k, double dflt, const std::string& path) {
  if (!o.contains(k)) return dflt;
  if (!o[k].is_number()) throw ConfigError("config: " + path + "." + k + " must be a number");
  return o[k].get<double>();
}

std::uint32_t juint(const json& o, const char* k, std::uint32_t dflt, const std::string& path) {
  if (!o.contains(k)) return dflt;
  if (!o[k].is_number_unsigned() && !(o[k].is_number_integer() && o[k].get<std::int64_t>() >= 0)) {
    throw ConfigError("config: " + path + "." + k + " must be a non-negative integer");
  }
  return o[k].get<std::uint32_t>();
}

bool jbool(const json& o, const char* k, bool dflt, const std::string& path) {
  if (!o.contains(k)) return dflt;
  if (!o[k].is_boolean()) throw ConfigError("config: " + path + "." + k + " must be a boolean");
  return o[k].get<bool>();
}

std::string jstr(const json& o, const char* k, const std::string& dflt, const std::string& path) {
  if (!o.contains(k)) return dflt;
  if (!o[k].is_string()) throw ConfigError("config: " + path + "." + k + " must be a string");
  return o[k].get<std::string>();
}

WorkloadConfig::Kind workload_kind(const std::string& s) {
  if (s == "random") return WorkloadConfig::Kind::kRandom;
  if (s == "ghz") return WorkloadConfig::Kind::kGhz;
  if (s == "qft") return WorkloadConfig::Kind::kQft;
  if (s == "graphstate") return WorkloadConfig::Kind::kGraphstate;
  if (s == "file") return WorkloadConfig::Kind::kFile;
  throw ConfigError("config: workload.generator must be one of random|ghz|qft|graphstate|file");
}

const char* workload_kind_name(WorkloadConfig::Kind k) {
  switch (k) {
    case WorkloadConfig::Kind::kRandom: return "random";
    case WorkloadConfig::Kind::kGhz: return "ghz";
    case WorkloadConfig::Kind::kQft: return "qft";
    case WorkloadConfig::Kind::kGraphstate: return "graphstate";
    case WorkloadConfig::Kind::kFile: return "file";
  }
  return "?";
}

CompileOptions compile_options(const SystemConfig& sys) {
  CompileOptions o;
  o.to_bits = sys.to_bits;
  o.header_bits = sys.header_bits;
  o.overflow_slots = sys.overflow_slots;
  return o;
}

std::string fmt(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

void for_each_run(const ExperimentConfig& cfg,
                  const std::function<void(MacMode, std::uint64_t, const Program&)>& fn) {
  if (!cfg.has_workload) throw ConfigError("config: a workload is required for this command");
  if (cfg.seeds.empty()) throw ConfigError("config: seed list must not be empty");
  for (const MacMode mode : cfg.modes) {
    for (const std::uint64_t seed : cfg.seeds) {
      const LogicalCircuit circuit = build_workload(cfg.workload, seed);
      const Program program = build_program(circuit, cfg.system);
      fn(mode, seed, program);
    }
  }
}

BreakdownReport mean_report(const std::vector<BreakdownReport>& rs) {
  BreakdownReport m = rs.front();
  if (rs.size() == 1) return m;
  m.q_comm_ns = m.q_comp_ns = m.c_comm_ns = m.c_comp_ns = m.makespan_ns = 0;
  for (const BreakdownReport& r : rs) {
    m.q_comm_ns += r.q_comm_ns;
    m.q_comp_ns += r.q_comp_ns;
    m.c_comm_ns += r.c_comm_ns;
    m.c_comp_ns += r.c_comp_ns;
    m.makespan_ns += r.makespan_ns;
  }
  const auto n = static_cast<double>(rs.size());
  m.q_comm_ns /= n;
  m.q_comp_ns /= n;
  m.c_comm_ns /= n;
  m.c_comp_ns /= n;
  m.makespan_ns /= n;
  return m;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw ConfigError("cannot open output file: " + path);
  return out;
}

}  // namespace

std::vector<MacMode> parse_modes(const std::string& s) {
  if (s == "ct") return {MacMode::kCt};
  if (s == "id") return {MacMode::kId};
  if (s == "both") return {MacMode::kCt, MacMode::kId};
  throw ConfigError("mode must be ct, id or both (got '" + s + "')");
}

ExperimentConfig parse_config_json(const std::string& text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  require_keys(j, {"system", "timing", "sim", "workload", "seeds", "mode", "t2_ns", "full_grid"},
               "");

  ExperimentConfig cfg;

  if (j.contains("system")) {
    const json& s = j["system"];
    require_keys(s, {"n_qc", "slots_per_qc", "to_bits", "header_bits", "overflow_slots"},
                 "system");
    cfg.system.n_qc = juint(s, "n_qc", cfg.system.n_qc, "system");
    cfg.system.slots_per_qc = juint(s, "slots_per_qc", cfg.system.slots_per_qc, "system");
    cfg.system.to_bits = juint(s, "to_bits", cfg.system.to_bits, "system");
    cfg.system.header_bits = juint(s, "header_bits", cfg.system.header_bits, "system");
    if (s.contains("overflow_slots")) {
      if (s["overflow_slots"].is_number_integer() && s["overflow_slots"].get<std::int64_t>() < 0) {
        cfg.system.overflow_slots = kUnboundedSlots;  // -1 = unbounded
      } else {
        cfg.system.overflow_slots = juint(s, "overflow_slots", 0, "system");
      }
    }
  }

  if (j.contains("timing")) {
    const json& t = j["timing"];
    require_keys(t,
                 {"epr_gen_mean_ns", "epr_distribution_ns", "preprocessing_ns",
                  "postprocessing_ns", "winoc_bitrate_gbps", "token_pass_ns",
                  "ram_bandwidth_gbps", "decode_per_instr_ns", "gate_1q_ns", "gate_2q_ns", "qsf"},
                 "timing");
    TimingConfig& c = cfg.timing;
    c.epr_gen_mean_ns = jnum(t, "epr_gen_mean_ns", c.epr_gen_mean_ns, "timing");
    c.epr_distribution_ns = jnum(t, "epr_distribution_ns", c.epr_distribution_ns, "timing");
    c.preprocessing_ns = jnum(t, "preprocessing_ns", c.preprocessing_ns, "timing");
    c.postprocessing_ns = jnum(t, "postprocessing_ns", c.postprocessing_ns, "timing");
    c.winoc_bitrate_gbps = jnum(t, "winoc_bitrate_gbps", c.winoc_bitrate_gbps, "timing");
    c.token_pass_ns = jnum(t, "token_pass_ns", c.token_pass_ns, "timing");
    c.ram_bandwidth_gbps = jnum(t, "ram_bandwidth_gbps", c.ram_bandwidth_gbps, "timing");
    c.decode_per_instr_ns = jnum(t, "decode_per_instr_ns", c.decode_per_instr_ns, "timing");
    c.gate_1q_ns = jnum(t, "gate_1q_ns", c.gate_1q_ns, "timing");
    c.gate_2q_ns = jnum(t, "gate_2q_ns", c.gate_2q_ns, "timing");
    c.qsf = jnum(t, "qsf", c.qsf, "timing");
    c.validate();
  }

  if (j.contains("sim")) {
    const json& s = j["sim"];
    require_keys(
        s, {"epr_deterministic", "epr_parallel_capacity", "ct_service", "ct_idle", "epr_request"},
        "sim");
    cfg.sim.epr_deterministic = jbool(s, "epr_deterministic", cfg.sim.epr_deterministic, "sim");
    cfg.sim.epr_parallel_capacity =
        juint(s, "epr_parallel_capacity", cfg.sim.epr_parallel_capacity, "sim");
    const std::string service = jstr(
        s, "ct_service", cfg.sim.ct_service == CtService::kOnePacket ? "one_packet" : "exhaustive",
        "sim");
    if (service == "one_packet") {
      cfg.sim.ct_service = CtService::kOnePacket;
    } else if (service == "exhaustive") {
      cfg.sim.ct_service = CtService::kExhaustive;
    } else {
      throw ConfigError("config: sim.ct_service must be one_packet or exhaustive");
    }
    const std::string idle = jstr(
        s, "ct_idle", cfg.sim.ct_idle == CtIdlePolicy::kCirculate ? "circulate" : "park", "sim");
    if (idle == "circulate") {
      cfg.sim.ct_idle = CtIdlePolicy::kCirculate;
    } else if (idle == "park") {
      cfg.sim.ct_idle = CtIdlePolicy::kPark;
    } else {
      throw ConfigError("config: sim.ct_idle must be circulate or park");
    }
    const std::string req = jstr(
        s, "epr_request",
        cfg.sim.epr_request == EprRequestTime::kAtDispatch ? "at_dispatch" : "at_exec_start",
        "sim");
    if (req == "at_dispatch") {
      cfg.sim.epr_request = EprRequestTime::kAtDispatch;
    } else if (req == "at_exec_start") {
      cfg.sim.epr_request = EprRequestTime::kAtExecStart;
    } else {
      throw ConfigError("config: sim.epr_request must be at_dispatch or at_exec_start");
    }
  }

  if (j.contains("workload")) {
    const json& w = j["workload"];
    require_keys(w, {"generator", "n_qubits", "n_gates", "two_qubit_fraction", "edges", "file"},
                 "workload");
    cfg.workload.kind = workload_kind(jstr(w, "generator", "random", "workload"));
    cfg.workload.n_qubits = juint(w, "n_qubits", cfg.workload.n_qubits, "workload");
    cfg.workload.n_gates = juint(w, "n_gates", cfg.workload.n_gates, "workload");
    cfg.workload.two_qubit_fraction =
        jnum(w, "two_qubit_fraction", cfg.workload.two_qubit_fraction, "workload");
    if (w.contains("edges")) {
      if (!w["edges"].is_array()) throw ConfigError("config: workload.edges must be an array");
      for (const json& e : w["edges"]) {
        if (!e.is_array() || e.size() != 2) {
          throw ConfigError("config: workload.edges entries must be [u, v] pairs");
        }
        cfg.workload.edges.emplace_back(e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>());
      }
    }
    if (cfg.workload.kind == WorkloadConfig::Kind::kFile) {
      std::string f = jstr(w, "file", "", "workload");
      if (f.empty()) throw ConfigError("config: workload.file is required for generator=file");
      std::filesystem::path p(f);
      if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
      if (!std::filesystem::exists(p)) {
        throw ConfigError("config: workload file does not exist: " + p.string());
      }
      cfg.workload.file = p.string();
    }
    cfg.has_workload = true;
  }

  if (j.contains("seeds")) {
    if (!j["seeds"].is_array()) throw ConfigError("config: seeds must be an array");
    cfg.seeds.clear();
    for (const json& s : j["seeds"]) {
      if (!s.is_number_integer() && !s.is_number_unsigned()) {
        throw ConfigError("config: seeds must be integers");
      }
      cfg.seeds.push_back(s.get<std::uint64_t>());
    }
    if (cfg.seeds.empty()) throw ConfigError("config: seed list must not be empty");
  }

  if (j.contains("mode")) cfg.modes = parse_modes(jstr(j, "mode", "both", ""));
  cfg.t2_ns = jnum(j, "t2_ns", cfg.t2_ns, "");
  if (cfg.t2_ns <= 0) throw ConfigError("config: t2_ns must be > 0");
  cfg.full_grid = jbool(j, "full_grid", cfg.full_grid, "");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str(), std::filesystem::path(path).parent_path().string());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["system"] = {{"n_qc", cfg.system.n_qc},
                 {"slots_per_qc", cfg.system.slots_per_qc},
                 {"to_bits", cfg.system.to_bits},
                 {"header_bits", cfg.system.header_bits},
                 {"overflow_slots", cfg.system.overflow_slots == kUnboundedSlots
                                        ? json(-1)
                                        : json(cfg.system.overflow_slots)}};
  j["timing"] = {{"epr_gen_mean_ns", cfg.timing.epr_gen_mean_ns},
                 {"epr_distribution_ns", cfg.timing.epr_distribution_ns},
                 {"preprocessing_ns", cfg.timing.preprocessing_ns},
                 {"postprocessing_ns", cfg.timing.postprocessing_ns},
                 {"winoc_bitrate_gbps", cfg.timing.winoc_bitrate_gbps},
                 {"token_pass_ns", cfg.timing.token_pass_ns},
                 {"ram_bandwidth_gbps", cfg.timing.ram_bandwidth_gbps},
                 {"decode_per_instr_ns", cfg.timing.decode_per_instr_ns},
                 {"gate_1q_ns", cfg.timing.gate_1q_ns},
                 {"gate_2q_ns", cfg.timing.gate_2q_ns},
                 {"qsf", cfg.timing.qsf}};
  j["sim"] = {{"epr_deterministic", cfg.sim.epr_deterministic},
              {"epr_parallel_capacity", cfg.sim.epr_parallel_capacity},
              {"ct_service",
               cfg.sim.ct_service == CtService::kOnePacket ? "one_packet" : "exhaustive"},
              {"ct_idle", cfg.sim.ct_idle == CtIdlePolicy::kCirculate ? "circulate" : "park"},
              {"epr_request", cfg.sim.epr_request == EprRequestTime::kAtDispatch
                                  ? "at_dispatch"
                                  : "at_exec_start"}};
  if (cfg.has_workload) {
    json w;
    w["generator"] = workload_kind_name(cfg.workload.kind);
    w["n_qubits"] = cfg.workload.n_qubits;
    w["n_gates"] = cfg.workload.n_gates;
    w["two_qubit_fraction"] = cfg.workload.two_qubit_fraction;
    if (!cfg.workload.edges.empty()) {
      json edges = json::array();
      for (const auto& [u, v] : cfg.workload.edges) edges.push_back({u, v});
      w["edges"] = edges;
    }
    if (!cfg.workload.file.empty()) w["file"] = cfg.workload.file;
    j["workload"] = w;
  }
  j["seeds"] = cfg.seeds;
  j["mode"] = cfg.modes.size() == 2 ? "both" : std::string(mac_mode_name(cfg.modes.front()));
  j["t2_ns"] = cfg.t2_ns;
  j["full_grid"] = cfg.full_grid;
  return j.dump(2);
}

LogicalCircuit build_workload(const WorkloadConfig& w, std::uint64_t seed) {
  switch (w.kind) {
    case WorkloadConfig::Kind::kRandom:
      return gen_random_circuit(w.n_qubits, w.n_gates, w.two_qubit_fraction, seed);
    case WorkloadConfig::Kind::kGhz: return gen_ghz(w.n_qubits);
    case WorkloadConfig::Kind::kQft: return gen_qft(w.n_qubits);
    case WorkloadConfig::Kind::kGraphstate: return gen_graphstate(w.edges, w.n_qubits);
    case WorkloadConfig::Kind::kFile: return load_circuit_file(w.file);
  }
  throw ConfigError("unreachable workload kind");
}

Program build_program(const LogicalCircuit& c, const SystemConfig& sys) {
  const Placement placement = map_modulo(c, sys.n_qc, sys.slots_per_qc);
  return assign_token_orders(compile(c, placement, compile_options(sys)));
}

BreakdownReport run_once(const Program& p, const TimingConfig& t, const RunOptions& opt,
                         MacMode mode, std::uint64_t seed, std::uint32_t n_qc) {
  const SimResult res = run_program(p, t, mode, seed, opt);
  BreakdownReport r = breakdown(res);
  r.n_qc = n_qc;
  r.qsf = t.qsf;
  r.mode = mode;
  r.seed = static_cast<std::int64_t>(seed);
  return r;
}

std::vector<BreakdownReport> run_reports(const ExperimentConfig& cfg) {
  std::vector<BreakdownReport> rows;
  for_each_run(cfg, [&](MacMode mode, std::uint64_t seed, const Program& p) {
    rows.push_back(run_once(p, cfg.timing, cfg.sim, mode, seed, cfg.system.n_qc));
  });
  return rows;
}

std::vector<std::uint32_t> sweep_sizes(bool full_grid) {
  if (!full_grid) return {1, 2, 4, 8, 16, 32, 64, 100};
  std::vector<std::uint32_t> all(100);
  for (std::uint32_t i = 0; i < 100; ++i) all[i] = i + 1;
  return all;
}

namespace {

// Shared core of the size and QSF sweeps: the workload scales with the core
// count (16n qubits, 160n gates on n cores of 16 slots); programs compile
// once per (n, seed) and are reused across QSF values and modes.
std::vector<SweepPoint> sweep_impl(const ExperimentConfig& cfg, const std::vector<double>& qsfs) {
  if (cfg.seeds.empty()) throw ConfigError("config: seed list must not be empty");
  std::vector<SweepPoint> out;
  for (const std::uint32_t n : sweep_sizes(cfg.full_grid)) {
    SystemConfig sys = cfg.system;
    sys.n_qc = n;
    sys.slots_per_qc = 16;
    std::vector<Program> programs;
    programs.reserve(cfg.seeds.size());
    for (const std::uint64_t seed : cfg.seeds) {
      const LogicalCircuit c = gen_random_circuit(16 * n, 160 * n, 0.5, seed);
      programs.push_back(build_program(c, sys));
    }
    for (const double qsf : qsfs) {
      TimingConfig t = cfg.timing;
      t.qsf = qsf;
      for (const MacMode mode : cfg.modes) {
        std::vector<BreakdownReport> rs;
        rs.reserve(cfg.seeds.size());
        for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
          rs.push_back(run_once(programs[i], t, cfg.sim, mode, cfg.seeds[i], n));
        }
        SweepPoint pt;
        pt.n_qc = n;
        pt.qsf = qsf;
        pt.mode = mode;
        pt.n_seeds = static_cast<std::uint32_t>(cfg.seeds.size());
        pt.mean = mean_report(rs);
        pt.mean.seed = static_cast<std::int64_t>(cfg.seeds.size());
        out.push_back(std::move(pt));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<SweepPoint> sweep_size(const ExperimentConfig& cfg) {
  return sweep_impl(cfg, {cfg.timing.qsf});
}

std::vector<SweepPoint> sweep_qsf(const ExperimentConfig& cfg) {
  return sweep_impl(cfg, {kQsfGrid.begin(), kQsfGrid.end()});
}

std::vector<BenchmarkRow> run_benchmarks(const ExperimentConfig& cfg) {
  if (cfg.seeds.empty()) throw ConfigError("config: seed list must not be empty");
  constexpr std::uint32_t kQubits = 25;
  SystemConfig sys = cfg.system;
  sys.n_qc = 4;
  sys.slots_per_qc = 9;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> ring_edges;
  for (std::uint32_t i = 0; i < kQubits; ++i) ring_edges.emplace_back(i, (i + 1) % kQubits);

  struct Bench {
    const char* name;
    std::function<LogicalCircuit(std::uint64_t)> make;
  };
  const Bench benches[] = {
      {"ghz", [&](std::uint64_t) { return gen_ghz(kQubits); }},
      {"qft", [&](std::uint64_t) { return gen_qft(kQubits); }},
      {"graphstate", [&](std::uint64_t) { return gen_graphstate(ring_edges, kQubits); }},
      {"random",
       [&](std::uint64_t seed) { return gen_random_circuit(kQubits, 250, 0.5, seed); }},
  };

  std::vector<BenchmarkRow> rows;
  for (const Bench& b : benches) {
    double ct_sum = 0, id_sum = 0;
    for (const std::uint64_t seed : cfg.seeds) {
      const Program p = build_program(b.make(seed), sys);
      ct_sum += run_once(p, cfg.timing, cfg.sim, MacMode::kCt, seed, sys.n_qc).makespan_ns;
      id_sum += run_once(p, cfg.timing, cfg.sim, MacMode::kId, seed, sys.n_qc).makespan_ns;
    }
    BenchmarkRow row;
    row.name = b.name;
    row.n_qubits = kQubits;
    row.n_qc = sys.n_qc;
    row.n_seeds = static_cast<std::uint32_t>(cfg.seeds.size());
    row.ct_makespan_ns = ct_sum / static_cast<double>(cfg.seeds.size());
    row.id_makespan_ns = id_sum / static_cast<double>(cfg.seeds.size());
    row.improvement_pct = speedup_percent(row.ct_makespan_ns, row.id_makespan_ns);
    row.coherence_improvement_pct =
        coherence_improvement_percent(row.ct_makespan_ns, row.id_makespan_ns, cfg.t2_ns);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepPoint>& rows, std::ostream& out) {
  write_report_csv_header(out);
  for (const SweepPoint& p : rows) write_report_csv_row(out, p.mean);
}

void write_benchmark_csv(const std::vector<BenchmarkRow>& rows, std::ostream& out) {
  out << "benchmark,n_qubits,n_qc,seeds,ct_makespan_ns,id_makespan_ns,improvement_pct,"
         "coherence_improvement_pct\n";
  for (const BenchmarkRow& r : rows) {
    out << r.name << ',' << r.n_qubits << ',' << r.n_qc << ',' << r.n_seeds << ','
        << fmt(r.ct_makespan_ns) << ',' << fmt(r.id_makespan_ns) << ',' << fmt(r.improvement_pct)
        << ',' << fmt(r.coherence_improvement_pct) << "\n";
  }
}

void write_manifest(const ExperimentConfig& cfg, const std::string& command,
                    const std::string& path) {
  json j;
  j["tool"] = "qwinoc";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["config"] = json::parse(config_to_json(cfg));
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

int cmd_run(const ExperimentConfig& cfg, const std::string& out_path, bool trace) {
  auto out = open_out(out_path);
  write_report_csv_header(out);
  for_each_run(cfg, [&](MacMode mode, std::uint64_t seed, const Program& p) {
    RunOptions opt = cfg.sim;
    opt.full_trace = trace;
    const SimResult res = run_program(p, cfg.timing, mode, seed, opt);
    BreakdownReport r = breakdown(res);
    r.n_qc = cfg.system.n_qc;
    r.qsf = cfg.timing.qsf;
    r.mode = mode;
    r.seed = static_cast<std::int64_t>(seed);
    write_report_csv_row(out, r);
    if (trace) {
      const std::string tpath = out_path + ".trace-" + std::string(mac_mode_name(mode)) + "-" +
                                std::to_string(seed) + ".csv";
      auto tout = open_out(tpath);
      trace_to_csv(res, tout);
    }
  });
  write_manifest(cfg, "run", out_path + ".manifest.json");
  return 0;
}

int cmd_sweep_size(const ExperimentConfig& cfg, const std::string& out_path) {
  const auto rows = sweep_size(cfg);
  auto out = open_out(out_path);
  write_sweep_csv(rows, out);
  write_manifest(cfg, "sweep-size", out_path + ".manifest.json");
  return 0;
}

int cmd_sweep_qsf(const ExperimentConfig& cfg, const std::string& out_path) {
  const auto rows = sweep_qsf(cfg);
  auto out = open_out(out_path);
  write_sweep_csv(rows, out);
  write_manifest(cfg, "sweep-qsf", out_path + ".manifest.json");
  return 0;
}

int cmd_benchmarks(const ExperimentConfig& cfg, const std::string& out_path) {
  const auto rows = run_benchmarks(cfg);
  auto out = open_out(out_path);
  write_benchmark_csv(rows, out);
  write_manifest(cfg, "benchmarks", out_path + ".manifest.json");
  return 0;
}

int cmd_gen_circuit(const ExperimentConfig& cfg, const std::string& out_path,
                    std::uint64_t seed) {
  if (!cfg.has_workload) throw ConfigError("config: a workload is required for gen-circuit");
  const LogicalCircuit c = build_workload(cfg.workload, seed);
  auto out = open_out(out_path);
  serialize_circuit(c, out);
  return 0;
}

}  // namespace qwinoc
