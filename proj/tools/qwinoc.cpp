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
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qwinoc/experiments.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_path;
  std::string mode;
  std::vector<std::uint64_t> seeds;
};

void add_common(CLI::App* cmd, CommonArgs& a, const std::string& default_out) {
  cmd->add_option("--config", a.config_path, "JSON experiment configuration");
  cmd->add_option("--out", a.out_path, "output CSV path")->default_val(default_out);
  cmd->add_option("--mode", a.mode, "MAC mode: ct, id or both")
      ->check(CLI::IsMember({"ct", "id", "both"}));
  cmd->add_option("--seeds", a.seeds, "seed list override")->delimiter(',');
}

qwinoc::ExperimentConfig resolve(const CommonArgs& a) {
  qwinoc::ExperimentConfig cfg;
  if (!a.config_path.empty()) cfg = qwinoc::load_config(a.config_path);
  if (!a.mode.empty()) cfg.modes = qwinoc::parse_modes(a.mode);
  if (!a.seeds.empty()) cfg.seeds = a.seeds;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event simulator of the classical control plane of a "
               "multi-chip quantum computer (CT-MAC vs ID-MAC)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qwinoc::kToolVersion);

  CommonArgs run_args, ssize_args, sqsf_args, bench_args, gen_args;
  bool trace = false;
  std::uint64_t gen_seed = 1;

  CLI::App* run = app.add_subcommand("run", "simulate the configured workload");
  add_common(run, run_args, "run.csv");
  run->add_flag("--trace", trace, "also write a per-run event trace CSV");

  CLI::App* ssize = app.add_subcommand("sweep-size", "system-size sweep (16n qubits, 160n gates)");
  add_common(ssize, ssize_args, "sweep-size.csv");
  bool full_grid = false;
  ssize->add_flag("--full-grid", full_grid, "sweep every size 1..100 instead of the coarse grid");

  CLI::App* sqsf = app.add_subcommand("sweep-qsf", "quantum-scaling-factor sweep over the size grid");
  add_common(sqsf, sqsf_args, "sweep-qsf.csv");
  bool full_grid_q = false;
  sqsf->add_flag("--full-grid", full_grid_q, "sweep every size 1..100 instead of the coarse grid");

  CLI::App* bench = app.add_subcommand("benchmarks",
                                       "ghz/qft/graphstate/random at 25 qubits on 4x9 cores");
  add_common(bench, bench_args, "benchmarks.csv");

  CLI::App* gen = app.add_subcommand("gen-circuit", "write the configured workload as a circuit file");
  add_common(gen, gen_args, "circuit.txt");
  gen->add_option("--seed", gen_seed, "generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return qwinoc::cmd_run(resolve(run_args), run_args.out_path, trace);
    if (ssize->parsed()) {
      auto cfg = resolve(ssize_args);
      cfg.full_grid = cfg.full_grid || full_grid;
      return qwinoc::cmd_sweep_size(cfg, ssize_args.out_path);
    }
    if (sqsf->parsed()) {
      auto cfg = resolve(sqsf_args);
      cfg.full_grid = cfg.full_grid || full_grid_q;
      return qwinoc::cmd_sweep_qsf(cfg, sqsf_args.out_path);
    }
    if (bench->parsed()) return qwinoc::cmd_benchmarks(resolve(bench_args), bench_args.out_path);
    if (gen->parsed()) return qwinoc::cmd_gen_circuit(resolve(gen_args), gen_args.out_path, gen_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
