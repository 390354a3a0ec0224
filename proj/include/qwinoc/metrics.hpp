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
#include <string>
#include <vector>

#include "qwinoc/sim.hpp"

namespace qwinoc {

/// Per-category accumulated busy time plus the wall-clock makespan.
/// Shares normalize by the sum of the four categories, not by makespan,
/// so they stay well defined under concurrency.
struct BreakdownReport {
  double q_comm_ns = 0;
  double q_comp_ns = 0;
  double c_comm_ns = 0;
  double c_comp_ns = 0;
  double makespan_ns = 0;

  // run metadata
  std::uint32_t n_qc = 0;
  double qsf = 1.0;
  MacMode mode = MacMode::kCt;
  std::int64_t seed = 0;

  double total_ns() const { return q_comm_ns + q_comp_ns + c_comm_ns + c_comp_ns; }
  std::array<double, kCategoryCount> shares() const;  // zero total -> all zero
};

BreakdownReport breakdown(const SimResult& trace);

/// c_comm / (q_comm + q_comp + c_comm + c_comp); 0 for an empty report.
double classical_fraction(const BreakdownReport& r);

/// (ct.makespan - id.makespan) / ct.makespan * 100.
double speedup_percent(const BreakdownReport& ct, const BreakdownReport& id);
double speedup_percent(double ct_makespan_ns, double id_makespan_ns);

/// Exponential-decay fidelity proxy F(T) = exp(-T/t2);
/// improvement = (F(id) - F(ct)) / F(ct) * 100.
double coherence_improvement_percent(double ct_makespan_ns, double id_makespan_ns,
                                     double t2_ns);

constexpr double kDefaultT2Ns = 100000.0;  // 100 us

std::string_view mac_mode_name(MacMode m);

/// Report CSV. Columns:
/// n_qc,qsf,mode,seed,q_comm_ns,q_comp_ns,c_comm_ns,c_comp_ns,makespan_ns,c_comm_share
void write_report_csv_header(std::ostream& out);
void write_report_csv_row(std::ostream& out, const BreakdownReport& r);

}  // namespace qwinoc
