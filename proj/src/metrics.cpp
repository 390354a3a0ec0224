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
#include "qwinoc/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace qwinoc {

std::array<double, kCategoryCount> BreakdownReport::shares() const {
  std::array<double, kCategoryCount> s{};
  const double total = total_ns();
  if (total <= 0) return s;
  s[0] = q_comm_ns / total;
  s[1] = q_comp_ns / total;
  s[2] = c_comm_ns / total;
  s[3] = c_comp_ns / total;
  return s;
}

BreakdownReport breakdown(const SimResult& trace) {
  BreakdownReport r;
  r.q_comm_ns = trace.category_ns[static_cast<std::size_t>(Category::kQuantumComm)];
  r.q_comp_ns = trace.category_ns[static_cast<std::size_t>(Category::kQuantumComp)];
  r.c_comm_ns = trace.category_ns[static_cast<std::size_t>(Category::kClassicalComm)];
  r.c_comp_ns = trace.category_ns[static_cast<std::size_t>(Category::kClassicalComp)];
  r.makespan_ns = trace.makespan_ns;
  return r;
}

double classical_fraction(const BreakdownReport& r) {
  const double total = r.total_ns();
  return total > 0 ? r.c_comm_ns / total : 0.0;
}

double speedup_percent(double ct_makespan_ns, double id_makespan_ns) {
  if (ct_makespan_ns <= 0) return 0.0;
  return (ct_makespan_ns - id_makespan_ns) / ct_makespan_ns * 100.0;
}

double speedup_percent(const BreakdownReport& ct, const BreakdownReport& id) {
  return speedup_percent(ct.makespan_ns, id.makespan_ns);
}

double coherence_improvement_percent(double ct_makespan_ns, double id_makespan_ns, double t2_ns) {
  if (t2_ns <= 0) throw std::invalid_argument("coherence_improvement: t2 must be > 0");
  // F(T) = exp(-T/t2); (F(id) - F(ct)) / F(ct) = exp((ct - id)/t2) - 1.
  return (std::exp((ct_makespan_ns - id_makespan_ns) / t2_ns) - 1.0) * 100.0;
}

std::string_view mac_mode_name(MacMode m) { return m == MacMode::kCt ? "ct" : "id"; }

void write_report_csv_header(std::ostream& out) {
  out << "n_qc,qsf,mode,seed,q_comm_ns,q_comp_ns,c_comm_ns,c_comp_ns,makespan_ns,c_comm_share\n";
}

void write_report_csv_row(std::ostream& out, const BreakdownReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%u,%g,%s,%lld,%.6f,%.6f,%.6f,%.6f,%.6f,%.9f\n", r.n_qc, r.qsf,
                std::string(mac_mode_name(r.mode)).c_str(), static_cast<long long>(r.seed),
                r.q_comm_ns, r.q_comp_ns, r.c_comm_ns, r.c_comp_ns, r.makespan_ns,
                classical_fraction(r));
  out << buf;
}

}  // namespace qwinoc
