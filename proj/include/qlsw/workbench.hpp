// Copyright 2024-2026 The qlsw developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlsw/hhl.hpp"
#include "qlsw/optimizer.hpp"
#include "qlsw/problem.hpp"

namespace qlsw {

enum class Variant { hhl, hhlite, perturbed, perturbedlite, adapt, adaptlite };

const char* variant_name(Variant v);
Variant variant_from_string(const std::string& name);
bool is_lite(Variant v);

enum class FixMethod { classical, quantum, lmr };
FixMethod fix_method_from_string(const std::string& name);

struct RunConfig {
  Variant variant = Variant::hhl;
  int n_r = 6;
  double p_th = 0.8;
  RunMode mode = RunMode::exact;
  std::uint64_t shots = 1000;
  int repetitions = 10;
  std::uint64_t seed = 0;
  bool optimize = false;
  FixMethod fixing = FixMethod::classical;
  double xi = 1.0;                       // perturbed variants' level shift
  std::optional<double> d_tilde_min;     // adapt variants' estimate override
  int lmr_readout_qubits = 3;
};

struct ReportRow {
  std::string label;
  std::string variant;
  int n_t = 0;  // 2 n_b + n_r + 1
  int n_b = 0;
  int n_r = 0;
  double e_corr_oracle = 0.0;
  int depth = 0;
  int two_q = 0;
  double e_corr = 0.0;
  double e_diff = 0.0;
  double pfd = 0.0;
  int n_f = 0;
  double success_probability = 0.0;
  double overlap = 0.0;
  double compression_pct = 0.0;  // from the optimizer, 0 if not requested
  bool ok = true;
  std::string error;
};

/// Scaling plan for the config's variant family.
ScalingPlan plan_for(const ProblemInstance& problem, const RunConfig& config);

/// Full pipeline: scale, plan fixings for lite variants, build, decompose
/// (optionally optimize; metrics are reported from the native circuit, the
/// tagged high-level circuit drives the simulation), run, report.
/// Stage failures surface as exceptions annotated with the stage name.
ReportRow run_variant(const ProblemInstance& problem, const RunConfig& config);

struct SweepReport {
  std::vector<ReportRow> rows;  // instance-major, config order within

  std::string csv() const;
  /// instance x variant -> depth compression vs the same instance's hhl row
  /// and PFD; plot-ready.
  std::string heatmap_csv() const;
};

/// Runs every (instance, config) pair on a bounded worker pool with per-row
/// derived seeds. Failures land in the row's error field; the sweep finishes.
SweepReport run_sweep(const std::vector<ProblemInstance>& instances,
                      const std::vector<RunConfig>& configs,
                      int max_workers = 0);

struct ShotStat {
  std::uint64_t shots = 0;
  double mean_e_corr = 0.0;
  double stddev_e_corr = 0.0;
};

/// Repeats sampled runs at each shot count with derived seeds and reports
/// the spread of E_corr.
std::vector<ShotStat> shot_convergence(const ProblemInstance& problem,
                                       const RunConfig& config,
                                       const std::vector<std::uint64_t>& shot_grid,
                                       int repetitions);

struct DminPoint {
  double d_tilde_min = 0.0;
  bool valid = false;
  std::string note;
  double pfd = 0.0;
  double p1 = 0.0;
  bool in_window = false;  // d_min >= d_tilde_min > 2^{-n_r} d_max
};

/// One adapt run per grid value; values breaking representability are
/// marked invalid and skipped.
std::vector<DminPoint> dmin_sweep(const ProblemInstance& problem, int n_r,
                                  const std::vector<double>& grid);

struct ResourceRow {
  int n_b = 0;
  int qpe_two_q = 0;
  int hhl_two_q = 0;
  int qpe_eqpe_two_q = 0;
  double ratio = 0.0;  // (QPE + EQPE) / HHL
};

/// Native two-qubit gate counts on synthetic instances per n_b; the EQPE
/// overhead is counted once (its Trotter steps share one decomposition).
std::vector<ResourceRow> resource_scan(const std::vector<int>& n_b_grid,
                                       int n_r, int n_e,
                                       std::uint64_t seed = 7);

std::string rows_to_csv(const std::vector<ReportRow>& rows);
std::string row_to_json(const ReportRow& row);

}  // namespace qlsw
