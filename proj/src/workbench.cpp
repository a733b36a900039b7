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

#include "qlsw/workbench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qlsw/decompose.hpp"
#include "qlsw/fixing.hpp"

namespace qlsw {

namespace {

constexpr std::uint64_t kSeedStride = 0x9e3779b97f4a7c15ULL;

template <typename F>
auto stage(const char* name, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string(name) + ": " + e.what());
  }
}

std::shared_ptr<const UnitaryBlock> block_of(Eigen::MatrixXcd m) {
  return std::make_shared<const UnitaryBlock>(
      UnitaryBlock::from_matrix(std::move(m)));
}

FixingPlan plan_fixings(const ProblemInstance& problem, const ScalingPlan& plan,
                        const RunConfig& config) {
  const QuantumCircuit qpe = build_qpe_circuit(problem, plan, config.n_r);
  const std::vector<int> clocks = qpe.registers.at("clock").all();
  switch (config.fixing) {
    case FixMethod::classical:
      return classical_fix(simulate_from_zero(qpe), clocks, config.p_th);
    case FixMethod::quantum:
      return quantum_fix(qpe, clocks, config.p_th, config.shots, config.seed);
    case FixMethod::lmr:
      return lmr_fix_all(
          [&] { return build_qpe_circuit(problem, plan, config.n_r); }, clocks,
          config.lmr_readout_qubits, config.p_th);
  }
  throw std::logic_error("unknown fixing method");
}

}  // namespace

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::hhl: return "hhl";
    case Variant::hhlite: return "hhlite";
    case Variant::perturbed: return "perturbed";
    case Variant::perturbedlite: return "perturbedlite";
    case Variant::adapt: return "adapt";
    case Variant::adaptlite: return "adaptlite";
  }
  return "?";
}

Variant variant_from_string(const std::string& name) {
  for (Variant v : {Variant::hhl, Variant::hhlite, Variant::perturbed,
                    Variant::perturbedlite, Variant::adapt, Variant::adaptlite}) {
    if (name == variant_name(v)) return v;
  }
  throw std::invalid_argument("unknown variant: " + name);
}

bool is_lite(Variant v) {
  return v == Variant::hhlite || v == Variant::perturbedlite ||
         v == Variant::adaptlite;
}

FixMethod fix_method_from_string(const std::string& name) {
  if (name == "classical") return FixMethod::classical;
  if (name == "quantum") return FixMethod::quantum;
  if (name == "lmr") return FixMethod::lmr;
  throw std::invalid_argument("unknown fixing method: " + name);
}

ScalingPlan plan_for(const ProblemInstance& problem, const RunConfig& config) {
  switch (config.variant) {
    case Variant::hhl:
    case Variant::hhlite:
      return exact_scaling(problem.a, config.n_r);
    case Variant::perturbed:
    case Variant::perturbedlite:
      return perturbed_scaling(problem.a, config.n_r, config.xi);
    case Variant::adapt:
    case Variant::adaptlite:
      return adapt_scaling(problem.a, config.n_r, config.d_tilde_min);
  }
  throw std::logic_error("unknown variant");
}

ReportRow run_variant(const ProblemInstance& problem, const RunConfig& config) {
  ReportRow row;
  row.label = problem.label;
  row.variant = variant_name(config.variant);
  row.n_b = problem.n_b;
  row.n_r = config.n_r;
  row.n_t = 2 * problem.n_b + config.n_r + 1;

  const ScalingPlan plan = stage("scale", [&] { return plan_for(problem, config); });

  FixingPlan fixings;
  const bool lite = is_lite(config.variant);
  if (lite) {
    fixings = stage("fix", [&] { return plan_fixings(problem, plan, config); });
    row.n_f = fixings.n_f();
  }

  HHLConfig hcfg;
  hcfg.n_r = config.n_r;
  hcfg.mode = config.mode;
  hcfg.shots = config.shots;
  hcfg.seed = config.seed;
  const QuantumCircuit circuit = stage("build", [&] {
    return build_hhl_circuit(problem, plan, hcfg, lite ? &fixings : nullptr);
  });

  QuantumCircuit native =
      stage("decompose", [&] { return decompose_to_native(circuit); });
  if (config.optimize) {
    const OptimizeResult opt = stage(
        "optimize", [&] { return optimize(native, PassPipeline::standard()); });
    row.compression_pct = opt.compression_pct;
    native = opt.circuit;
  }
  const CircuitMetrics m = metrics(native);
  row.depth = m.depth;
  row.two_q = m.two_qubit_count;

  const HHLOutcome out =
      stage("run", [&] { return run_hhl(circuit, hcfg, problem, plan); });
  row.e_corr = out.e_corr;
  row.success_probability = out.success_probability;
  row.overlap = out.overlap;

  row.e_corr_oracle = stage("oracle", [&] { return oracle_e_corr(problem); });
  row.e_diff = row.e_corr - row.e_corr_oracle;
  row.pfd = pfd(row.e_corr_oracle, row.e_corr);
  return row;
}

SweepReport run_sweep(const std::vector<ProblemInstance>& instances,
                      const std::vector<RunConfig>& configs, int max_workers) {
  if (instances.empty() || configs.empty()) {
    throw std::invalid_argument("sweep needs instances and configs");
  }
  struct Job {
    const ProblemInstance* problem;
    RunConfig config;
  };
  std::vector<Job> jobs;
  for (const ProblemInstance& p : instances) {
    for (std::size_t c = 0; c < configs.size(); ++c) {
      RunConfig rc = configs[c];
      rc.seed = rc.seed + kSeedStride * (jobs.size() + 1);
      jobs.push_back({&p, rc});
    }
  }

  SweepReport report;
  report.rows.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        report.rows[i] = run_variant(*jobs[i].problem, jobs[i].config);
      } catch (const std::exception& e) {
        ReportRow& row = report.rows[i];
        row.label = jobs[i].problem->label;
        row.variant = variant_name(jobs[i].config.variant);
        row.n_b = jobs[i].problem->n_b;
        row.n_r = jobs[i].config.n_r;
        row.n_t = 2 * row.n_b + row.n_r + 1;
        row.ok = false;
        row.error = e.what();
      }
    }
  };

  int workers = max_workers > 0
                    ? max_workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return report;
}

std::vector<ShotStat> shot_convergence(const ProblemInstance& problem,
                                       const RunConfig& config,
                                       const std::vector<std::uint64_t>& shot_grid,
                                       int repetitions) {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  const ScalingPlan plan = plan_for(problem, config);
  FixingPlan fixings;
  const bool lite = is_lite(config.variant);
  if (lite) fixings = plan_fixings(problem, plan, config);

  HHLConfig hcfg;
  hcfg.n_r = config.n_r;
  hcfg.mode = RunMode::sampled;
  const QuantumCircuit circuit =
      build_hhl_circuit(problem, plan, hcfg, lite ? &fixings : nullptr);

  std::vector<ShotStat> stats;
  for (std::size_t g = 0; g < shot_grid.size(); ++g) {
    ShotStat st;
    st.shots = shot_grid[g];
    std::vector<double> energies;
    for (int rep = 0; rep < repetitions; ++rep) {
      hcfg.shots = st.shots;
      hcfg.seed = config.seed + kSeedStride * (g * 1000 + rep + 1);
      energies.push_back(run_hhl(circuit, hcfg, problem, plan).e_corr);
    }
    double mean = 0.0;
    for (double e : energies) mean += e;
    mean /= static_cast<double>(energies.size());
    double var = 0.0;
    for (double e : energies) var += (e - mean) * (e - mean);
    var /= static_cast<double>(energies.size());
    st.mean_e_corr = mean;
    st.stddev_e_corr = std::sqrt(var);
    stats.push_back(st);
  }
  return stats;
}

std::vector<DminPoint> dmin_sweep(const ProblemInstance& problem, int n_r,
                                  const std::vector<double>& grid) {
  const double oracle = oracle_e_corr(problem);
  double d_min = problem.a(0, 0).real();
  double d_max = d_min;
  for (Eigen::Index i = 1; i < problem.dim(); ++i) {
    d_min = std::min(d_min, problem.a(i, i).real());
    d_max = std::max(d_max, problem.a(i, i).real());
  }
  const double lower = std::ldexp(1.0, -n_r) * d_max;

  std::vector<DminPoint> points;
  for (double dt : grid) {
    DminPoint pt;
    pt.d_tilde_min = dt;
    pt.in_window = dt > lower && dt <= d_min;
    if (dt <= lower) {
      pt.note = "below representability bound 2^-n_r * d_max";
      points.push_back(pt);
      continue;
    }
    try {
      const ScalingPlan plan = adapt_scaling(problem.a, n_r, dt);
      HHLConfig hcfg;
      hcfg.n_r = n_r;
      const QuantumCircuit circuit = build_hhl_circuit(problem, plan, hcfg);
      const HHLOutcome out = run_hhl(circuit, hcfg, problem, plan);
      pt.valid = true;
      pt.p1 = out.success_probability;
      pt.pfd = pfd(oracle, out.e_corr);
      pt.note = plan.warning;
    } catch (const std::exception& e) {
      pt.note = e.what();
    }
    points.push_back(pt);
  }
  return points;
}

std::vector<ResourceRow> resource_scan(const std::vector<int>& n_b_grid,
                                       int n_r, int n_e, std::uint64_t seed) {
  if (n_e < 1) throw std::invalid_argument("need at least one readout qubit");
  const double t = 2.0 * std::numbers::pi;
  const int r_base = static_cast<int>(std::ceil(t * t * std::ldexp(1.0, n_e + 1)));
  const long steps = static_cast<long>(r_base) * ((1L << n_e) - 1);
  const double dt = t / static_cast<double>(r_base);

  // One Trotter step: readout-controlled exchange evolution on (zeta, copy).
  int per_step_two_q = 0;
  {
    QuantumCircuit c;
    c.add_register("q", 3);
    Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero();
    swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
    const Eigen::Matrix4cd u = std::cos(dt) * Eigen::Matrix4cd::Identity() +
                               Complex(0.0, std::sin(dt)) * swap;
    c.append(make_unitary(block_of(u), {0, 1}, {{2, 1}}));
    per_step_two_q = metrics(decompose_to_native(c)).two_qubit_count;
  }
  int readout_two_q = 0;
  {
    QuantumCircuit c;
    c.add_register("q", n_e);
    for (int j = n_e - 1; j >= 0; --j) {
      for (int m = j + 1; m < n_e; ++m) {
        Eigen::Matrix2cd p = Eigen::Matrix2cd::Identity();
        p(1, 1) = std::polar(1.0, -std::numbers::pi * std::ldexp(1.0, -(m - j)));
        c.append(make_unitary(block_of(p), {j}, {{m, 1}}));
      }
      c.append(make_gate(GateKind::H, {j}));
    }
    readout_two_q = metrics(decompose_to_native(c)).two_qubit_count;
  }
  const long eqpe_two_q =
      steps * static_cast<long>(per_step_two_q) + readout_two_q;

  std::vector<ResourceRow> rows;
  for (int n_b : n_b_grid) {
    const ProblemInstance problem =
        make_random_spd_instance(1 << n_b, seed + static_cast<std::uint64_t>(n_b));
    const ScalingPlan plan = exact_scaling(problem.a, n_r);
    ResourceRow row;
    row.n_b = n_b;
    row.qpe_two_q =
        metrics(decompose_to_native(build_qpe_circuit(problem, plan, n_r)))
            .two_qubit_count;
    HHLConfig hcfg;
    hcfg.n_r = n_r;
    row.hhl_two_q =
        metrics(decompose_to_native(build_hhl_circuit(problem, plan, hcfg)))
            .two_qubit_count;
    row.qpe_eqpe_two_q = row.qpe_two_q + static_cast<int>(eqpe_two_q);
    row.ratio = row.hhl_two_q > 0
                    ? static_cast<double>(row.qpe_eqpe_two_q) / row.hhl_two_q
                    : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "label,variant,n_t,n_b,n_r,e_corr_oracle,depth,two_q,e_corr,e_diff,"
        "pfd,n_f,p1,overlap,compression_pct,ok,error\n";
  for (const ReportRow& r : rows) {
    os << r.label << ',' << r.variant << ',' << r.n_t << ',' << r.n_b << ','
       << r.n_r << ',' << r.e_corr_oracle << ',' << r.depth << ',' << r.two_q
       << ',' << r.e_corr << ',' << r.e_diff << ',' << r.pfd << ',' << r.n_f
       << ',' << r.success_probability << ',' << r.overlap << ','
       << r.compression_pct << ',' << (r.ok ? 1 : 0) << ',' << r.error << '\n';
  }
  return os.str();
}

std::string row_to_json(const ReportRow& row) {
  nlohmann::json j;
  j["label"] = row.label;
  j["variant"] = row.variant;
  j["n_t"] = row.n_t;
  j["n_b"] = row.n_b;
  j["n_r"] = row.n_r;
  j["e_corr_oracle"] = row.e_corr_oracle;
  j["depth"] = row.depth;
  j["two_q"] = row.two_q;
  j["e_corr"] = row.e_corr;
  j["e_diff"] = row.e_diff;
  j["pfd"] = row.pfd;
  j["n_f"] = row.n_f;
  j["success_probability"] = row.success_probability;
  j["overlap"] = row.overlap;
  j["compression_pct"] = row.compression_pct;
  j["ok"] = row.ok;
  if (!row.error.empty()) j["error"] = row.error;
  return j.dump(2);
}

std::string SweepReport::csv() const { return rows_to_csv(rows); }

std::string SweepReport::heatmap_csv() const {
  std::map<std::string, int> hhl_depth;
  for (const ReportRow& r : rows) {
    if (r.ok && r.variant == "hhl") hhl_depth[r.label] = r.depth;
  }
  std::ostringstream os;
  os << "label,variant,depth_compression_vs_hhl_pct,pfd\n";
  for (const ReportRow& r : rows) {
    if (!r.ok) continue;
    double comp = 0.0;
    const auto it = hhl_depth.find(r.label);
    if (it != hhl_depth.end() && it->second > 0) {
      comp = static_cast<double>(it->second - r.depth) / it->second * 100.0;
    }
    os << r.label << ',' << r.variant << ',' << comp << ',' << r.pfd << '\n';
  }
  return os.str();
}

}  // namespace qlsw
