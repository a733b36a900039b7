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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlsw/decompose.hpp"
#include "qlsw/fixing.hpp"
#include "qlsw/hhl.hpp"
#include "qlsw/optimizer.hpp"
#include "qlsw/problem.hpp"
#include "qlsw/scaling.hpp"
#include "qlsw/workbench.hpp"

namespace {

using namespace qlsw;

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct CommonOpts {
  std::string instance;
  std::string variant = "hhl";
  int n_r = 6;
  double p_th = 0.8;
  std::string mode = "exact";
  std::uint64_t shots = 1000;
  int reps = 10;
  std::uint64_t seed = 0;
  bool optimize = false;
  std::string fixing = "classical";
  std::string out;
};

RunConfig to_config(const CommonOpts& o) {
  RunConfig rc;
  rc.variant = variant_from_string(o.variant);
  rc.n_r = o.n_r;
  rc.p_th = o.p_th;
  rc.mode = o.mode == "sampled" ? RunMode::sampled : RunMode::exact;
  rc.shots = o.shots;
  rc.repetitions = o.reps;
  rc.seed = o.seed;
  rc.optimize = o.optimize;
  rc.fixing = fix_method_from_string(o.fixing);
  return rc;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_instance = true) {
  auto* inst = cmd->add_option("--instance", o.instance, "problem JSON file");
  if (needs_instance) inst->required();
  cmd->add_option("--variant", o.variant,
                  "hhl|hhlite|perturbed|perturbedlite|adapt|adaptlite");
  cmd->add_option("--n-r", o.n_r, "clock register size");
  cmd->add_option("--p-th", o.p_th, "fixing probability threshold");
  cmd->add_option("--mode", o.mode, "exact|sampled");
  cmd->add_option("--shots", o.shots, "shots per sampled run");
  cmd->add_option("--reps", o.reps, "repetitions");
  cmd->add_option("--seed", o.seed, "base RNG seed");
  cmd->add_flag("--optimize", o.optimize, "run the native-gate optimizer");
  cmd->add_option("--fixing", o.fixing, "classical|quantum|lmr");
  cmd->add_option("--out", o.out, "output file (default stdout)");
}

int cmd_solve(const CommonOpts& o) {
  const ProblemInstance p = load_problem(o.instance);
  const ReportRow row = run_variant(p, to_config(o));
  write_out(o.out, row_to_json(row) + "\n");
  return 0;
}

int cmd_scale(const CommonOpts& o) {
  const ProblemInstance p = load_problem(o.instance);
  const RunConfig rc = to_config(o);
  const ScalingPlan plan = plan_for(p, rc);
  const ScalingReport rep = validate_scaling(p.a, plan, p.b);
  nlohmann::json j;
  j["strategy"] = strategy_name(plan.strategy);
  j["s"] = plan.s;
  j["c"] = plan.c;
  j["n_r"] = plan.n_r;
  j["d_tilde_min"] = plan.d_tilde_min;
  if (plan.lambda_est_min) j["lambda_est_min"] = *plan.lambda_est_min;
  if (plan.lambda_est_max) j["lambda_est_max"] = *plan.lambda_est_max;
  if (plan.kappa) j["kappa"] = *plan.kappa;
  if (!plan.warning.empty()) j["warning"] = plan.warning;
  j["scaled_eigenvalues"] = rep.scaled_eigenvalues;
  j["in_range"] = rep.in_range;
  j["max_rounding_error"] = rep.max_rounding_error;
  j["predicted_loss_pct"] = rep.predicted_loss_pct;
  write_out(o.out, j.dump(2) + "\n");
  return 0;
}

int cmd_fix(const CommonOpts& o) {
  const ProblemInstance p = load_problem(o.instance);
  const RunConfig rc = to_config(o);
  const ScalingPlan plan = plan_for(p, rc);
  const QuantumCircuit qpe = build_qpe_circuit(p, plan, rc.n_r);
  const std::vector<int> clocks = qpe.registers.at("clock").all();
  FixingPlan fp;
  switch (rc.fixing) {
    case FixMethod::classical:
      fp = classical_fix(simulate_from_zero(qpe), clocks, rc.p_th);
      break;
    case FixMethod::quantum:
      fp = quantum_fix(qpe, clocks, rc.p_th, rc.shots, rc.seed);
      break;
    case FixMethod::lmr:
      fp = lmr_fix_all([&] { return build_qpe_circuit(p, plan, rc.n_r); },
                       clocks, rc.lmr_readout_qubits, rc.p_th);
      break;
  }
  nlohmann::json j;
  j["n_r"] = fp.n_r;
  j["n_f"] = fp.n_f();
  j["p_th"] = fp.p_th;
  j["provenance"] = fp.provenance;
  nlohmann::json ds = nlohmann::json::array();
  for (const FixDecision& d : fp.decisions) {
    ds.push_back({{"fixed", d.fixed}, {"bit", d.bit},
                  {"probability", d.probability}});
  }
  j["decisions"] = ds;
  write_out(o.out, j.dump(2) + "\n");
  return 0;
}

int cmd_optimize(const CommonOpts& o, const std::string& circuit_file,
                 const std::string& circuit_out) {
  QuantumCircuit native;
  if (!circuit_file.empty()) {
    std::ifstream in(circuit_file);
    if (!in) throw std::runtime_error("cannot open circuit file: " + circuit_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    native = decompose_to_native(circuit_from_string(buf.str()));
  } else if (!o.instance.empty()) {
    const ProblemInstance p = load_problem(o.instance);
    const RunConfig rc = to_config(o);
    const ScalingPlan plan = plan_for(p, rc);
    HHLConfig hcfg;
    hcfg.n_r = rc.n_r;
    native = decompose_to_native(build_hhl_circuit(p, plan, hcfg));
  } else {
    throw std::runtime_error("optimize needs --circuit or --instance");
  }
  const OptimizeResult res = optimize(native, PassPipeline::standard());
  if (!circuit_out.empty()) {
    write_out(circuit_out, circuit_to_string(res.circuit));
  }
  nlohmann::json j;
  j["depth_in"] = res.before.depth;
  j["depth_out"] = res.after.depth;
  j["two_q_in"] = res.before.two_qubit_count;
  j["two_q_out"] = res.after.two_qubit_count;
  j["gate_count_in"] = res.before.gate_count;
  j["gate_count_out"] = res.after.gate_count;
  j["compression_pct"] = res.compression_pct;
  j["fidelity"] = res.fidelity;
  j["phase"] = res.phase;
  j["rounds"] = res.rounds;
  write_out(o.out, j.dump(2) + "\n");
  return 0;
}

int cmd_sweep(const CommonOpts& o, const std::vector<std::string>& files,
              const std::vector<std::string>& variants,
              const std::string& heatmap_out) {
  std::vector<ProblemInstance> instances;
  for (const std::string& f : files) instances.push_back(load_problem(f));
  std::vector<RunConfig> configs;
  for (const std::string& v : variants) {
    CommonOpts ov = o;
    ov.variant = v;
    configs.push_back(to_config(ov));
  }
  const SweepReport rep = run_sweep(instances, configs);
  write_out(o.out, rep.csv());
  if (!heatmap_out.empty()) write_out(heatmap_out, rep.heatmap_csv());
  for (const ReportRow& r : rep.rows) {
    if (!r.ok) {
      std::cerr << "row failed: " << r.label << " " << r.variant << ": "
                << r.error << "\n";
      return 1;
    }
  }
  return 0;
}

int cmd_shots(const CommonOpts& o, const std::vector<std::uint64_t>& grid) {
  const ProblemInstance p = load_problem(o.instance);
  const auto stats = shot_convergence(p, to_config(o), grid, o.reps);
  std::ostringstream os;
  os << "shots,mean_e_corr,stddev_e_corr\n";
  for (const ShotStat& s : stats) {
    os << s.shots << ',' << s.mean_e_corr << ',' << s.stddev_e_corr << '\n';
  }
  write_out(o.out, os.str());
  return 0;
}

int cmd_dmin(const CommonOpts& o, const std::vector<double>& grid) {
  const ProblemInstance p = load_problem(o.instance);
  const auto points = dmin_sweep(p, o.n_r, grid);
  std::ostringstream os;
  os << "d_tilde_min,valid,in_window,pfd,p1,note\n";
  for (const DminPoint& pt : points) {
    os << pt.d_tilde_min << ',' << (pt.valid ? 1 : 0) << ','
       << (pt.in_window ? 1 : 0) << ',' << pt.pfd << ',' << pt.p1 << ','
       << pt.note << '\n';
  }
  write_out(o.out, os.str());
  return 0;
}

int cmd_resources(const CommonOpts& o, const std::vector<int>& n_b_grid,
                  int n_e) {
  const auto rows = resource_scan(n_b_grid, o.n_r, n_e, o.seed + 7);
  std::ostringstream os;
  os << "n_b,qpe_two_q,hhl_two_q,qpe_eqpe_two_q,ratio\n";
  for (const ResourceRow& r : rows) {
    os << r.n_b << ',' << r.qpe_two_q << ',' << r.hhl_two_q << ','
       << r.qpe_eqpe_two_q << ',' << r.ratio << '\n';
  }
  write_out(o.out, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum linear-solver workbench"};
  app.require_subcommand(1);

  CommonOpts o;
  std::vector<std::string> sweep_files;
  std::vector<std::string> sweep_variants = {"hhl",       "hhlite",
                                             "perturbed", "perturbedlite",
                                             "adapt",     "adaptlite"};
  std::string heatmap_out;
  std::vector<std::uint64_t> shot_grid = {100, 300, 1000, 3000, 10000};
  std::vector<double> dmin_grid;
  std::vector<int> n_b_grid = {1, 2, 3, 4};
  int n_e = 3;

  auto* solve = app.add_subcommand("solve", "run one variant on one instance");
  add_common(solve, o);
  auto* scale = app.add_subcommand("scale", "emit the scaling plan and report");
  add_common(scale, o);
  auto* fix = app.add_subcommand("fix", "emit a fixing plan as JSON");
  add_common(fix, o);
  std::string circuit_file;
  std::string circuit_out;
  auto* opt = app.add_subcommand("optimize", "optimize the native circuit");
  add_common(opt, o, false);
  opt->add_option("--circuit", circuit_file, "circuit text file to optimize");
  opt->add_option("--emit-circuit", circuit_out,
                  "write the optimized circuit text here");
  auto* sweep = app.add_subcommand("sweep", "instances x variants report");
  add_common(sweep, o, false);
  sweep->add_option("--instances", sweep_files, "problem JSON files")
      ->required();
  sweep->add_option("--variants", sweep_variants, "variant subset");
  sweep->add_option("--heatmap-out", heatmap_out, "heatmap CSV file");
  auto* shots = app.add_subcommand("shots", "shot-convergence study");
  add_common(shots, o);
  shots->add_option("--grid", shot_grid, "shot counts");
  auto* dmin = app.add_subcommand("dmin-sweep", "d_tilde_min sweep");
  add_common(dmin, o);
  dmin->add_option("--grid", dmin_grid, "d_tilde_min values")->required();
  auto* res = app.add_subcommand("resources", "two-qubit cost scan");
  add_common(res, o, false);
  res->add_option("--n-b-grid", n_b_grid, "state register sizes");
  res->add_option("--n-e", n_e, "EQPE readout qubits");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(o);
    if (scale->parsed()) return cmd_scale(o);
    if (fix->parsed()) return cmd_fix(o);
    if (opt->parsed()) return cmd_optimize(o, circuit_file, circuit_out);
    if (sweep->parsed())
      return cmd_sweep(o, sweep_files, sweep_variants, heatmap_out);
    if (shots->parsed()) return cmd_shots(o, shot_grid);
    if (dmin->parsed()) return cmd_dmin(o, dmin_grid);
    if (res->parsed()) return cmd_resources(o, n_b_grid, n_e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
