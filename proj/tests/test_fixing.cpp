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

#include "qlsw/fixing.hpp"

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "qlsw/decompose.hpp"
#include "qlsw/hhl.hpp"
#include "qlsw/problem.hpp"
#include "qlsw/scaling.hpp"
#include "test_helpers.hpp"

using namespace qlsw;

namespace {

QuantumCircuit one_qubit_ry(double theta) {
  QuantumCircuit c;
  c.add_register("clock", 1);
  if (theta != 0.0) c.append(make_rotation(GateKind::Ry, theta, {0}));
  return c;
}

QuantumCircuit fixture_2x2_qpe(int n_r) {
  Eigen::MatrixXcd a(2, 2);
  a << 1.5, 0.1, 0.1, 0.75;
  Eigen::VectorXcd b(2);
  b << 0.0, 1.0;
  const ProblemInstance p = make_problem("fixture", a, b);
  const ScalingPlan plan = adapt_scaling(p.a, n_r, {});
  return build_qpe_circuit(p, plan, n_r);
}

}  // namespace

TEST_CASE("classical fixing on product and uniform states") {
  const Statevector basis = init_basis_state(3, 0b010);
  const FixingPlan plan = classical_fix(basis, {0, 1, 2}, 0.8);
  CHECK(plan.n_f() == 3);
  CHECK(plan.decisions[0].bit == 0);
  CHECK(plan.decisions[1].bit == 1);
  CHECK(plan.decisions[2].bit == 0);
  CHECK(plan.decisions[1].probability == doctest::Approx(1.0));
  CHECK(plan.provenance == "classical");

  QuantumCircuit unif;
  unif.add_register("clock", 3);
  for (int q = 0; q < 3; ++q) unif.append(make_gate(GateKind::H, {q}));
  const FixingPlan none =
      classical_fix(simulate_from_zero(unif), {0, 1, 2}, 0.8);
  CHECK(none.n_f() == 0);
}

TEST_CASE("classical fixing decisions survive a conditioned-marginal audit") {
  const QuantumCircuit qpe = fixture_2x2_qpe(6);
  const Statevector state = simulate_from_zero(qpe);
  const std::vector<int> clocks = qpe.registers.at("clock").all();
  const double p_th = 0.8;
  const FixingPlan plan = classical_fix(state, clocks, p_th);
  CHECK(plan.n_f() >= 1);
  for (std::size_t j = 0; j < clocks.size(); ++j) {
    if (!plan.decisions[j].fixed) continue;
    std::vector<ControlBit> cond;
    for (std::size_t m = 0; m < clocks.size(); ++m) {
      if (m != j && plan.decisions[m].fixed) {
        cond.push_back({clocks[m], plan.decisions[m].bit});
      }
    }
    const auto marg = marginal_distribution(state, {clocks[j]}, cond);
    double p0 = 0.0, p1 = 0.0;
    for (const auto& [k, p] : marg) (k ? p1 : p0) = p;
    const int bit = p1 > p0 ? 1 : 0;
    CHECK(bit == plan.decisions[j].bit);
    CHECK(std::max(p0, p1) >= p_th - 1e-9);
  }
}

TEST_CASE("quantum fixing matches the classical plan on definite states") {
  QuantumCircuit c;
  c.add_register("clock", 3);
  c.append(make_gate(GateKind::X, {1}));
  const FixingPlan q = quantum_fix(c, {0, 1, 2}, 0.8, 2000, 5);
  const FixingPlan cl = classical_fix(simulate_from_zero(c), {0, 1, 2}, 0.8);
  REQUIRE(q.n_f() == cl.n_f());
  for (int j = 0; j < 3; ++j) {
    CHECK(q.decisions[static_cast<std::size_t>(j)].bit ==
          cl.decisions[static_cast<std::size_t>(j)].bit);
  }
  CHECK(q.provenance == "quantum");

  // GHZ: both single-qubit marginals are 50/50, nothing may be fixed.
  QuantumCircuit ghz;
  ghz.add_register("clock", 3);
  ghz.append(make_gate(GateKind::H, {0}));
  ghz.append(make_gate(GateKind::X, {1}, {{0, 1}}));
  ghz.append(make_gate(GateKind::X, {2}, {{1, 1}}));
  const FixingPlan g = quantum_fix(ghz, {0, 1, 2}, 0.8, 4000, 5);
  CHECK(g.n_f() == 0);

  // Same seed, same plan.
  const FixingPlan q2 = quantum_fix(c, {0, 1, 2}, 0.8, 2000, 5);
  for (int j = 0; j < 3; ++j) {
    CHECK(q2.decisions[static_cast<std::size_t>(j)].probability ==
          q.decisions[static_cast<std::size_t>(j)].probability);
  }

  CHECK_THROWS(quantum_fix(c, {0, 1, 2}, 0.8, 0, 5));
}

TEST_CASE("forced fixing nests and ignores the threshold") {
  const QuantumCircuit qpe = fixture_2x2_qpe(4);
  const Statevector state = simulate_from_zero(qpe);
  const std::vector<int> clocks = qpe.registers.at("clock").all();

  std::vector<FixingPlan> plans;
  for (int n_f = 0; n_f <= 4; ++n_f) {
    plans.push_back(forced_fix(state, clocks, n_f));
    CHECK(plans.back().n_f() == n_f);
  }
  for (std::size_t k = 1; k < plans.size(); ++k) {
    for (std::size_t j = 0; j < clocks.size(); ++j) {
      if (plans[k - 1].decisions[j].fixed) {
        CHECK(plans[k].decisions[j].fixed);
        CHECK(plans[k].decisions[j].bit == plans[k - 1].decisions[j].bit);
      }
    }
  }
  CHECK_THROWS(forced_fix(state, clocks, 5));
  CHECK_THROWS(forced_fix(state, clocks, -1));
}

TEST_CASE("exchange-evolution readout recovers Z populations") {
  const double p_th = 0.8;
  const int n_e = 3;

  // Deterministic |0>: the wrapped bin 0 resolves through the copy state.
  {
    const LmrResult r =
        lmr_fix([] { return one_qubit_ry(0.0); }, 0, n_e, 0.0, p_th);
    CHECK(r.p1 == doctest::Approx(1.0));
    CHECK(r.fixed);
    CHECK(r.bit == 0);
    CHECK(r.trotter_steps > 0);
  }
  // Deterministic |1>.
  {
    const LmrResult r =
        lmr_fix([] { return one_qubit_ry(std::numbers::pi); }, 0, n_e, 0.0,
                p_th);
    CHECK(r.p1 == doctest::Approx(0.0));
    CHECK(r.fixed);
    CHECK(r.bit == 1);
  }
  // Populations 7/8 and 1/8 sit exactly on the 3-bit readout grid.
  {
    const double theta = 2.0 * std::acos(std::sqrt(7.0 / 8.0));
    const LmrResult r =
        lmr_fix([theta] { return one_qubit_ry(theta); }, 0, n_e, 0.0, p_th);
    CHECK(r.p1 == doctest::Approx(7.0 / 8.0));
    CHECK(r.fixed);
    CHECK(r.bit == 0);
  }
  // Maximally mixed marginal: no dominant outcome, nothing fixed.
  {
    const LmrResult r = lmr_fix(
        [] { return one_qubit_ry(std::numbers::pi / 2.0); }, 0, n_e, 0.0,
        p_th);
    CHECK(r.p1 == doctest::Approx(0.5));
    CHECK(!r.fixed);
  }

  CHECK_THROWS_WITH_AS(
      lmr_fix([] { return one_qubit_ry(0.0); }, 0, n_e, 0.5, p_th),
      doctest::Contains("Trotter"), std::invalid_argument);
  CHECK_THROWS(lmr_fix([] { return one_qubit_ry(0.0); }, 0, 0, 0.0, p_th));
}

TEST_CASE("full LMR plans mirror the per-qubit readouts") {
  QuantumCircuit c;
  c.add_register("clock", 2);
  c.append(make_gate(GateKind::X, {1}));
  const FixingPlan plan = lmr_fix_all([&c] { return c; }, {0, 1}, 3, 0.8);
  CHECK(plan.n_f() == 2);
  CHECK(plan.decisions[0].bit == 0);
  CHECK(plan.decisions[1].bit == 1);
  CHECK(plan.decisions[0].probability == doctest::Approx(1.0));
  CHECK(plan.decisions[1].probability == doctest::Approx(1.0));
  CHECK(plan.provenance == "lmr");
}

TEST_CASE("certain fixes shrink the circuit without moving the energy") {
  // Dyadic diagonal: the post-QPE clock is deterministic, so every clock
  // qubit is fixable at probability one.
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = 7.0 / 8.0;
  a(1, 1) = 3.0 / 8.0;
  Eigen::VectorXcd b(2);
  b << 1.0, 0.0;
  const ProblemInstance p = make_problem("dyadic", a, b);
  const ScalingPlan plan = exact_scaling(a, 3);

  const QuantumCircuit qpe = build_qpe_circuit(p, plan, 3);
  const FixingPlan fix = classical_fix(simulate_from_zero(qpe),
                                       qpe.registers.at("clock").all(), 0.8);
  REQUIRE(fix.n_f() == 3);

  HHLConfig cfg;
  cfg.n_r = 3;
  const QuantumCircuit full = build_hhl_circuit(p, plan, cfg);
  const QuantumCircuit lite = build_hhl_circuit(p, plan, cfg, &fix);
  CHECK(lite.gates.size() < full.gates.size());

  const HHLOutcome out_full = run_hhl(full, cfg, p, plan);
  const HHLOutcome out_lite = run_hhl(lite, cfg, p, plan);
  CHECK(out_lite.e_corr == doctest::Approx(out_full.e_corr).epsilon(1e-9));

  const CircuitMetrics mf = metrics(decompose_to_native(full));
  const CircuitMetrics ml = metrics(decompose_to_native(lite));
  CHECK(ml.two_qubit_count < mf.two_qubit_count);

  const FixingReport rep = fixing_report(fix, mf, ml);
  CHECK(rep.n_f == 3);
  CHECK(rep.depth_compression_pct > 0.0);
  CHECK(rep.depth_compression_pct ==
        doctest::Approx(std::abs(ml.depth - mf.depth) /
                        static_cast<double>(mf.depth) * 100.0));
}

TEST_CASE("fixing report handles empty baselines") {
  FixingPlan plan;
  plan.n_r = 2;
  plan.decisions.assign(2, {});
  CircuitMetrics zero;
  const FixingReport rep = fixing_report(plan, zero, zero);
  CHECK(rep.n_f == 0);
  CHECK(rep.depth_compression_pct == doctest::Approx(0.0));
}
