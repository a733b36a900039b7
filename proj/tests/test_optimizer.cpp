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

#include "qlsw/optimizer.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "qlsw/decompose.hpp"
#include "qlsw/hhl.hpp"
#include "qlsw/problem.hpp"
#include "qlsw/scaling.hpp"
#include "test_helpers.hpp"

using namespace qlsw;

namespace {

QuantumCircuit random_native_circuit(int num_qubits, int gates,
                                     std::mt19937_64& rng) {
  QuantumCircuit c;
  c.add_register("q", num_qubits);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int g = 0; g < gates; ++g) {
    const int pick = static_cast<int>(rng() % 4);
    const int q0 = static_cast<int>(rng() % num_qubits);
    if (pick == 3 && num_qubits > 1) {
      int q1 = static_cast<int>(rng() % num_qubits);
      while (q1 == q0) q1 = static_cast<int>(rng() % num_qubits);
      c.append(make_rotation(GateKind::Rxx, ang(rng), {q0, q1}));
    } else {
      const GateKind k = pick == 0   ? GateKind::Rx
                         : pick == 1 ? GateKind::Ry
                                     : GateKind::Rz;
      c.append(make_rotation(k, ang(rng), {q0}));
    }
  }
  return c;
}

QuantumCircuit fixture_2x2_qpe() {
  Eigen::MatrixXcd a(2, 2);
  a << 1.5, 0.1, 0.1, 0.75;
  Eigen::VectorXcd b(2);
  b << 0.0, 1.0;
  const ProblemInstance p = make_problem("fixture", a, b);
  const ScalingPlan plan = adapt_scaling(p.a, 3, {});
  return decompose_to_native(build_qpe_circuit(p, plan, 3));
}

}  // namespace

TEST_CASE("inverse pairs cancel") {
  QuantumCircuit c;
  c.add_register("q", 1);
  c.append(make_rotation(GateKind::Rx, 0.8, {0}));
  c.append(make_rotation(GateKind::Rx, -0.8, {0}));
  const QuantumCircuit out = run_pass(c, PassId::cancel_inverse_pairs);
  CHECK(out.gates.empty());
}

TEST_CASE("adjacent rotations merge") {
  QuantumCircuit c;
  c.add_register("q", 1);
  c.append(make_rotation(GateKind::Rz, 0.3, {0}));
  c.append(make_rotation(GateKind::Rz, 0.5, {0}));
  const QuantumCircuit out = run_pass(c, PassId::merge_rotations);
  REQUIRE(out.gates.size() == 1);
  CHECK(out.gates[0].angle == doctest::Approx(0.8));
}

TEST_CASE("pipeline rejects adjacent duplicate passes") {
  CHECK_THROWS(PassPipeline::make(
      {PassId::merge_rotations, PassId::merge_rotations}));
  CHECK_NOTHROW(PassPipeline::make({PassId::merge_rotations,
                                    PassId::cancel_inverse_pairs,
                                    PassId::merge_rotations}));
}

TEST_CASE("each pass preserves the unitary on random circuits") {
  std::mt19937_64 rng(41);
  for (PassId id : {PassId::cancel_inverse_pairs, PassId::merge_rotations,
                    PassId::commute_and_cancel, PassId::peephole_2q_resynthesis}) {
    for (int trial = 0; trial < 100; ++trial) {
      const QuantumCircuit c = random_native_circuit(3, 12, rng);
      const QuantumCircuit out = run_pass(c, id);
      CHECK(testing::phase_distance(circuit_unitary(c).entries,
                                    circuit_unitary(out).entries) < 1e-8);
    }
  }
}

TEST_CASE("optimize compresses a QPE circuit and verifies itself") {
  const QuantumCircuit qpe = fixture_2x2_qpe();
  const OptimizeResult res = optimize(qpe, PassPipeline::standard());
  CHECK(res.after.depth < res.before.depth);
  CHECK(res.compression_pct > 0.0);
  const double phi = verify_equivalence(qpe, res.circuit);
  CHECK(phi >= 0.0);
  CHECK(phi < 2.0 * std::numbers::pi);

  // Idempotence at the fixed point.
  const OptimizeResult again = optimize(res.circuit, PassPipeline::standard());
  CHECK(again.after.depth == res.after.depth);
  CHECK(again.after.gate_count == res.after.gate_count);
}

TEST_CASE("optimize never increases depth on random circuits") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 15; ++trial) {
    const QuantumCircuit c = random_native_circuit(4, 30, rng);
    const OptimizeResult res = optimize(c, PassPipeline::standard());
    CHECK(res.after.depth <= res.before.depth);
    CHECK(res.compression_pct >= 0.0);
  }
}

TEST_CASE("verify_equivalence reports phases and rejects non-equivalence") {
  std::mt19937_64 rng(47);
  const QuantumCircuit c = random_native_circuit(2, 10, rng);
  CHECK(verify_equivalence(c, c) == doctest::Approx(0.0));

  // Rz(2pi) is -I on one qubit: a pure global phase of pi.
  QuantumCircuit shifted = c;
  shifted.append(make_rotation(GateKind::Rz, 2.0 * std::numbers::pi, {0}));
  CHECK(verify_equivalence(c, shifted) == doctest::Approx(std::numbers::pi));

  QuantumCircuit wrong = c;
  wrong.append(make_rotation(GateKind::Ry, 0.7, {1}));
  CHECK_THROWS(verify_equivalence(c, wrong));
}

TEST_CASE("classical fidelity") {
  std::map<std::uint64_t, double> u = {{0, 0.25}, {1, 0.25}, {2, 0.25}, {3, 0.25}};
  CHECK(classical_fidelity(u, u) == doctest::Approx(1.0));
  std::map<std::uint64_t, double> p = {{0, 1.0}};
  std::map<std::uint64_t, double> q = {{1, 1.0}};
  CHECK(classical_fidelity(p, q) == doctest::Approx(0.0));
  std::map<std::uint64_t, double> bad = {{0, 0.5}};
  CHECK_THROWS(classical_fidelity(p, bad));
}

TEST_CASE("depth compression arithmetic") {
  CHECK(depth_compression(100, 100) == doctest::Approx(0.0));
  CHECK(depth_compression(100, 50) == doctest::Approx(50.0));
  CHECK(depth_compression(2452, 635) == doctest::Approx(74.1).epsilon(1e-3));
  CHECK_THROWS(depth_compression(0, 5));
}

TEST_CASE("pipeline order search returns a working pipeline") {
  const QuantumCircuit qpe = fixture_2x2_qpe();
  const PassPipeline best = pipeline_order_search(qpe);
  CHECK(best.passes.size() == 4);
  const OptimizeResult res = optimize(qpe, best);
  const OptimizeResult base = optimize(qpe, PassPipeline::standard());
  CHECK(res.after.depth <= base.after.depth);
}
