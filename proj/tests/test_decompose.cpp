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

#include "qlsw/decompose.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include <doctest.h>

#include "test_helpers.hpp"

using namespace qlsw;

namespace {

Eigen::MatrixXcd gates_to_matrix(const std::vector<Gate>& gates,
                                 int num_qubits) {
  QuantumCircuit c;
  c.add_register("q", num_qubits);
  for (const Gate& g : gates) c.append(g);
  return circuit_unitary(c).entries;
}

bool all_native(const QuantumCircuit& c) {
  for (const Gate& g : c.gates) {
    if (!g.controls.empty()) return false;
    if (g.kind != GateKind::Rx && g.kind != GateKind::Ry &&
        g.kind != GateKind::Rz && g.kind != GateKind::Rxx) {
      return false;
    }
  }
  return true;
}

std::shared_ptr<const UnitaryBlock> block_of(Eigen::MatrixXcd m) {
  return std::make_shared<const UnitaryBlock>(
      UnitaryBlock::from_matrix(std::move(m)));
}

}  // namespace

TEST_CASE("zyz angles reconstruct arbitrary single-qubit unitaries") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Matrix2cd u = testing::random_unitary(2, rng);
    const EulerAngles e = zyz_angles(u);
    const Complex i(0.0, 1.0);
    Eigen::Matrix2cd rza, rzb, ry;
    rza << std::exp(-i * e.alpha / 2.0), 0, 0, std::exp(i * e.alpha / 2.0);
    rzb << std::exp(-i * e.beta / 2.0), 0, 0, std::exp(i * e.beta / 2.0);
    ry << std::cos(e.gamma / 2), -std::sin(e.gamma / 2), std::sin(e.gamma / 2),
        std::cos(e.gamma / 2);
    const Eigen::Matrix2cd rebuilt = std::exp(i * e.phase) * rzb * ry * rza;
    CHECK((rebuilt - u).norm() < 1e-9);
  }
}

TEST_CASE("native CX uses exactly one Rxx") {
  const std::vector<Gate> gates = native_cx(0, 1);
  int rxx = 0;
  for (const Gate& g : gates) {
    CHECK(g.controls.empty());
    if (g.kind == GateKind::Rxx) ++rxx;
  }
  CHECK(rxx == 1);
  Eigen::Matrix4cd cx = Eigen::Matrix4cd::Zero();
  cx(0, 0) = cx(2, 2) = 1;  // control = qubit 0 (LSB)
  cx(1, 3) = cx(3, 1) = 1;
  CHECK(testing::phase_distance(cx, gates_to_matrix(gates, 2)) < 1e-9);

  // Remapped operands.
  const std::vector<Gate> swapped = native_cx(1, 0);
  Eigen::Matrix4cd cx10 = Eigen::Matrix4cd::Zero();
  cx10(0, 0) = cx10(1, 1) = 1;
  cx10(2, 3) = cx10(3, 2) = 1;
  CHECK(testing::phase_distance(cx10, gates_to_matrix(swapped, 2)) < 1e-9);
}

TEST_CASE("kak handles random two-qubit unitaries with at most 3 Rxx") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Matrix4cd u = testing::random_unitary(4, rng);
    const std::vector<Gate> gates = kak_gates(u, 0, 1);
    int rxx = 0;
    for (const Gate& g : gates) {
      if (g.kind == GateKind::Rxx) ++rxx;
    }
    CHECK(rxx <= 3);
    CHECK(testing::phase_distance(u, gates_to_matrix(gates, 2)) < 1e-8);
  }
}

TEST_CASE("kak handles structured gates") {
  Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero();
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1;
  CHECK(testing::phase_distance(swap, gates_to_matrix(kak_gates(swap, 0, 1), 2)) <
        1e-8);
  const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
  CHECK(testing::phase_distance(id, gates_to_matrix(kak_gates(id, 0, 1), 2)) <
        1e-8);
}

TEST_CASE("multiplexed rotation matches its defining block structure") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (GateKind kind : {GateKind::Ry, GateKind::Rz}) {
    for (int k : {0, 1, 2, 3}) {
      std::vector<double> angles(std::size_t{1} << k);
      for (double& a : angles) a = ang(rng);
      // target qubit 0, controls 1..k
      std::vector<int> controls(static_cast<std::size_t>(k));
      for (int j = 0; j < k; ++j) controls[static_cast<std::size_t>(j)] = j + 1;
      const std::vector<Gate> gates =
          multiplexed_rotation(kind, angles, controls, 0);
      const Eigen::MatrixXcd got = gates_to_matrix(gates, k + 1);

      Eigen::MatrixXcd expect =
          Eigen::MatrixXcd::Zero(Eigen::Index{2} << k, Eigen::Index{2} << k);
      for (std::size_t p = 0; p < angles.size(); ++p) {
        const Gate rot = make_rotation(kind, angles[p], {0});
        const Eigen::Matrix2cd r = rot.matrix();
        const Eigen::Index base = static_cast<Eigen::Index>(p) << 1;
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) expect(base + a, base + b) = r(a, b);
        }
      }
      CHECK(testing::phase_distance(expect, got) < 1e-8);
    }
  }
}

TEST_CASE("diagonal synthesis is exact up to one global phase") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int n : {1, 2, 3}) {
    std::vector<double> phases(std::size_t{1} << n);
    for (double& p : phases) p = ang(rng);
    std::vector<int> qubits(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) qubits[static_cast<std::size_t>(j)] = j;
    const std::vector<Gate> gates = diagonal_gates(phases, qubits);
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(Eigen::Index{1} << n,
                                                     Eigen::Index{1} << n);
    for (std::size_t x = 0; x < phases.size(); ++x) {
      expect(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) =
          std::polar(1.0, phases[x]);
    }
    CHECK(testing::phase_distance(expect, gates_to_matrix(gates, n)) < 1e-8);
  }
}

TEST_CASE("multi-controlled single-qubit unitaries") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Matrix2cd u = testing::random_unitary(2, rng);
    const std::vector<ControlBit> controls = {{1, 1}, {2, 0}};
    const std::vector<Gate> gates = mc_unitary_gates(u, 0, controls);
    for (const Gate& g : gates) CHECK(g.controls.empty());

    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Identity(8, 8);
    // active pattern: qubit1=1, qubit2=0 -> indices 2,3
    expect(2, 2) = u(0, 0);
    expect(2, 3) = u(0, 1);
    expect(3, 2) = u(1, 0);
    expect(3, 3) = u(1, 1);
    CHECK(testing::phase_distance(expect, gates_to_matrix(gates, 3)) < 1e-8);
  }
}

TEST_CASE("decompose_to_native rewrites H to the standard Euler pair") {
  QuantumCircuit c;
  c.add_register("q", 1);
  c.append(make_gate(GateKind::H, {0}));
  const QuantumCircuit native = decompose_to_native(c);
  CHECK(all_native(native));
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  CHECK(testing::phase_distance(h, circuit_unitary(native).entries) < 1e-9);
}

TEST_CASE("decompose_to_native preserves semantics on random mixed circuits") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    QuantumCircuit c;
    c.add_register("q", n);
    const int gates = 3 + static_cast<int>(rng() % 5);
    for (int g = 0; g < gates; ++g) {
      const int q0 = static_cast<int>(rng() % n);
      int q1 = static_cast<int>(rng() % n);
      while (q1 == q0) q1 = static_cast<int>(rng() % n);
      switch (rng() % 7) {
        case 0:
          c.append(make_rotation(GateKind::Ry, ang(rng), {q0}, {{q1, 1}}));
          break;
        case 1:
          c.append(make_gate(GateKind::X, {q0}, {{q1, static_cast<int>(rng() % 2)}}));
          break;
        case 2:
          c.append(make_gate(GateKind::H, {q0}));
          break;
        case 3:
          c.append(make_gate(GateKind::Swap, {q0, q1}));
          break;
        case 4:
          c.append(make_unitary(block_of(testing::random_unitary(2, rng)), {q0}));
          break;
        case 5:
          c.append(
              make_unitary(block_of(testing::random_unitary(4, rng)), {q0, q1}));
          break;
        default:
          c.append(make_rotation(GateKind::Rz, ang(rng), {q0}));
          break;
      }
    }
    const QuantumCircuit native = decompose_to_native(c);
    CHECK(all_native(native));
    CHECK(testing::phase_distance(circuit_unitary(c).entries,
                                  circuit_unitary(native).entries) < 1e-8);
  }
}

TEST_CASE("decompose_to_native handles controlled opaque blocks") {
  std::mt19937_64 rng(31);
  QuantumCircuit c;
  c.add_register("q", 3);
  c.append(make_unitary(block_of(testing::random_unitary(4, rng)), {0, 2},
                        {{1, 1}}));
  const QuantumCircuit native = decompose_to_native(c);
  CHECK(all_native(native));
  CHECK(testing::phase_distance(circuit_unitary(c).entries,
                                circuit_unitary(native).entries) < 1e-8);
}
