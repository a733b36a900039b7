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

#include <vector>

#include "qlsw/circuit.hpp"

namespace qlsw {

/// u = e^{i phase} Rz(beta) Ry(gamma) Rz(alpha), with Rz(alpha) applied first.
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double phase = 0.0;
};

EulerAngles zyz_angles(const Eigen::Matrix2cd& u);

/// CX(control, target) over the native set, exact up to global phase.
std::vector<Gate> native_cx(int control, int target);

/// Uniformly controlled Ry/Rz: branch with control pattern i (bit j of i on
/// controls[j]) rotates `target` by angles[i]. Exact (no phase correction
/// needed for these two axes). controls may be empty.
std::vector<Gate> multiplexed_rotation(GateKind kind,
                                       const std::vector<double>& angles,
                                       const std::vector<int>& controls,
                                       int target);

/// diag(e^{i phases[x]}) over the listed qubits (bit j of x on qubits[j]),
/// exact up to one global phase.
std::vector<Gate> diagonal_gates(const std::vector<double>& phases,
                                 const std::vector<int>& qubits);

/// Arbitrary 2-qubit unitary via Cartan decomposition: at most 3 Rxx
/// interactions plus single-qubit rotations. `u` is indexed with q0 as the
/// least significant bit. Equal to u up to global phase within 1e-8.
std::vector<Gate> kak_gates(const Eigen::Matrix4cd& u, int q0, int q1);

/// Single-qubit unitary with arbitrary controls, exact up to global phase.
std::vector<Gate> mc_unitary_gates(const Eigen::Matrix2cd& u, int target,
                                   const std::vector<ControlBit>& controls);

/// Rewrites everything to uncontrolled {Rx, Ry, Rz, Rxx}. Runs of controlled
/// Ry/Rz rotations sharing a target and control set are fused into one
/// multiplexer before synthesis.
QuantumCircuit decompose_to_native(const QuantumCircuit& circuit);

}  // namespace qlsw
