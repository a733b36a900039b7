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

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qlsw/statevector.hpp"

namespace qlsw {

enum class GateKind { Rx, Ry, Rz, Rxx, X, H, Swap, Unitary };

bool is_rotation(GateKind kind);
const char* kind_name(GateKind kind);

struct Gate {
  GateKind kind;
  double angle = 0.0;                           // rotation kinds only
  std::vector<int> qubits;                      // ordered operands
  std::vector<ControlBit> controls;             // may be empty
  std::shared_ptr<const UnitaryBlock> block;    // Unitary kind only
  std::string tag;                              // free-form provenance label

  Gate inverse() const;
  /// Matrix over the operand qubits (controls not included).
  Eigen::MatrixXcd matrix() const;
};

Gate make_rotation(GateKind kind, double angle, std::vector<int> qubits,
                   std::vector<ControlBit> controls = {}, std::string tag = {});
Gate make_gate(GateKind kind, std::vector<int> qubits,
               std::vector<ControlBit> controls = {}, std::string tag = {});
Gate make_unitary(std::shared_ptr<const UnitaryBlock> block,
                  std::vector<int> qubits, std::vector<ControlBit> controls = {},
                  std::string tag = {});

struct Register {
  int start = 0;
  int size = 0;
  int operator[](int i) const { return start + i; }
  std::vector<int> all() const;
};

/// Ordered gate list over named, contiguous, disjoint registers.
struct QuantumCircuit {
  int num_qubits = 0;
  std::map<std::string, Register> registers;
  std::vector<Gate> gates;

  Register add_register(const std::string& name, int size);
  void append(Gate g);
  void append_all(const std::vector<Gate>& gs);
  QuantumCircuit inverse() const;
  /// Same registers, no gates.
  QuantumCircuit shell() const;
};

struct CircuitMetrics {
  int depth = 0;
  int two_qubit_count = 0;
  int gate_count = 0;
  int num_qubits = 0;
};

/// Greedy layering over the native set {Rx, Ry, Rz, Rxx}. Throws if the
/// circuit contains anything else (decompose first).
CircuitMetrics metrics(const QuantumCircuit& circuit);

/// Applies the gate list to `state` in order.
void simulate(const QuantumCircuit& circuit, Statevector& state);
Statevector simulate_from_zero(const QuantumCircuit& circuit);

inline constexpr int kDefaultUnitaryCap = 12;

/// Full 2^n x 2^n product of the gate matrices. Throws above the qubit cap.
UnitaryBlock circuit_unitary(const QuantumCircuit& circuit,
                             int qubit_cap = kDefaultUnitaryCap);

/// e^{i A t} for Hermitian A, synthesized by exact eigendecomposition.
UnitaryBlock evolution_unitary(const Eigen::MatrixXcd& a, double t);

/// Line-oriented text format: one gate per line,
///   KIND [angle] q0[,q1] [ctrl=qK:pol]...
/// Unitary gates are not representable and are rejected.
void write_circuit(std::ostream& os, const QuantumCircuit& circuit);
QuantumCircuit read_circuit(std::istream& is);
std::string circuit_to_string(const QuantumCircuit& circuit);
QuantumCircuit circuit_from_string(const std::string& text);

}  // namespace qlsw
