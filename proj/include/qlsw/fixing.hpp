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
#include <functional>
#include <string>
#include <vector>

#include "qlsw/circuit.hpp"
#include "qlsw/statevector.hpp"

namespace qlsw {

struct FixDecision {
  bool fixed = false;
  int bit = 0;
  double probability = 0.0;  // dominant probability that justified the fix
};

struct FixingPlan {
  int n_r = 0;
  std::vector<FixDecision> decisions;  // one per clock qubit
  double p_th = 0.8;
  std::string provenance;  // classical | quantum | lmr | forced

  int n_f() const;
};

/// Recursive planner on the exact post-QPE state: repeatedly fix the largest
/// dominant single-qubit outcome (conditioned on earlier fixes) that clears
/// p_th; ties go to the lowest qubit index.
FixingPlan classical_fix(const Statevector& qpe_state,
                         const std::vector<int>& clock_qubits, double p_th);

/// Shot-based planner: one independent single-qubit measurement campaign per
/// clock qubit, no conditioning, all decisions simultaneous.
FixingPlan quantum_fix(const QuantumCircuit& qpe_circuit,
                       const std::vector<int>& clock_qubits, double p_th,
                       std::uint64_t shots, std::uint64_t seed);

struct LmrResult {
  double p1 = 0.0;  // estimated <0|rho|0> of the clock qubit
  bool fixed = false;
  int bit = 0;
  int trotter_steps = 0;
};

/// Phase-estimation readout of one clock qubit's Z-basis population via
/// Trotterized exchange evolution against fresh copies of its diagonalized
/// density matrix. delta_t <= 0 selects the default budget
/// r = ceil(t^2 / 2^{-(n_e+1)}) with t = 2*pi.
LmrResult lmr_fix(const std::function<QuantumCircuit()>& qpe_builder,
                  int clock_index, int n_e, double delta_t, double p_th);

/// Builds a full plan by running the LMR readout once per clock qubit.
FixingPlan lmr_fix_all(const std::function<QuantumCircuit()>& qpe_builder,
                       const std::vector<int>& clock_qubits, int n_e,
                       double p_th);

/// Plan fixing the first n_f clock qubits to their dominant exact outcomes
/// regardless of p_th (depth-sweep experiments).
FixingPlan forced_fix(const Statevector& qpe_state,
                      const std::vector<int>& clock_qubits, int n_f);

struct FixingReport {
  int n_f = 0;
  double depth_compression_pct = 0.0;
  double two_q_reduction_pct = 0.0;
};

FixingReport fixing_report(const FixingPlan& plan,
                           const CircuitMetrics& unfixed,
                           const CircuitMetrics& fixed);

}  // namespace qlsw
