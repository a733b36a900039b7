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
#include <map>
#include <string>
#include <vector>

#include "qlsw/circuit.hpp"

namespace qlsw {

enum class PassId {
  cancel_inverse_pairs,
  merge_rotations,
  commute_and_cancel,
  peephole_2q_resynthesis,
};

const char* pass_name(PassId id);

struct PassPipeline {
  std::vector<PassId> passes;
  bool repeat_until_fixed_point = true;

  /// Rejects two identical passes in adjacent positions.
  static PassPipeline make(std::vector<PassId> passes,
                           bool repeat_until_fixed_point = true);
  static PassPipeline standard();
};

/// Applies one pass; pure transformation over native circuits.
QuantumCircuit run_pass(const QuantumCircuit& circuit, PassId id);

struct OptimizeResult {
  QuantumCircuit circuit;
  CircuitMetrics before;
  CircuitMetrics after;
  double compression_pct = 0.0;
  double fidelity = 1.0;      // 1.0 when verified by the unitary check
  double phase = 0.0;         // global phase from verify_equivalence
  int rounds = 0;
};

inline constexpr int kMaxFixedPointRounds = 20;

/// Runs the pipeline to a fixed point (capped), then verifies the result:
/// identity-up-to-phase on <= kDefaultUnitaryCap qubits, classical fidelity
/// on 5 random basis states above the cap. Throws on verification failure.
OptimizeResult optimize(const QuantumCircuit& circuit,
                        const PassPipeline& pipeline);

/// Returns phi in [0, 2pi) with ||U_orig U_opt^dag - e^{i phi} I||_F < 1e-8;
/// throws (reporting the residual) otherwise.
double verify_equivalence(const QuantumCircuit& original,
                          const QuantumCircuit& optimized);

/// Bhattacharyya overlap sum_g sqrt(p(g) q(g)); 1 iff p = q.
double classical_fidelity(const std::map<std::uint64_t, double>& p,
                          const std::map<std::uint64_t, double>& q);

double depth_compression(int d_in, int d_out);

/// Tries every permutation of the four passes and returns the pipeline with
/// the smallest final depth.
PassPipeline pipeline_order_search(const QuantumCircuit& circuit);

}  // namespace qlsw
