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
#include <vector>

#include "qlsw/circuit.hpp"
#include "qlsw/fixing.hpp"
#include "qlsw/problem.hpp"
#include "qlsw/scaling.hpp"

namespace qlsw {

enum class RunMode { exact, sampled };

struct HHLConfig {
  int n_r = 6;
  double c = -1.0;  // <= 0 means "take the scaling plan's c"
  RunMode mode = RunMode::exact;
  std::uint64_t shots = 1000;
  std::uint64_t seed = 0;
  bool compute_metrics = false;  // native decomposition is not free
};

struct HHLOutcome {
  double success_probability = 0.0;  // P(ancilla = 1)
  Statevector solution_state;        // normalized, over the state register
  double overlap = 0.0;              // |<b|x>|
  double norm_x = 0.0;
  double e_corr = 0.0;
  CircuitMetrics metrics;
};

/// Conditioned-rotation angle table: theta_0 = 0 and
/// theta_i = 2 asin(c 2^{n_r} / i). Requires c <= 2^{-n_r} so that every
/// arcsine argument stays at most 1; otherwise throws naming index 1.
std::vector<double> rotation_angles(int n_r, double c);

/// Exact amplitude encoding of a normalized vector onto `qubits` (bit j of
/// the amplitude index is qubits[j]): a tree of uniformly-controlled Ry
/// magnitudes followed by one diagonal phase gate. All gates tagged "prep".
std::vector<Gate> state_prep_gates(const Eigen::VectorXcd& amplitudes,
                                   const std::vector<int>& qubits);

/// State preparation plus forward phase estimation of sA with t = 2 pi.
/// Registers: "clock" (qubits 0..n_r-1, eigenvalue readout) and "state".
/// After running, clock qubit j holds bit n_r-1-j of round(s lambda 2^{n_r}).
QuantumCircuit build_qpe_circuit(const ProblemInstance& problem,
                                 const ScalingPlan& scaling, int n_r);

/// Full pipeline: |b> preparation, QPE, conditioned Ry multiplexer on the
/// ancilla, inverse QPE, then the destructive-overlap block against a second
/// |b> copy. Registers in order: "ancilla", "clock", "state", "hom".
/// A fixing plan removes gates of fixed-to-0 clock qubits and strips the
/// controls of fixed-to-1 ones.
QuantumCircuit build_hhl_circuit(const ProblemInstance& problem,
                                 const ScalingPlan& scaling,
                                 const HHLConfig& config,
                                 const FixingPlan* fixings = nullptr);

/// Executes the pipeline. Exact mode post-selects ancilla=1 analytically;
/// sampled mode estimates P(1) and the overlap from shot counts. Throws when
/// P(1) falls below 1e-14.
HHLOutcome run_hhl(const QuantumCircuit& circuit, const HHLConfig& config,
                   const ProblemInstance& problem, const ScalingPlan& scaling);

/// Destructive-overlap estimate of |<b|x>| from the CX + H circuit over the
/// joint register: sqrt(sum over outcomes of (-1)^{popcount(alpha AND beta)}
/// P(alpha beta)). Exact mode matches |inner_product| to 1e-10 and throws on
/// pre-clamp values below -1e-9; sampled mode clamps small negatives to 0
/// (reported through `clamped` when given).
double hom_overlap(const Statevector& x_state, const Statevector& b_state,
                   const HHLConfig& config, bool* clamped = nullptr);

/// E_corr = -norm_x * norm_b^2 * overlap.
double correlation_energy(double overlap, double norm_x, double norm_b);

/// ||x|| = sqrt(p1) / d_tilde_min.
double solution_norm(double p1, double d_tilde_min);

}  // namespace qlsw
