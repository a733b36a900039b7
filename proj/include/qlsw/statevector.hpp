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

#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qlsw {

using Complex = std::complex<double>;

/// Global qubit-ordering convention: little-endian. Qubit q holds bit q of
/// the basis index, i.e. basis index = sum_q bit(q) * 2^q. All bitstring
/// keys returned by marginal/sampling functions follow the same rule: bit j
/// of the key is the outcome of the j-th queried qubit.
inline constexpr double kAmplitudeTol = 1e-10;
inline constexpr double kEmptyBranchTol = 1e-14;

/// Dense amplitude vector over `num_qubits` qubits.
struct Statevector {
  int num_qubits = 0;
  Eigen::VectorXcd amps;

  std::uint64_t dim() const { return std::uint64_t{1} << num_qubits; }
  double norm() const { return amps.norm(); }
};

/// Dense unitary over a power-of-two dimension, validated on construction.
struct UnitaryBlock {
  Eigen::MatrixXcd entries;

  int num_qubits() const;
  UnitaryBlock adjoint() const;

  /// Checks squareness, power-of-two dimension and U U^dag = I (Frobenius
  /// norm within kAmplitudeTol).
  static UnitaryBlock from_matrix(Eigen::MatrixXcd m);
};

/// A control condition: gate is active when `qubit` reads `value`.
struct ControlBit {
  int qubit;
  int value;  // 0 or 1
};

Statevector init_basis_state(int num_qubits, std::uint64_t basis_index);

/// Applies `block` to `targets` (bit j of the block's basis index is
/// targets[j]), restricted to components where every control matches.
void apply_unitary(Statevector& state, const Eigen::MatrixXcd& block,
                   const std::vector<int>& targets,
                   const std::vector<ControlBit>& controls = {});

/// Probability distribution of the queried qubits, optionally conditioned on
/// fixed outcomes of other qubits. Throws if the conditioning event has
/// probability below kEmptyBranchTol.
std::map<std::uint64_t, double> marginal_distribution(
    const Statevector& state, const std::vector<int>& qubits,
    const std::vector<ControlBit>& conditioned_on = {});

/// Seeded multinomial sampling from the exact marginal of `qubits`.
/// Deterministic for a fixed seed (inverse-CDF over a mt19937_64 stream).
std::map<std::uint64_t, std::uint64_t> sample_counts(
    const Statevector& state, const std::vector<int>& qubits,
    std::uint64_t shots, std::uint64_t seed);

/// Projects onto qubit==bit and renormalizes. Returns the collapsed state
/// and the branch probability. Throws if the branch probability is below
/// kEmptyBranchTol.
std::pair<Statevector, double> postselect(const Statevector& state, int qubit,
                                          int bit);

/// <a|b> with conjugation on the first argument.
Complex inner_product(const Statevector& a, const Statevector& b);

}  // namespace qlsw
