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

#include "qlsw/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace qlsw {

namespace {

bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

void check_qubit(int q, int num_qubits, const char* what) {
  if (q < 0 || q >= num_qubits) {
    throw std::invalid_argument(std::string(what) + " qubit " +
                                std::to_string(q) + " out of range for " +
                                std::to_string(num_qubits) + " qubits");
  }
}

std::uint64_t extract_bits(std::uint64_t index, const std::vector<int>& qubits) {
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    out |= ((index >> qubits[j]) & 1u) << j;
  }
  return out;
}

}  // namespace

int UnitaryBlock::num_qubits() const {
  int n = 0;
  while ((Eigen::Index{1} << n) < entries.rows()) ++n;
  return n;
}

UnitaryBlock UnitaryBlock::adjoint() const {
  return UnitaryBlock{entries.adjoint()};
}

UnitaryBlock UnitaryBlock::from_matrix(Eigen::MatrixXcd m) {
  if (m.rows() != m.cols() || !is_power_of_two(static_cast<std::uint64_t>(m.rows()))) {
    throw std::invalid_argument("unitary block must be square with power-of-two dimension");
  }
  const Eigen::MatrixXcd residual =
      m * m.adjoint() - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  if (residual.norm() > kAmplitudeTol * std::sqrt(static_cast<double>(m.rows()))) {
    throw std::invalid_argument("matrix is not unitary (Frobenius residual " +
                                std::to_string(residual.norm()) + ")");
  }
  return UnitaryBlock{std::move(m)};
}

Statevector init_basis_state(int num_qubits, std::uint64_t basis_index) {
  if (num_qubits < 0 || num_qubits > 30) {
    throw std::invalid_argument("unsupported qubit count " + std::to_string(num_qubits));
  }
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  if (basis_index >= dim) {
    throw std::invalid_argument("basis index " + std::to_string(basis_index) +
                                " out of range for " + std::to_string(num_qubits) +
                                " qubits");
  }
  Statevector s;
  s.num_qubits = num_qubits;
  s.amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  s.amps(static_cast<Eigen::Index>(basis_index)) = 1.0;
  return s;
}

void apply_unitary(Statevector& state, const Eigen::MatrixXcd& block,
                   const std::vector<int>& targets,
                   const std::vector<ControlBit>& controls) {
  const int k = static_cast<int>(targets.size());
  if (block.rows() != (Eigen::Index{1} << k) || block.rows() != block.cols()) {
    throw std::invalid_argument("block dimension does not match target count");
  }
  std::uint64_t tmask = 0;
  for (int t : targets) {
    check_qubit(t, state.num_qubits, "target");
    const std::uint64_t bit = std::uint64_t{1} << t;
    if (tmask & bit) throw std::invalid_argument("duplicate target qubit");
    tmask |= bit;
  }
  std::uint64_t cmask = 0, cval = 0;
  for (const ControlBit& c : controls) {
    check_qubit(c.qubit, state.num_qubits, "control");
    const std::uint64_t bit = std::uint64_t{1} << c.qubit;
    if (tmask & bit) throw std::invalid_argument("control overlaps target set");
    if (cmask & bit) throw std::invalid_argument("duplicate control qubit");
    cmask |= bit;
    if (c.value) cval |= bit;
  }

  const std::uint64_t dim = state.dim();
  const std::uint64_t sub = std::uint64_t{1} << k;
  // Offsets of each block sub-index within the full index space.
  std::vector<std::uint64_t> offset(sub, 0);
  for (std::uint64_t b = 1; b < sub; ++b) {
    std::uint64_t off = 0;
    for (int j = 0; j < k; ++j) {
      if ((b >> j) & 1u) off |= std::uint64_t{1} << targets[j];
    }
    offset[b] = off;
  }

  Eigen::VectorXcd scratch(static_cast<Eigen::Index>(sub));
  for (std::uint64_t base = 0; base < dim; ++base) {
    if (base & tmask) continue;
    if ((base & cmask) != cval) continue;
    for (std::uint64_t b = 0; b < sub; ++b) {
      scratch(static_cast<Eigen::Index>(b)) =
          state.amps(static_cast<Eigen::Index>(base | offset[b]));
    }
    const Eigen::VectorXcd out = block * scratch;
    for (std::uint64_t b = 0; b < sub; ++b) {
      state.amps(static_cast<Eigen::Index>(base | offset[b])) =
          out(static_cast<Eigen::Index>(b));
    }
  }
}

std::map<std::uint64_t, double> marginal_distribution(
    const Statevector& state, const std::vector<int>& qubits,
    const std::vector<ControlBit>& conditioned_on) {
  std::uint64_t qmask = 0;
  for (int q : qubits) {
    check_qubit(q, state.num_qubits, "queried");
    qmask |= std::uint64_t{1} << q;
  }
  std::uint64_t cmask = 0, cval = 0;
  for (const ControlBit& c : conditioned_on) {
    check_qubit(c.qubit, state.num_qubits, "conditioning");
    const std::uint64_t bit = std::uint64_t{1} << c.qubit;
    if (qmask & bit) {
      throw std::invalid_argument("conditioning qubit also queried");
    }
    cmask |= bit;
    if (c.value) cval |= bit;
  }

  std::map<std::uint64_t, double> probs;
  double total = 0.0;
  const std::uint64_t dim = state.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & cmask) != cval) continue;
    const double p = std::norm(state.amps(static_cast<Eigen::Index>(i)));
    if (p == 0.0) continue;
    probs[extract_bits(i, qubits)] += p;
    total += p;
  }
  if (total < kEmptyBranchTol) {
    throw std::runtime_error("empty branch: conditioning event has probability " +
                             std::to_string(total));
  }
  for (auto& [key, p] : probs) p /= total;
  return probs;
}

std::map<std::uint64_t, std::uint64_t> sample_counts(
    const Statevector& state, const std::vector<int>& qubits,
    std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const auto marginal = marginal_distribution(state, qubits);

  std::vector<std::uint64_t> keys;
  std::vector<double> cdf;
  keys.reserve(marginal.size());
  cdf.reserve(marginal.size());
  double acc = 0.0;
  for (const auto& [key, p] : marginal) {
    acc += p;
    keys.push_back(key);
    cdf.push_back(acc);
  }
  cdf.back() = 1.0;

  std::mt19937_64 rng(seed);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u =
        static_cast<double>(rng() >> 11) * 0x1.0p-53;  // uniform in [0,1)
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx =
        std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()),
                              keys.size() - 1);
    ++counts[keys[idx]];
  }
  return counts;
}

std::pair<Statevector, double> postselect(const Statevector& state, int qubit,
                                          int bit) {
  check_qubit(qubit, state.num_qubits, "postselect");
  const std::uint64_t mask = std::uint64_t{1} << qubit;
  const std::uint64_t want = bit ? mask : 0;
  double p = 0.0;
  const std::uint64_t dim = state.dim();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & mask) == want) p += std::norm(state.amps(static_cast<Eigen::Index>(i)));
  }
  if (p < kEmptyBranchTol) {
    throw std::runtime_error("post-selection failed: branch probability " +
                             std::to_string(p));
  }
  Statevector out = state;
  const double scale = 1.0 / std::sqrt(p);
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & mask) == want) {
      out.amps(static_cast<Eigen::Index>(i)) *= scale;
    } else {
      out.amps(static_cast<Eigen::Index>(i)) = 0.0;
    }
  }
  return {std::move(out), p};
}

Complex inner_product(const Statevector& a, const Statevector& b) {
  if (a.num_qubits != b.num_qubits) {
    throw std::invalid_argument("inner product size mismatch");
  }
  return a.amps.dot(b.amps);  // Eigen dot conjugates the first argument
}

}  // namespace qlsw
