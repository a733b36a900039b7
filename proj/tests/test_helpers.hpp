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
#include <random>

#include <Eigen/Dense>

#include "qlsw/statevector.hpp"

namespace qlsw::testing {

/// Haar-ish random unitary via QR of a complex Gaussian matrix.
inline Eigen::MatrixXcd random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = Complex(n(rng), n(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline Statevector random_state(int num_qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Statevector s;
  s.num_qubits = num_qubits;
  s.amps.resize(Eigen::Index{1} << num_qubits);
  for (Eigen::Index i = 0; i < s.amps.size(); ++i) {
    s.amps(i) = Complex(n(rng), n(rng));
  }
  s.amps.normalize();
  return s;
}

/// Random symmetric positive definite, diagonally dominant matrix.
inline Eigen::MatrixXd random_spd_dd(Eigen::Index dim, std::mt19937_64& rng,
                                     double offdiag_scale = 0.1) {
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i + 1; j < dim; ++j) {
      a(i, j) = a(j, i) = offdiag_scale * v(rng) / static_cast<double>(dim);
    }
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    double rowsum = 0;
    for (Eigen::Index j = 0; j < dim; ++j) {
      if (j != i) rowsum += std::abs(a(i, j));
    }
    a(i, i) = rowsum + u(rng);
  }
  return a;
}

/// Frobenius distance to the closest global-phase alignment of b against a.
inline double phase_distance(const Eigen::MatrixXcd& a,
                             const Eigen::MatrixXcd& b) {
  const Complex tr = (a.adjoint() * b).trace();
  if (std::abs(tr) < 1e-300) return (a - b).norm();
  const Complex phase = tr / std::abs(tr);
  return (a * phase - b).norm();
}

}  // namespace qlsw::testing
