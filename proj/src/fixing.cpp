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

#include "qlsw/fixing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qlsw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Dominant {
  int index = -1;  // position in clock_qubits
  int bit = 0;
  double probability = 0.0;
};

Dominant best_dominant(const Statevector& state,
                       const std::vector<int>& clock_qubits,
                       const std::vector<FixDecision>& decisions) {
  std::vector<ControlBit> cond;
  for (std::size_t j = 0; j < clock_qubits.size(); ++j) {
    if (decisions[j].fixed) cond.push_back({clock_qubits[j], decisions[j].bit});
  }
  Dominant best;
  for (std::size_t j = 0; j < clock_qubits.size(); ++j) {
    if (decisions[j].fixed) continue;
    const auto marg = marginal_distribution(state, {clock_qubits[j]}, cond);
    double p0 = 0.0, p1 = 0.0;
    for (const auto& [k, p] : marg) (k ? p1 : p0) = p;
    const int bit = p1 > p0 ? 1 : 0;
    const double pmax = std::max(p0, p1);
    if (pmax > best.probability + 1e-15) {
      best = {static_cast<int>(j), bit, pmax};
    }
  }
  return best;
}

Eigen::MatrixXcd inverse_fourier(int n_e) {
  const Eigen::Index dim = Eigen::Index{1} << n_e;
  Eigen::MatrixXcd f(dim, dim);
  const double w = kTwoPi / static_cast<double>(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      f(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(dim)),
                           -w * static_cast<double>(j * k));
    }
  }
  return f;
}

}  // namespace

int FixingPlan::n_f() const {
  int n = 0;
  for (const FixDecision& d : decisions) n += d.fixed ? 1 : 0;
  return n;
}

FixingPlan classical_fix(const Statevector& qpe_state,
                         const std::vector<int>& clock_qubits, double p_th) {
  FixingPlan plan;
  plan.n_r = static_cast<int>(clock_qubits.size());
  plan.p_th = p_th;
  plan.provenance = "classical";
  plan.decisions.assign(clock_qubits.size(), {});
  while (true) {
    const Dominant d = best_dominant(qpe_state, clock_qubits, plan.decisions);
    if (d.index < 0 || d.probability < p_th) break;
    plan.decisions[static_cast<std::size_t>(d.index)] = {true, d.bit,
                                                         d.probability};
  }
  return plan;
}

FixingPlan quantum_fix(const QuantumCircuit& qpe_circuit,
                       const std::vector<int>& clock_qubits, double p_th,
                       std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const Statevector state = simulate_from_zero(qpe_circuit);
  FixingPlan plan;
  plan.n_r = static_cast<int>(clock_qubits.size());
  plan.p_th = p_th;
  plan.provenance = "quantum";
  plan.decisions.assign(clock_qubits.size(), {});
  for (std::size_t j = 0; j < clock_qubits.size(); ++j) {
    // One independent measurement campaign per qubit.
    const std::uint64_t qseed = seed + 0x9e3779b97f4a7c15ULL * (j + 1);
    const auto counts = sample_counts(state, {clock_qubits[j]}, shots, qseed);
    std::uint64_t c0 = 0, c1 = 0;
    for (const auto& [k, c] : counts) (k ? c1 : c0) = c;
    const int bit = c1 > c0 ? 1 : 0;
    const double pmax =
        static_cast<double>(std::max(c0, c1)) / static_cast<double>(shots);
    if (pmax >= p_th) plan.decisions[j] = {true, bit, pmax};
  }
  return plan;
}

LmrResult lmr_fix(const std::function<QuantumCircuit()>& qpe_builder,
                  int clock_index, int n_e, double delta_t, double p_th) {
  if (n_e < 1) throw std::invalid_argument("need at least one readout qubit");
  const double t = kTwoPi;
  int r_base;
  if (delta_t > 0.0) {
    r_base = static_cast<int>(std::ceil(t / delta_t));
  } else {
    r_base = static_cast<int>(std::ceil(t * t * std::ldexp(1.0, n_e + 1)));
  }
  // Budget: t^2 / r phase-fraction error must stay under half a grid cell.
  const double err_bound = t * t / static_cast<double>(r_base);
  if (err_bound > std::ldexp(1.0, -(n_e + 1)) * (1.0 + 1e-9)) {
    throw std::invalid_argument(
        "Trotter step too coarse for the phase grid; decrease delta_t");
  }

  // Copy state: the clock qubit's density matrix after the diagonalizing
  // CNOT onto a fresh ancilla, i.e. its computational-basis marginal.
  const QuantumCircuit qpe = qpe_builder();
  const Statevector state = simulate_from_zero(qpe);
  const auto marg = marginal_distribution(state, {clock_index});
  double p0 = 0.0, p1m = 0.0;
  for (const auto& [k, p] : marg) (k ? p1m : p0) = p;
  Eigen::Matrix2cd rho_copy = Eigen::Matrix2cd::Zero();
  rho_copy(0, 0) = p0;
  rho_copy(1, 1) = p1m;

  // Register layout (little-endian): zeta at bit 0, readout at bits
  // 1..n_e, attached copy at bit n_e+1.
  const int n_sys = n_e + 1;
  const Eigen::Index dim = Eigen::Index{1} << n_sys;
  const Eigen::Index ext = dim * 2;

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    // zeta stays |0>, readout in the uniform superposition.
    if ((i & 1) == 0) v(i) = 1.0;
  }
  v.normalize();
  Eigen::MatrixXcd sigma = v * v.adjoint();

  const Complex im{0.0, 1.0};
  const double dt = t / static_cast<double>(r_base);
  auto step_unitary = [&](int readout_bit) {
    // Controlled-e^{i SWAP dt} between zeta (bit 0) and the copy (top bit),
    // conditioned on the readout qubit.
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(ext, ext);
    const Complex c = std::cos(dt);
    const Complex is = im * std::sin(dt);
    for (Eigen::Index i = 0; i < ext; ++i) {
      if (!((i >> (1 + readout_bit)) & 1)) continue;
      const int z = static_cast<int>(i & 1);
      const int cp = static_cast<int>((i >> (n_sys)) & 1);
      const Eigen::Index swapped =
          (i & ~(Eigen::Index{1} | (Eigen::Index{1} << n_sys))) |
          static_cast<Eigen::Index>(cp) |
          (static_cast<Eigen::Index>(z) << n_sys);
      u(i, i) = (z == cp) ? std::exp(im * dt) : c;
      if (z != cp) u(swapped, i) = is;
    }
    return u;
  };

  for (int k = 0; k < n_e; ++k) {
    const Eigen::MatrixXcd u = step_unitary(k);
    const Eigen::MatrixXcd udag = u.adjoint();
    const long steps = static_cast<long>(r_base) << k;
    for (long s = 0; s < steps; ++s) {
      // Attach a fresh copy, evolve, trace it back out.
      Eigen::MatrixXcd big(ext, ext);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          big.block(a * dim, b * dim, dim, dim) = rho_copy(a, b) * sigma;
        }
      }
      big = u * big * udag;
      sigma = big.block(0, 0, dim, dim) + big.block(dim, dim, dim, dim);
    }
  }

  // Inverse Fourier readout on the n_e-qubit register.
  const Eigen::MatrixXcd fh = inverse_fourier(n_e);
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      if ((i & 1) != (j & 1)) continue;
      full(i, j) = fh(i >> 1, j >> 1);
    }
  }
  sigma = full * sigma * full.adjoint();

  Eigen::Index best_bin = 0;
  double best_p = -1.0;
  for (Eigen::Index bin = 0; bin < (Eigen::Index{1} << n_e); ++bin) {
    double p = 0.0;
    for (int z = 0; z < 2; ++z) {
      const Eigen::Index idx = (bin << 1) | z;
      p += sigma(idx, idx).real();
    }
    if (p > best_p) {
      best_p = p;
      best_bin = bin;
    }
  }

  LmrResult res;
  res.p1 = static_cast<double>(best_bin) / std::ldexp(1.0, n_e);
  res.trotter_steps = r_base;
  if (best_bin == 0) {
    // Bin 0 aliases p1 = 0 and p1 = 1 (the phase wraps). Either way the
    // qubit is deterministic, so a single Z shot on one copy settles it.
    res.p1 = rho_copy(0, 0).real() >= 0.5 ? 1.0 : 0.0;
  }
  if (res.p1 >= p_th) {
    res.fixed = true;
    res.bit = 0;
  } else if (1.0 - res.p1 >= p_th) {
    res.fixed = true;
    res.bit = 1;
  }
  return res;
}

FixingPlan lmr_fix_all(const std::function<QuantumCircuit()>& qpe_builder,
                       const std::vector<int>& clock_qubits, int n_e,
                       double p_th) {
  FixingPlan plan;
  plan.n_r = static_cast<int>(clock_qubits.size());
  plan.p_th = p_th;
  plan.provenance = "lmr";
  plan.decisions.assign(clock_qubits.size(), {});
  for (std::size_t j = 0; j < clock_qubits.size(); ++j) {
    const LmrResult r = lmr_fix(qpe_builder, clock_qubits[j], n_e, 0.0, p_th);
    if (r.fixed) {
      plan.decisions[j] = {true, r.bit, r.bit == 0 ? r.p1 : 1.0 - r.p1};
    }
  }
  return plan;
}

FixingPlan forced_fix(const Statevector& qpe_state,
                      const std::vector<int>& clock_qubits, int n_f) {
  if (n_f < 0 || n_f > static_cast<int>(clock_qubits.size())) {
    throw std::invalid_argument("forced fix count out of range");
  }
  FixingPlan plan;
  plan.n_r = static_cast<int>(clock_qubits.size());
  plan.p_th = 0.0;
  plan.provenance = "forced";
  plan.decisions.assign(clock_qubits.size(), {});
  for (int k = 0; k < n_f; ++k) {
    const Dominant d = best_dominant(qpe_state, clock_qubits, plan.decisions);
    if (d.index < 0) break;
    plan.decisions[static_cast<std::size_t>(d.index)] = {true, d.bit,
                                                         d.probability};
  }
  return plan;
}

FixingReport fixing_report(const FixingPlan& plan,
                           const CircuitMetrics& unfixed,
                           const CircuitMetrics& fixed) {
  FixingReport rep;
  rep.n_f = plan.n_f();
  if (unfixed.depth > 0) {
    rep.depth_compression_pct =
        std::abs(fixed.depth - unfixed.depth) /
        static_cast<double>(unfixed.depth) * 100.0;
  }
  if (unfixed.two_qubit_count > 0) {
    rep.two_q_reduction_pct =
        std::abs(fixed.two_qubit_count - unfixed.two_qubit_count) /
        static_cast<double>(unfixed.two_qubit_count) * 100.0;
  }
  return rep;
}

}  // namespace qlsw
