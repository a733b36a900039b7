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

#include "qlsw/hhl.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qlsw/decompose.hpp"

namespace qlsw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::shared_ptr<const UnitaryBlock> block_of(Eigen::MatrixXcd m) {
  return std::make_shared<const UnitaryBlock>(
      UnitaryBlock::from_matrix(std::move(m)));
}

Gate phase_gate(double phi, int target, std::vector<ControlBit> controls,
                std::string tag) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  m(1, 1) = std::polar(1.0, phi);
  return make_unitary(block_of(m), {target}, std::move(controls),
                      std::move(tag));
}

/// theta_i = 2 asin(min(1, c 2^{n_r} / i)); used by the circuit builder so
/// that over-rotation requests saturate instead of failing.
std::vector<double> clamped_angles(int n_r, double c) {
  const std::size_t bins = std::size_t{1} << n_r;
  std::vector<double> theta(bins, 0.0);
  for (std::size_t i = 1; i < bins; ++i) {
    const double arg = c * std::ldexp(1.0, n_r) / static_cast<double>(i);
    theta[i] = 2.0 * std::asin(std::min(arg, 1.0));
  }
  return theta;
}

bool is_free(const FixingPlan* fix, int j) {
  return fix == nullptr || !fix->decisions[static_cast<std::size_t>(j)].fixed;
}

int fixed_bit(const FixingPlan* fix, int j) {
  return fix->decisions[static_cast<std::size_t>(j)].bit;
}

/// Forward phase estimation of sA with t = 2 pi: Hadamards on the free
/// clock qubits, basis change into the eigenbasis, one controlled diagonal
/// per clock qubit, basis change back, then the swap-free inverse Fourier
/// readout. Clock qubit j ends up holding bit n_r-1-j of the eigenvalue bin.
/// Fixed-to-0 qubits lose all their gates; fixed-to-1 qubits keep their
/// unitaries uncontrolled.
std::vector<Gate> forward_qpe(const Eigen::MatrixXcd& a,
                              const std::vector<int>& clock,
                              const std::vector<int>& state_q,
                              const FixingPlan* fix) {
  const int n_r = static_cast<int>(clock.size());
  const int n_b = static_cast<int>(state_q.size());
  std::vector<Gate> gates;

  for (int j = 0; j < n_r; ++j) {
    if (is_free(fix, j)) gates.push_back(make_gate(GateKind::H, {clock[j]}, {}, "qpe"));
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }

  if (n_b > 0) {
    gates.push_back(make_unitary(block_of(es.eigenvectors().adjoint()),
                                 state_q, {}, "qpe"));
  }
  for (int m = 0; m < n_r; ++m) {
    const double t = kTwoPi * std::ldexp(1.0, m);
    if (n_b == 0) {
      // Scalar system: the controlled phase lives on the clock qubit itself.
      if (is_free(fix, m)) {
        gates.push_back(
            phase_gate(t * es.eigenvalues()(0), clock[m], {}, "qpe"));
      }
      // Fixed-to-1 would contribute only a global phase; drop it.
      continue;
    }
    if (!is_free(fix, m) && fixed_bit(fix, m) == 0) continue;
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(a.rows(), a.rows());
    for (Eigen::Index j = 0; j < a.rows(); ++j) {
      d(j, j) = std::polar(1.0, t * es.eigenvalues()(j));
    }
    std::vector<ControlBit> ctrl;
    if (is_free(fix, m)) ctrl.push_back({clock[m], 1});
    gates.push_back(make_unitary(block_of(std::move(d)), state_q,
                                 std::move(ctrl), "qpe"));
  }
  if (n_b > 0) {
    gates.push_back(
        make_unitary(block_of(es.eigenvectors()), state_q, {}, "qpe"));
  }

  // Inverse Fourier readout without terminal swaps; the bit reversal is
  // absorbed into the clock-pattern indexing downstream.
  for (int j = n_r - 1; j >= 0; --j) {
    if (!is_free(fix, j)) continue;
    for (int m = j + 1; m < n_r; ++m) {
      const double phi = -std::numbers::pi * std::ldexp(1.0, -(m - j));
      if (is_free(fix, m)) {
        gates.push_back(phase_gate(phi, clock[j], {{clock[m], 1}}, "qpe"));
      } else if (fixed_bit(fix, m) == 1) {
        gates.push_back(phase_gate(phi, clock[j], {}, "qpe"));
      }
    }
    gates.push_back(make_gate(GateKind::H, {clock[j]}, {}, "qpe"));
  }
  return gates;
}

Eigen::VectorXcd normalized_b(const ProblemInstance& problem) {
  const double nb = problem.b.norm();
  if (nb < 1e-14) throw std::invalid_argument("right-hand side is zero");
  return problem.b / nb;
}

}  // namespace

std::vector<double> rotation_angles(int n_r, double c) {
  if (n_r < 1) throw std::invalid_argument("need at least one clock qubit");
  if (c <= 0.0) throw std::invalid_argument("rotation constant must be positive");
  const std::size_t bins = std::size_t{1} << n_r;
  std::vector<double> theta(bins, 0.0);
  for (std::size_t i = 1; i < bins; ++i) {
    const double arg = c * std::ldexp(1.0, n_r) / static_cast<double>(i);
    if (arg > 1.0 + 1e-12) {
      throw std::invalid_argument(
          "arcsin argument exceeds 1 at eigenvalue index " +
          std::to_string(i) + "; require c <= 2^-n_r");
    }
    theta[i] = 2.0 * std::asin(std::min(arg, 1.0));
  }
  return theta;
}

std::vector<Gate> state_prep_gates(const Eigen::VectorXcd& amplitudes,
                                   const std::vector<int>& qubits) {
  const int n = static_cast<int>(qubits.size());
  if (amplitudes.size() != Eigen::Index{1} << n) {
    throw std::invalid_argument("amplitude length does not match qubit count");
  }
  if (std::abs(amplitudes.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("amplitudes must be normalized");
  }
  std::vector<Gate> gates;
  if (n == 0) return gates;

  // Magnitude tree: level l rotates qubits[l] conditioned on every pattern
  // of the more significant qubits.
  for (int l = n - 1; l >= 0; --l) {
    const std::uint64_t high_count = std::uint64_t{1} << (n - 1 - l);
    const std::uint64_t low_count = std::uint64_t{1} << l;
    for (std::uint64_t p = 0; p < high_count; ++p) {
      double sq0 = 0.0, sq1 = 0.0;
      for (std::uint64_t low = 0; low < low_count; ++low) {
        const std::uint64_t base = (p << (l + 1)) | low;
        sq0 += std::norm(amplitudes(static_cast<Eigen::Index>(base)));
        sq1 += std::norm(
            amplitudes(static_cast<Eigen::Index>(base | (1ULL << l))));
      }
      if (sq0 + sq1 < 1e-24) continue;
      const double theta = 2.0 * std::atan2(std::sqrt(sq1), std::sqrt(sq0));
      if (std::abs(theta) < 1e-14) continue;
      std::vector<ControlBit> ctrl;
      for (int m = l + 1; m < n; ++m) {
        ctrl.push_back({qubits[m], static_cast<int>((p >> (m - l - 1)) & 1)});
      }
      gates.push_back(make_rotation(GateKind::Ry, theta, {qubits[l]},
                                    std::move(ctrl), "prep"));
    }
  }

  double max_phase = 0.0;
  Eigen::MatrixXcd d =
      Eigen::MatrixXcd::Identity(amplitudes.size(), amplitudes.size());
  for (Eigen::Index x = 0; x < amplitudes.size(); ++x) {
    if (std::abs(amplitudes(x)) < 1e-12) continue;
    const double phi = std::arg(amplitudes(x));
    max_phase = std::max(max_phase, std::abs(phi));
    d(x, x) = std::polar(1.0, phi);
  }
  if (max_phase > 1e-12) {
    gates.push_back(make_unitary(block_of(std::move(d)), qubits, {}, "prep"));
  }
  return gates;
}

QuantumCircuit build_qpe_circuit(const ProblemInstance& problem,
                                 const ScalingPlan& scaling, int n_r) {
  if (n_r < 1) throw std::invalid_argument("need at least one clock qubit");
  QuantumCircuit qc;
  const Register clock = qc.add_register("clock", n_r);
  const Register state = qc.add_register("state", problem.n_b);
  qc.append_all(state_prep_gates(normalized_b(problem), state.all()));
  qc.append_all(
      forward_qpe(scaling.s * problem.a, clock.all(), state.all(), nullptr));
  return qc;
}

QuantumCircuit build_hhl_circuit(const ProblemInstance& problem,
                                 const ScalingPlan& scaling,
                                 const HHLConfig& config,
                                 const FixingPlan* fixings) {
  const int n_r = config.n_r;
  if (n_r < 1) throw std::invalid_argument("need at least one clock qubit");
  if (fixings != nullptr &&
      (fixings->n_r != n_r ||
       static_cast<int>(fixings->decisions.size()) != n_r)) {
    throw std::invalid_argument("fixing plan inconsistent with n_r");
  }
  const double c = config.c > 0.0 ? config.c : scaling.c;
  if (c <= 0.0 || c > 1.0) {
    throw std::invalid_argument("rotation constant must lie in (0, 1]");
  }

  QuantumCircuit qc;
  const Register anc = qc.add_register("ancilla", 1);
  const Register clock = qc.add_register("clock", n_r);
  const Register state = qc.add_register("state", problem.n_b);
  const Register hom = qc.add_register("hom", problem.n_b);

  const Eigen::VectorXcd bhat = normalized_b(problem);
  qc.append_all(state_prep_gates(bhat, state.all()));

  const std::vector<Gate> qpe = forward_qpe(scaling.s * problem.a,
                                            clock.all(), state.all(), fixings);
  qc.append_all(qpe);

  // Eigenvalue-conditioned rotation: clock qubit j carries bit n_r-1-j of
  // the bin, fixed qubits contribute their pinned value.
  const std::vector<double> theta = clamped_angles(n_r, c);
  const std::uint64_t bins = std::uint64_t{1} << n_r;
  for (std::uint64_t p = 0; p < bins; ++p) {
    bool consistent = true;
    std::uint64_t bin = 0;
    std::vector<ControlBit> ctrl;
    for (int j = 0; j < n_r; ++j) {
      const int bit = static_cast<int>((p >> j) & 1);
      if (is_free(fixings, j)) {
        ctrl.push_back({clock[j], bit});
      } else if (fixed_bit(fixings, j) != bit) {
        consistent = false;
        break;
      }
      bin |= static_cast<std::uint64_t>(bit) << (n_r - 1 - j);
    }
    if (!consistent) continue;
    const double th = theta[bin];
    if (std::abs(th) < 1e-14) continue;
    qc.append(make_rotation(GateKind::Ry, th, {anc[0]}, std::move(ctrl),
                            "crot"));
  }

  for (auto it = qpe.rbegin(); it != qpe.rend(); ++it) {
    Gate g = it->inverse();
    g.tag = "iqpe";
    qc.append(std::move(g));
  }

  // Destructive overlap against a fresh |b> copy.
  {
    std::vector<Gate> prep = state_prep_gates(bhat, hom.all());
    for (Gate& g : prep) g.tag = "hom";
    qc.append_all(prep);
  }
  for (int k = 0; k < problem.n_b; ++k) {
    qc.append(make_gate(GateKind::X, {hom[k]}, {{state[k], 1}}, "hom"));
    qc.append(make_gate(GateKind::H, {state[k]}, {}, "hom"));
  }
  return qc;
}

HHLOutcome run_hhl(const QuantumCircuit& circuit, const HHLConfig& config,
                   const ProblemInstance& problem, const ScalingPlan& scaling) {
  const Register anc = circuit.registers.at("ancilla");
  const Register clock = circuit.registers.at("clock");
  const Register state_reg = circuit.registers.at("state");
  const Register hom = circuit.registers.at("hom");
  const int n_b = state_reg.size;

  std::size_t hom_start = circuit.gates.size();
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    if (circuit.gates[i].tag == "hom") {
      hom_start = i;
      break;
    }
  }

  Statevector sv = init_basis_state(circuit.num_qubits, 0);
  for (std::size_t i = 0; i < hom_start; ++i) {
    apply_unitary(sv, circuit.gates[i].matrix(), circuit.gates[i].qubits,
                  circuit.gates[i].controls);
  }

  HHLOutcome out;
  {
    const auto marg = marginal_distribution(sv, {anc[0]});
    const auto it = marg.find(1);
    out.success_probability = it == marg.end() ? 0.0 : it->second;
  }
  if (out.success_probability < kEmptyBranchTol) {
    throw std::runtime_error("post-selection failed: P(1) below 1e-14");
  }

  // Solution state: ancilla 1, clock restored to zero, overlap copy untouched.
  {
    Statevector post = postselect(sv, anc[0], 1).first;
    for (int j = 0; j < clock.size; ++j) {
      post = postselect(post, clock[j], 0).first;
    }
    Statevector sol;
    sol.num_qubits = n_b;
    sol.amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_b);
    for (std::uint64_t x = 0; x < sol.dim(); ++x) {
      const std::uint64_t idx =
          (std::uint64_t{1} << anc[0]) | (x << state_reg.start);
      sol.amps(static_cast<Eigen::Index>(x)) =
          post.amps(static_cast<Eigen::Index>(idx));
    }
    const double nrm = sol.amps.norm();
    if (nrm > 0.0) sol.amps /= nrm;
    out.solution_state = std::move(sol);
  }

  for (std::size_t i = hom_start; i < circuit.gates.size(); ++i) {
    apply_unitary(sv, circuit.gates[i].matrix(), circuit.gates[i].qubits,
                  circuit.gates[i].controls);
  }

  double p1 = out.success_probability;
  if (n_b == 0) {
    out.overlap = 1.0;
  } else if (config.mode == RunMode::exact) {
    std::vector<int> qs = state_reg.all();
    for (int q : hom.all()) qs.push_back(q);
    const auto marg = marginal_distribution(sv, qs, {{anc[0], 1}});
    const std::uint64_t mask = (std::uint64_t{1} << n_b) - 1;
    double sq = 0.0;
    for (const auto& [key, prob] : marg) {
      const std::uint64_t alpha = key & mask;
      const std::uint64_t beta = key >> n_b;
      sq += (std::popcount(alpha & beta) & 1) ? -prob : prob;
    }
    if (sq < -1e-9) {
      throw std::runtime_error("negative squared overlap " +
                               std::to_string(sq) + " in exact mode");
    }
    out.overlap = std::sqrt(std::clamp(sq, 0.0, 1.0));
  } else {
    std::vector<int> qs = {anc[0]};
    for (int q : state_reg.all()) qs.push_back(q);
    for (int q : hom.all()) qs.push_back(q);
    const auto counts = sample_counts(sv, qs, config.shots, config.seed);
    std::uint64_t hits = 0;
    double signed_sum = 0.0;
    const std::uint64_t mask = (std::uint64_t{1} << n_b) - 1;
    for (const auto& [key, cnt] : counts) {
      if (!(key & 1)) continue;
      hits += cnt;
      const std::uint64_t alpha = (key >> 1) & mask;
      const std::uint64_t beta = key >> (1 + n_b);
      const double c = static_cast<double>(cnt);
      signed_sum += (std::popcount(alpha & beta) & 1) ? -c : c;
    }
    if (hits == 0) {
      throw std::runtime_error("post-selection failed: no ancilla=1 shots");
    }
    p1 = static_cast<double>(hits) / static_cast<double>(config.shots);
    out.success_probability = p1;
    out.overlap =
        std::sqrt(std::clamp(signed_sum / static_cast<double>(hits), 0.0, 1.0));
  }

  out.norm_x = solution_norm(p1, scaling.d_tilde_min);
  const double norm_b = problem.b.norm();
  out.e_corr = correlation_energy(out.overlap, out.norm_x, norm_b);
  if (config.compute_metrics) {
    out.metrics = metrics(decompose_to_native(circuit));
  }
  return out;
}

double hom_overlap(const Statevector& x_state, const Statevector& b_state,
                   const HHLConfig& config, bool* clamped) {
  if (x_state.num_qubits != b_state.num_qubits) {
    throw std::invalid_argument("register sizes differ");
  }
  if (clamped != nullptr) *clamped = false;
  const int n = x_state.num_qubits;
  if (n == 0) return 1.0;

  Statevector joint;
  joint.num_qubits = 2 * n;
  joint.amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << (2 * n));
  for (std::uint64_t beta = 0; beta < b_state.dim(); ++beta) {
    for (std::uint64_t alpha = 0; alpha < x_state.dim(); ++alpha) {
      joint.amps(static_cast<Eigen::Index>((beta << n) | alpha)) =
          x_state.amps(static_cast<Eigen::Index>(alpha)) *
          b_state.amps(static_cast<Eigen::Index>(beta));
    }
  }
  for (int k = 0; k < n; ++k) {
    apply_unitary(joint, make_gate(GateKind::X, {n + k}).matrix(), {n + k},
                  {{k, 1}});
    apply_unitary(joint, make_gate(GateKind::H, {k}).matrix(), {k});
  }

  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  double sq = 0.0;
  if (config.mode == RunMode::exact) {
    for (std::uint64_t idx = 0; idx < joint.dim(); ++idx) {
      const double p = std::norm(joint.amps(static_cast<Eigen::Index>(idx)));
      sq += (std::popcount((idx & mask) & (idx >> n)) & 1) ? -p : p;
    }
    if (sq < -1e-9) {
      throw std::runtime_error("negative squared overlap " +
                               std::to_string(sq) + " in exact mode");
    }
  } else {
    std::vector<int> qs(static_cast<std::size_t>(2 * n));
    for (int q = 0; q < 2 * n; ++q) qs[static_cast<std::size_t>(q)] = q;
    const auto counts = sample_counts(joint, qs, config.shots, config.seed);
    for (const auto& [key, cnt] : counts) {
      const double c =
          static_cast<double>(cnt) / static_cast<double>(config.shots);
      sq += (std::popcount((key & mask) & (key >> n)) & 1) ? -c : c;
    }
    if (sq < 0.0 && clamped != nullptr) *clamped = true;
  }
  return std::sqrt(std::clamp(sq, 0.0, 1.0));
}

double correlation_energy(double overlap, double norm_x, double norm_b) {
  if (overlap < -1e-12 || overlap > 1.0 + 1e-12) {
    throw std::invalid_argument("overlap must lie in [0, 1]");
  }
  if (norm_x <= 0.0 || norm_b <= 0.0) {
    throw std::invalid_argument("norms must be positive");
  }
  return -norm_x * norm_b * norm_b * overlap;
}

double solution_norm(double p1, double d_tilde_min) {
  if (p1 <= 0.0 || p1 > 1.0 + 1e-12) {
    throw std::invalid_argument("success probability must lie in (0, 1]");
  }
  if (d_tilde_min <= 0.0) {
    throw std::invalid_argument("d_tilde_min must be positive");
  }
  return std::sqrt(p1) / d_tilde_min;
}

}  // namespace qlsw
