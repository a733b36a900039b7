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

#include "qlsw/decompose.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <set>
#include <stdexcept>

namespace qlsw {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;
constexpr double kAngleEps = 1e-12;

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd m;
  m << 0, -kI, kI, 0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

/// kron with the first factor on the slow (higher) qubit.
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& slow,
                      const Eigen::MatrixXcd& fast) {
  Eigen::MatrixXcd out(slow.rows() * fast.rows(), slow.cols() * fast.cols());
  for (Eigen::Index i = 0; i < slow.rows(); ++i) {
    for (Eigen::Index j = 0; j < slow.cols(); ++j) {
      out.block(i * fast.rows(), j * fast.cols(), fast.rows(), fast.cols()) =
          slow(i, j) * fast;
    }
  }
  return out;
}

Eigen::Matrix4cd magic_basis() {
  Eigen::Matrix4cd m;
  const double r = 1.0 / std::numbers::sqrt2;
  m << r, 0, 0, kI * r,
       0, kI * r, r, 0,
       0, kI * r, -r, 0,
       r, 0, 0, -kI * r;
  return m;
}

bool nearly_zero_angle(double a) {
  const double m = std::remainder(a, 2.0 * kPi);
  return std::abs(m) < kAngleEps;
}

void emit_rot(std::vector<Gate>& out, GateKind kind, double angle, int qubit) {
  if (!nearly_zero_angle(angle)) {
    out.push_back(make_rotation(kind, angle, {qubit}));
  }
}

void emit_zyz(std::vector<Gate>& out, const Eigen::Matrix2cd& u, int qubit) {
  const EulerAngles e = zyz_angles(u);
  emit_rot(out, GateKind::Rz, e.alpha, qubit);
  emit_rot(out, GateKind::Ry, e.gamma, qubit);
  emit_rot(out, GateKind::Rz, e.beta, qubit);
}

int lowest_set_bit(std::uint64_t v) {
  int b = 0;
  while (!((v >> b) & 1u)) ++b;
  return b;
}

/// Matrix of a gate list over `n` qubits (dense, small n only).
Eigen::MatrixXcd gates_unitary(const std::vector<Gate>& gates, int n) {
  QuantumCircuit c;
  c.num_qubits = n;
  for (const Gate& g : gates) c.append(g);
  return circuit_unitary(c, n).entries;
}

double phase_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Complex tr = (a.adjoint() * b).trace();
  if (std::abs(tr) < 1e-300) return (a - b).norm();
  return (a * (tr / std::abs(tr)) - b).norm();
}

bool is_diagonal(const Eigen::MatrixXcd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j && std::abs(m(i, j)) > 1e-12) return false;
    }
  }
  return true;
}

/// Diagonal unitary with arbitrary-polarity external controls folded into a
/// larger diagonal over targets + control qubits.
std::vector<Gate> controlled_diagonal(const Eigen::VectorXcd& diag,
                                      const std::vector<int>& targets,
                                      const std::vector<ControlBit>& controls) {
  const std::size_t nt = targets.size();
  const std::size_t nc = controls.size();
  std::vector<int> qubits = targets;
  std::uint64_t pattern = 0;
  for (std::size_t j = 0; j < nc; ++j) {
    qubits.push_back(controls[j].qubit);
    if (controls[j].value) pattern |= std::uint64_t{1} << j;
  }
  std::vector<double> phases(std::size_t{1} << (nt + nc), 0.0);
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << nc); ++c) {
    if (c != pattern) continue;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << nt); ++t) {
      phases[(c << nt) | t] = std::arg(diag(static_cast<Eigen::Index>(t)));
    }
  }
  return diagonal_gates(phases, qubits);
}

/// Multi-controlled X (arbitrary polarities), exact up to global phase.
std::vector<Gate> mc_x_gates(int target, const std::vector<ControlBit>& controls) {
  if (controls.empty()) {
    return {make_rotation(GateKind::Rx, kPi, {target})};
  }
  if (controls.size() == 1 && controls[0].value == 1) {
    return native_cx(controls[0].qubit, target);
  }
  return mc_unitary_gates(pauli_x(), target, controls);
}

/// Two-level unitary between basis indices a < b of the block spanned by
/// `qubits`, with `g` acting on the ordered pair (a, b). External controls
/// are appended to every emitted primitive.
void emit_two_level(std::vector<Gate>& out, std::uint64_t a, std::uint64_t b,
                    const Eigen::Matrix2cd& g, const std::vector<int>& qubits,
                    const std::vector<ControlBit>& ext) {
  const int n = static_cast<int>(qubits.size());
  const std::uint64_t diff = a ^ b;
  const int q = lowest_set_bit(diff);

  // Route b to a ^ (1<<q) one bit flip at a time; a never matches the flip
  // condition because it differs from the moving index at bit q throughout.
  std::vector<std::vector<Gate>> flips;
  std::uint64_t cur = b;
  for (int r = 0; r < n; ++r) {
    if (r == q || !((diff >> r) & 1u)) continue;
    std::vector<ControlBit> ctrl = ext;
    for (int s = 0; s < n; ++s) {
      if (s == r) continue;
      ctrl.push_back({qubits[s], static_cast<int>((cur >> s) & 1u)});
    }
    flips.push_back(mc_x_gates(qubits[r], ctrl));
    cur ^= std::uint64_t{1} << r;
  }
  for (const auto& f : flips) out.insert(out.end(), f.begin(), f.end());

  Eigen::Matrix2cd u2 = g;
  if ((a >> q) & 1u) {
    // a occupies the |1> slot of the routed pair.
    Eigen::Matrix2cd sw;
    sw << g(1, 1), g(1, 0), g(0, 1), g(0, 0);
    u2 = sw;
  }
  std::vector<ControlBit> ctrl = ext;
  for (int s = 0; s < n; ++s) {
    if (s == q) continue;
    ctrl.push_back({qubits[s], static_cast<int>((a >> s) & 1u)});
  }
  const auto core = mc_unitary_gates(u2, qubits[q], ctrl);
  out.insert(out.end(), core.begin(), core.end());

  for (auto it = flips.rbegin(); it != flips.rend(); ++it) {
    out.insert(out.end(), it->begin(), it->end());
  }
}

/// General block synthesis by two-level (Givens) elimination.
std::vector<Gate> givens_gates(const Eigen::MatrixXcd& u,
                               const std::vector<int>& qubits,
                               const std::vector<ControlBit>& ext) {
  const Eigen::Index d = u.rows();
  Eigen::MatrixXcd cur = u;
  struct TwoLevel {
    std::uint64_t a, b;
    Eigen::Matrix2cd g;
  };
  std::vector<TwoLevel> ops;
  for (Eigen::Index col = 0; col < d; ++col) {
    for (Eigen::Index row = d - 1; row > col; --row) {
      const Complex va = cur(col, col);
      const Complex vb = cur(row, col);
      if (std::abs(vb) < 1e-14) continue;
      const double nrm = std::sqrt(std::norm(va) + std::norm(vb));
      Eigen::Matrix2cd g;
      g << std::conj(va) / nrm, std::conj(vb) / nrm, -vb / nrm, va / nrm;
      // Rows (col, row) of cur get mixed by g.
      for (Eigen::Index j = col; j < d; ++j) {
        const Complex x = cur(col, j), y = cur(row, j);
        cur(col, j) = g(0, 0) * x + g(0, 1) * y;
        cur(row, j) = g(1, 0) * x + g(1, 1) * y;
      }
      ops.push_back({static_cast<std::uint64_t>(col),
                     static_cast<std::uint64_t>(row), g});
    }
  }
  std::vector<Gate> out =
      controlled_diagonal(cur.diagonal(), qubits, ext);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    emit_two_level(out, it->a, it->b, it->g.adjoint(), qubits, ext);
  }
  return out;
}

}  // namespace

EulerAngles zyz_angles(const Eigen::Matrix2cd& u) {
  EulerAngles e;
  const Complex det = u.determinant();
  e.phase = 0.5 * std::arg(det);
  const Eigen::Matrix2cd su = u * std::exp(-kI * e.phase);
  const double c = std::abs(su(0, 0));
  const double s = std::abs(su(1, 0));
  e.gamma = 2.0 * std::atan2(s, c);
  if (s < 1e-12) {
    e.alpha = -2.0 * std::arg(su(0, 0));
    e.beta = 0.0;
  } else if (c < 1e-12) {
    e.alpha = -std::arg(su(1, 0));
    e.beta = std::arg(su(1, 0));
  } else {
    const double sum = -2.0 * std::arg(su(0, 0));
    const double dif = -2.0 * std::arg(su(1, 0));
    e.alpha = 0.5 * (sum + dif);
    e.beta = 0.5 * (sum - dif);
  }
  return e;
}

std::vector<Gate> native_cx(int control, int target) {
  // Template computed once from the Cartan decomposition of CX on (0, 1).
  static const std::vector<Gate> tmpl = [] {
    Eigen::Matrix4cd cx = Eigen::Matrix4cd::Zero();
    // Control = qubit 0 (LSB), target = qubit 1.
    cx(0, 0) = 1;
    cx(3, 1) = 1;
    cx(2, 2) = 1;
    cx(1, 3) = 1;
    return kak_gates(cx, 0, 1);
  }();
  std::vector<Gate> out;
  out.reserve(tmpl.size());
  for (Gate g : tmpl) {
    for (int& q : g.qubits) q = (q == 0) ? control : target;
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Gate> multiplexed_rotation(GateKind kind,
                                       const std::vector<double>& angles,
                                       const std::vector<int>& controls,
                                       int target) {
  if (kind != GateKind::Ry && kind != GateKind::Rz) {
    throw std::invalid_argument("multiplexer supports Ry/Rz only");
  }
  const int k = static_cast<int>(controls.size());
  const std::uint64_t leaves = std::uint64_t{1} << k;
  if (angles.size() != leaves) {
    throw std::invalid_argument("multiplexer angle table size mismatch");
  }
  std::vector<Gate> out;
  if (k == 0) {
    emit_rot(out, kind, angles[0], target);
    return out;
  }
  bool all_zero = true;
  for (double a : angles) all_zero = all_zero && nearly_zero_angle(a);
  if (all_zero) return out;

  std::vector<double> beta(leaves, 0.0);
  for (std::uint64_t j = 0; j < leaves; ++j) {
    const std::uint64_t gray = j ^ (j >> 1);
    double acc = 0.0;
    for (std::uint64_t i = 0; i < leaves; ++i) {
      const int sign = (std::popcount(gray & i) & 1) ? -1 : 1;
      acc += sign * angles[i];
    }
    beta[j] = acc / static_cast<double>(leaves);
  }
  for (std::uint64_t j = 0; j < leaves; ++j) {
    emit_rot(out, kind, beta[j], target);
    const int ctrl_bit =
        (j + 1 == leaves) ? (k - 1) : lowest_set_bit(j + 1);
    const auto cx = native_cx(controls[static_cast<std::size_t>(ctrl_bit)], target);
    out.insert(out.end(), cx.begin(), cx.end());
  }
  return out;
}

std::vector<Gate> diagonal_gates(const std::vector<double>& phases,
                                 const std::vector<int>& qubits) {
  const std::size_t n = qubits.size();
  if (phases.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("diagonal phase table size mismatch");
  }
  std::vector<Gate> out;
  if (n == 0) return out;
  if (n == 1) {
    emit_rot(out, GateKind::Rz, phases[1] - phases[0], qubits[0]);
    return out;
  }
  const std::size_t half = std::size_t{1} << (n - 1);
  std::vector<double> mux(half), rem(half);
  for (std::size_t x = 0; x < half; ++x) {
    mux[x] = phases[x + half] - phases[x];
    rem[x] = 0.5 * (phases[x] + phases[x + half]);
  }
  std::vector<int> front(qubits.begin(), qubits.end() - 1);
  out = multiplexed_rotation(GateKind::Rz, mux, front, qubits.back());
  const auto rest = diagonal_gates(rem, front);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::vector<Gate> mc_unitary_gates(const Eigen::Matrix2cd& u, int target,
                                   const std::vector<ControlBit>& controls) {
  std::vector<Gate> out;
  if (controls.empty()) {
    emit_zyz(out, u, target);
    return out;
  }
  const std::size_t k = controls.size();
  std::uint64_t pattern = 0;
  std::vector<int> cq(k);
  for (std::size_t j = 0; j < k; ++j) {
    cq[j] = controls[j].qubit;
    if (controls[j].value) pattern |= std::uint64_t{1} << j;
  }
  const EulerAngles e = zyz_angles(u);
  std::vector<double> tab(std::size_t{1} << k, 0.0);

  tab[pattern] = e.alpha;
  auto a = multiplexed_rotation(GateKind::Rz, tab, cq, target);
  out.insert(out.end(), a.begin(), a.end());
  tab[pattern] = e.gamma;
  auto g = multiplexed_rotation(GateKind::Ry, tab, cq, target);
  out.insert(out.end(), g.begin(), g.end());
  tab[pattern] = e.beta;
  auto b = multiplexed_rotation(GateKind::Rz, tab, cq, target);
  out.insert(out.end(), b.begin(), b.end());
  if (std::abs(e.phase) > kAngleEps) {
    // Branch phase lives on the control register alone.
    std::vector<double> ph(std::size_t{1} << k, 0.0);
    ph[pattern] = e.phase;
    auto d = diagonal_gates(ph, cq);
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

std::vector<Gate> kak_gates(const Eigen::Matrix4cd& u, int q0, int q1) {
  static const Eigen::Matrix4cd m = magic_basis();
  static const Eigen::Matrix4cd xx = kron(pauli_x(), pauli_x());
  static const Eigen::Matrix4cd yy = kron(pauli_y(), pauli_y());
  static const Eigen::Matrix4cd zz = kron(pauli_z(), pauli_z());
  // Phase vector model: diag(M^dag P M) for P in {I, XX, YY, ZZ}.
  static const Eigen::Matrix4d gsys = [] {
    Eigen::Matrix4d g;
    g.col(0).setOnes();
    g.col(1) = (m.adjoint() * xx * m).diagonal().real();
    g.col(2) = (m.adjoint() * yy * m).diagonal().real();
    g.col(3) = (m.adjoint() * zz * m).diagonal().real();
    return g;
  }();

  const Complex det = u.determinant();
  const Eigen::Matrix4cd su = u * std::exp(-kI * (std::arg(det) / 4.0));
  const Eigen::Matrix4cd v = m.adjoint() * su * m;
  const Eigen::Matrix4cd w = v * v.transpose();
  const Eigen::Matrix4d wr = w.real();
  const Eigen::Matrix4d wi = w.imag();

  Eigen::Matrix4d q = Eigen::Matrix4d::Identity();
  bool found = false;
  const double lambdas[] = {0.0, 0.7, 1.3, 2.1, 2.9, 0.35, 1.05, 1.75, 2.45};
  for (double lam : lambdas) {
    const Eigen::Matrix4d s = std::cos(lam) * wr + std::sin(lam) * wi;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(s);
    const Eigen::Matrix4d qc = es.eigenvectors();
    const Eigen::Matrix4cd test = qc.transpose() * w * qc;
    double offdiag = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i != j) offdiag = std::max(offdiag, std::abs(test(i, j)));
      }
    }
    if (offdiag < 1e-9) {
      q = qc;
      found = true;
      break;
    }
  }
  if (!found) {
    throw std::runtime_error("two-qubit synthesis: joint diagonalization failed");
  }
  if (q.determinant() < 0) q.col(0) *= -1.0;

  const Eigen::Vector4cd d = (q.transpose() * w * q).diagonal();
  Eigen::Vector4d theta;
  for (int j = 0; j < 4; ++j) theta(j) = 0.5 * std::arg(d(j));
  // det(Delta) must be +1 so the residual local factor is special orthogonal.
  const double tsum = theta.sum();
  if (std::abs(std::remainder(tsum, 2.0 * kPi)) > kPi / 2.0) {
    theta(0) += (tsum > 0) ? -kPi : kPi;
  }
  Eigen::Vector4cd delta;
  for (int j = 0; j < 4; ++j) delta(j) = std::exp(kI * theta(j));

  const Eigen::Matrix4cd q2c =
      delta.cwiseInverse().asDiagonal() * q.transpose() * v;
  if (q2c.imag().norm() > 1e-7) {
    throw std::runtime_error("two-qubit synthesis: residual factor not real");
  }
  const Eigen::Matrix4d q2 = q2c.real();

  const Eigen::Matrix4cd l1 = m * q * m.adjoint();
  const Eigen::Matrix4cd l2 = m * q2 * m.adjoint();

  const Eigen::Vector4d coeff = gsys.colPivHouseholderQr().solve(theta);
  const double cx = coeff(1), cy = coeff(2), cz = coeff(3);

  auto factor_local = [](const Eigen::Matrix4cd& l, Eigen::Matrix2cd& slow,
                         Eigen::Matrix2cd& fast) {
    int bi = 0, bj = 0;
    double best = -1.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const double nrm = l.block<2, 2>(2 * i, 2 * j).norm();
        if (nrm > best) {
          best = nrm;
          bi = i;
          bj = j;
        }
      }
    }
    fast = l.block<2, 2>(2 * bi, 2 * bj) * (std::numbers::sqrt2 / best);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        slow(i, j) = (fast.adjoint() * l.block<2, 2>(2 * i, 2 * j)).trace() / 2.0;
      }
    }
  };
  Eigen::Matrix2cd a1, b1, a2, b2;
  factor_local(l1, a1, b1);
  factor_local(l2, a2, b2);

  std::vector<Gate> out;
  emit_zyz(out, b2, q0);
  emit_zyz(out, a2, q1);
  // exp(i c XX) = Rxx(-2c); YY and ZZ realized by local conjugation of Rxx.
  if (!nearly_zero_angle(-2.0 * cx)) {
    out.push_back(make_rotation(GateKind::Rxx, -2.0 * cx, {q0, q1}));
  }
  if (!nearly_zero_angle(-2.0 * cy)) {
    out.push_back(make_rotation(GateKind::Rz, -kPi / 2.0, {q0}));
    out.push_back(make_rotation(GateKind::Rz, -kPi / 2.0, {q1}));
    out.push_back(make_rotation(GateKind::Rxx, -2.0 * cy, {q0, q1}));
    out.push_back(make_rotation(GateKind::Rz, kPi / 2.0, {q0}));
    out.push_back(make_rotation(GateKind::Rz, kPi / 2.0, {q1}));
  }
  if (!nearly_zero_angle(-2.0 * cz)) {
    out.push_back(make_rotation(GateKind::Ry, kPi / 2.0, {q0}));
    out.push_back(make_rotation(GateKind::Ry, kPi / 2.0, {q1}));
    out.push_back(make_rotation(GateKind::Rxx, -2.0 * cz, {q0, q1}));
    out.push_back(make_rotation(GateKind::Ry, -kPi / 2.0, {q0}));
    out.push_back(make_rotation(GateKind::Ry, -kPi / 2.0, {q1}));
  }
  emit_zyz(out, b1, q0);
  emit_zyz(out, a1, q1);

  // Self-check on the local pair before remapping to caller qubits.
  std::vector<Gate> local;
  local.reserve(out.size());
  for (Gate g : out) {
    for (int& qq : g.qubits) qq = (qq == q0) ? 0 : 1;
    local.push_back(std::move(g));
  }
  if (phase_distance(gates_unitary(local, 2), u) > 1e-8) {
    throw std::runtime_error("two-qubit synthesis residual too large");
  }
  return out;
}

QuantumCircuit decompose_to_native(const QuantumCircuit& circuit) {
  QuantumCircuit out = circuit.shell();
  const auto& gates = circuit.gates;
  std::size_t i = 0;
  while (i < gates.size()) {
    const Gate& g = gates[i];

    if (is_rotation(g.kind) && g.controls.empty()) {
      out.append(g);
      ++i;
      continue;
    }

    if ((g.kind == GateKind::Ry || g.kind == GateKind::Rz) &&
        !g.controls.empty()) {
      // Fuse a run of controlled rotations over the same target and control
      // qubit set into one multiplexer.
      std::vector<int> cq;
      for (const ControlBit& c : g.controls) cq.push_back(c.qubit);
      std::sort(cq.begin(), cq.end());
      const std::set<int> cset(cq.begin(), cq.end());
      std::vector<double> tab(std::size_t{1} << cq.size(), 0.0);
      std::size_t j = i;
      for (; j < gates.size(); ++j) {
        const Gate& h = gates[j];
        if (h.kind != g.kind || h.qubits != g.qubits || h.controls.empty()) break;
        std::set<int> hset;
        for (const ControlBit& c : h.controls) hset.insert(c.qubit);
        if (hset != cset) break;
        std::uint64_t p = 0;
        for (const ControlBit& c : h.controls) {
          if (c.value) {
            const auto pos = std::lower_bound(cq.begin(), cq.end(), c.qubit);
            p |= std::uint64_t{1} << (pos - cq.begin());
          }
        }
        tab[p] += h.angle;
      }
      out.append_all(multiplexed_rotation(g.kind, tab, cq, g.qubits[0]));
      i = j;
      continue;
    }

    std::vector<Gate> emitted;
    switch (g.kind) {
      case GateKind::Rx:
        emitted = mc_unitary_gates(g.matrix(), g.qubits[0], g.controls);
        break;
      case GateKind::H:
        if (g.controls.empty()) {
          emitted.push_back(make_rotation(GateKind::Rz, kPi, {g.qubits[0]}));
          emitted.push_back(
              make_rotation(GateKind::Ry, kPi / 2.0, {g.qubits[0]}));
        } else {
          emitted = mc_unitary_gates(g.matrix(), g.qubits[0], g.controls);
        }
        break;
      case GateKind::X:
        emitted = mc_x_gates(g.qubits[0], g.controls);
        break;
      case GateKind::Swap:
        if (g.controls.empty()) {
          emitted = native_cx(g.qubits[0], g.qubits[1]);
          auto b = native_cx(g.qubits[1], g.qubits[0]);
          emitted.insert(emitted.end(), b.begin(), b.end());
          auto c = native_cx(g.qubits[0], g.qubits[1]);
          emitted.insert(emitted.end(), c.begin(), c.end());
        } else {
          emitted = givens_gates(g.matrix(), g.qubits, g.controls);
        }
        break;
      case GateKind::Rxx:
        emitted = givens_gates(g.matrix(), g.qubits, g.controls);
        break;
      case GateKind::Unitary: {
        const Eigen::MatrixXcd& u = g.block->entries;
        if (is_diagonal(u)) {
          emitted = controlled_diagonal(u.diagonal(), g.qubits, g.controls);
        } else if (u.rows() == 2) {
          emitted = mc_unitary_gates(u, g.qubits[0], g.controls);
        } else if (u.rows() == 4 && g.controls.empty()) {
          emitted = kak_gates(u, g.qubits[0], g.qubits[1]);
        } else {
          emitted = givens_gates(u, g.qubits, g.controls);
        }
        break;
      }
      default:
        throw std::logic_error("unhandled gate kind in decomposition");
    }
    out.append_all(emitted);
    ++i;
  }
  return out;
}

}  // namespace qlsw
