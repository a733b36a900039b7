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

#include "qlsw/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qlsw/decompose.hpp"

namespace qlsw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool zero_mod_2pi(double a) {
  return std::abs(std::remainder(a, kTwoPi)) < 1e-12;
}

bool same_support(const Gate& a, const Gate& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == GateKind::Rxx) {
    const auto lo = std::minmax(a.qubits[0], a.qubits[1]);
    const auto hi = std::minmax(b.qubits[0], b.qubits[1]);
    return lo == hi;
  }
  return a.qubits == b.qubits;
}

bool touches(const Gate& g, int q) {
  return std::find(g.qubits.begin(), g.qubits.end(), q) != g.qubits.end();
}

bool disjoint(const Gate& a, const Gate& b) {
  for (int q : a.qubits) {
    if (touches(b, q)) return false;
  }
  return true;
}

/// Sound commutation subset: disjoint supports, X-axis gates sharing a qubit,
/// and equal-axis single-qubit rotations.
bool commutes(const Gate& a, const Gate& b) {
  if (disjoint(a, b)) return true;
  auto x_axis = [](GateKind k) {
    return k == GateKind::Rx || k == GateKind::Rxx;
  };
  if (x_axis(a.kind) && x_axis(b.kind)) return true;
  if (a.kind == b.kind && a.qubits.size() == 1 && b.qubits.size() == 1 &&
      a.qubits == b.qubits) {
    return true;
  }
  return false;
}

void require_native(const QuantumCircuit& circuit) {
  for (const Gate& g : circuit.gates) {
    if (!is_rotation(g.kind) || !g.controls.empty()) {
      throw std::invalid_argument("optimizer requires a native circuit");
    }
  }
}

QuantumCircuit with_gates(const QuantumCircuit& shell_of,
                          std::vector<Gate> gates) {
  QuantumCircuit c = shell_of.shell();
  c.gates = std::move(gates);
  return c;
}

QuantumCircuit pass_cancel(const QuantumCircuit& circuit) {
  std::vector<Gate> gates = circuit.gates;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < gates.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < gates.size(); ++j) {
        if (same_support(gates[i], gates[j]) &&
            zero_mod_2pi(gates[i].angle + gates[j].angle)) {
          gates.erase(gates.begin() + static_cast<long>(j));
          gates.erase(gates.begin() + static_cast<long>(i));
          changed = true;
          break;
        }
        if (!disjoint(gates[i], gates[j])) break;
      }
    }
  }
  return with_gates(circuit, std::move(gates));
}

QuantumCircuit pass_merge(const QuantumCircuit& circuit) {
  std::vector<Gate> gates = circuit.gates;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < gates.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < gates.size(); ++j) {
        if (same_support(gates[i], gates[j])) {
          gates[i].angle += gates[j].angle;
          gates.erase(gates.begin() + static_cast<long>(j));
          if (zero_mod_2pi(gates[i].angle)) {
            gates.erase(gates.begin() + static_cast<long>(i));
          }
          changed = true;
          break;
        }
        if (!disjoint(gates[i], gates[j])) break;
      }
    }
  }
  return with_gates(circuit, std::move(gates));
}

QuantumCircuit pass_commute(const QuantumCircuit& circuit) {
  std::vector<Gate> gates = circuit.gates;
  bool changed = true;
  int guard = 0;
  while (changed && guard++ < 1000) {
    changed = false;
    for (std::size_t i = 0; i < gates.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < gates.size(); ++j) {
        if (same_support(gates[i], gates[j])) {
          gates[j].angle += gates[i].angle;
          gates.erase(gates.begin() + static_cast<long>(i));
          if (zero_mod_2pi(gates[j - 1].angle)) {
            gates.erase(gates.begin() + static_cast<long>(j - 1));
          }
          changed = true;
          break;
        }
        if (!commutes(gates[i], gates[j])) break;
      }
    }
  }
  return with_gates(circuit, std::move(gates));
}

QuantumCircuit pass_peephole(const QuantumCircuit& circuit) {
  std::vector<Gate> out;
  const auto& gates = circuit.gates;
  std::size_t i = 0;
  while (i < gates.size()) {
    // Grow a maximal run whose combined support fits in two qubits.
    std::vector<int> support = gates[i].qubits;
    std::sort(support.begin(), support.end());
    std::size_t j = i + 1;
    bool has_2q = gates[i].kind == GateKind::Rxx;
    while (j < gates.size()) {
      std::vector<int> s = support;
      for (int q : gates[j].qubits) {
        if (std::find(s.begin(), s.end(), q) == s.end()) s.push_back(q);
      }
      if (s.size() > 2) break;
      support = s;
      has_2q = has_2q || gates[j].kind == GateKind::Rxx;
      ++j;
    }
    if (has_2q && support.size() == 2 && j - i >= 2) {
      std::sort(support.begin(), support.end());
      const int q0 = support[0], q1 = support[1];
      std::vector<Gate> seg;
      for (std::size_t k = i; k < j; ++k) {
        Gate g = gates[k];
        for (int& q : g.qubits) q = (q == q0) ? 0 : 1;
        seg.push_back(std::move(g));
      }
      QuantumCircuit tmp;
      tmp.num_qubits = 2;
      tmp.gates = seg;
      const Eigen::Matrix4cd u = circuit_unitary(tmp, 2).entries;
      std::vector<Gate> resynth = kak_gates(u, q0, q1);
      if (resynth.size() < j - i) {
        out.insert(out.end(), resynth.begin(), resynth.end());
      } else {
        out.insert(out.end(), gates.begin() + static_cast<long>(i),
                   gates.begin() + static_cast<long>(j));
      }
    } else {
      out.insert(out.end(), gates.begin() + static_cast<long>(i),
                 gates.begin() + static_cast<long>(j));
    }
    i = j;
  }
  return with_gates(circuit, std::move(out));
}

std::map<std::uint64_t, double> state_distribution(const Statevector& s) {
  std::map<std::uint64_t, double> p;
  for (Eigen::Index i = 0; i < s.amps.size(); ++i) {
    const double v = std::norm(s.amps(i));
    if (v > 0.0) p[static_cast<std::uint64_t>(i)] = v;
  }
  return p;
}

}  // namespace

const char* pass_name(PassId id) {
  switch (id) {
    case PassId::cancel_inverse_pairs: return "cancel_inverse_pairs";
    case PassId::merge_rotations: return "merge_rotations";
    case PassId::commute_and_cancel: return "commute_and_cancel";
    case PassId::peephole_2q_resynthesis: return "peephole_2q_resynthesis";
  }
  return "?";
}

PassPipeline PassPipeline::make(std::vector<PassId> passes,
                                bool repeat_until_fixed_point) {
  for (std::size_t i = 1; i < passes.size(); ++i) {
    if (passes[i] == passes[i - 1]) {
      throw std::invalid_argument("pipeline repeats a pass back to back");
    }
  }
  return PassPipeline{std::move(passes), repeat_until_fixed_point};
}

PassPipeline PassPipeline::standard() {
  return make({PassId::cancel_inverse_pairs, PassId::merge_rotations,
               PassId::commute_and_cancel, PassId::peephole_2q_resynthesis});
}

QuantumCircuit run_pass(const QuantumCircuit& circuit, PassId id) {
  require_native(circuit);
  switch (id) {
    case PassId::cancel_inverse_pairs: return pass_cancel(circuit);
    case PassId::merge_rotations: return pass_merge(circuit);
    case PassId::commute_and_cancel: return pass_commute(circuit);
    case PassId::peephole_2q_resynthesis: return pass_peephole(circuit);
  }
  throw std::logic_error("unknown pass");
}

double verify_equivalence(const QuantumCircuit& original,
                          const QuantumCircuit& optimized) {
  if (original.num_qubits != optimized.num_qubits) {
    throw std::invalid_argument("qubit count mismatch");
  }
  const Eigen::MatrixXcd a = circuit_unitary(original).entries;
  const Eigen::MatrixXcd b = circuit_unitary(optimized).entries;
  const Eigen::MatrixXcd prod = a * b.adjoint();
  const Complex tr = prod.trace();
  double phi = std::arg(tr);
  const Eigen::MatrixXcd ident =
      Eigen::MatrixXcd::Identity(prod.rows(), prod.cols());
  const double residual = (prod - std::exp(Complex(0, phi)) * ident).norm();
  if (residual >= 1e-8) {
    throw std::runtime_error("circuits are not phase-equivalent (residual " +
                             std::to_string(residual) + ")");
  }
  if (phi < 0) phi += kTwoPi;
  return phi;
}

double classical_fidelity(const std::map<std::uint64_t, double>& p,
                          const std::map<std::uint64_t, double>& q) {
  auto total = [](const std::map<std::uint64_t, double>& m) {
    double t = 0.0;
    for (const auto& [k, v] : m) t += v;
    return t;
  };
  if (std::abs(total(p) - 1.0) > 1e-9 || std::abs(total(q) - 1.0) > 1e-9) {
    throw std::invalid_argument("distributions must each sum to 1");
  }
  double f = 0.0;
  for (const auto& [k, v] : p) {
    const auto it = q.find(k);
    if (it != q.end()) f += std::sqrt(v * it->second);
  }
  return f;
}

double depth_compression(int d_in, int d_out) {
  if (d_in <= 0) throw std::invalid_argument("input depth must be positive");
  return std::abs(d_out - d_in) / static_cast<double>(d_in) * 100.0;
}

OptimizeResult optimize(const QuantumCircuit& circuit,
                        const PassPipeline& pipeline) {
  require_native(circuit);
  OptimizeResult res;
  res.before = metrics(circuit);
  QuantumCircuit cur = circuit;
  for (int round = 0; round < kMaxFixedPointRounds; ++round) {
    const std::size_t count_before = cur.gates.size();
    for (PassId id : pipeline.passes) cur = run_pass(cur, id);
    ++res.rounds;
    if (!pipeline.repeat_until_fixed_point || cur.gates.size() == count_before) {
      break;
    }
  }
  res.after = metrics(cur);
  if (res.after.depth > res.before.depth) {
    cur = circuit;
    res.after = res.before;
  }

  if (circuit.num_qubits <= kDefaultUnitaryCap) {
    res.phase = verify_equivalence(circuit, cur);
    res.fidelity = 1.0;
  } else {
    std::mt19937_64 rng(0x5eedULL);
    const std::uint64_t dim = std::uint64_t{1} << circuit.num_qubits;
    double worst = 1.0;
    for (int trial = 0; trial < 5; ++trial) {
      const std::uint64_t basis = rng() % dim;
      Statevector sa = init_basis_state(circuit.num_qubits, basis);
      Statevector sb = init_basis_state(circuit.num_qubits, basis);
      simulate(circuit, sa);
      simulate(cur, sb);
      worst = std::min(
          worst, classical_fidelity(state_distribution(sa),
                                    state_distribution(sb)));
    }
    res.fidelity = worst;
    if (worst < 1.0 - 1e-6) {
      throw std::runtime_error("statistical equivalence check failed (fidelity " +
                               std::to_string(worst) + ")");
    }
  }
  res.compression_pct =
      res.before.depth > 0 ? depth_compression(res.before.depth, res.after.depth)
                           : 0.0;
  res.circuit = std::move(cur);
  return res;
}

PassPipeline pipeline_order_search(const QuantumCircuit& circuit) {
  std::vector<PassId> ids = {
      PassId::cancel_inverse_pairs, PassId::merge_rotations,
      PassId::commute_and_cancel, PassId::peephole_2q_resynthesis};
  std::sort(ids.begin(), ids.end());
  PassPipeline best = PassPipeline::standard();
  int best_depth = -1;
  do {
    PassPipeline p = PassPipeline::make(ids);
    const OptimizeResult r = optimize(circuit, p);
    if (best_depth < 0 || r.after.depth < best_depth) {
      best_depth = r.after.depth;
      best = p;
    }
  } while (std::next_permutation(ids.begin(), ids.end()));
  return best;
}

}  // namespace qlsw
