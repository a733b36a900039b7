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

#include "qlsw/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qlsw {

namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::Matrix2cd rot_matrix(GateKind kind, double angle) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  Eigen::Matrix2cd m;
  switch (kind) {
    case GateKind::Rx:
      m << c, -kI * s, -kI * s, c;
      break;
    case GateKind::Ry:
      m << c, -s, s, c;
      break;
    case GateKind::Rz:
      m << std::exp(-kI * (angle / 2.0)), 0, 0, std::exp(kI * (angle / 2.0));
      break;
    default:
      throw std::logic_error("not a single-qubit rotation");
  }
  return m;
}

Eigen::Matrix4cd rxx_matrix(double angle) {
  const double c = std::cos(angle / 2.0);
  const Complex is = -kI * std::sin(angle / 2.0);
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = c;
  m(1, 1) = c;
  m(2, 2) = c;
  m(3, 3) = c;
  m(0, 3) = is;
  m(3, 0) = is;
  m(1, 2) = is;
  m(2, 1) = is;
  return m;
}

void check_gate(const Gate& g) {
  const std::size_t expected =
      (g.kind == GateKind::Rxx || g.kind == GateKind::Swap) ? 2
      : g.kind == GateKind::Unitary
          ? static_cast<std::size_t>(g.block ? g.block->num_qubits() : -1)
          : 1;
  if (g.kind == GateKind::Unitary && !g.block) {
    throw std::invalid_argument("unitary gate without a block");
  }
  if (g.qubits.size() != expected) {
    throw std::invalid_argument(std::string("gate ") + kind_name(g.kind) +
                                " has wrong operand count");
  }
  for (int q : g.qubits) {
    for (const ControlBit& c : g.controls) {
      if (c.qubit == q) {
        throw std::invalid_argument("gate operand overlaps its control set");
      }
    }
  }
}

}  // namespace

bool is_rotation(GateKind kind) {
  return kind == GateKind::Rx || kind == GateKind::Ry || kind == GateKind::Rz ||
         kind == GateKind::Rxx;
}

const char* kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::Rx: return "RX";
    case GateKind::Ry: return "RY";
    case GateKind::Rz: return "RZ";
    case GateKind::Rxx: return "RXX";
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::Swap: return "SWAP";
    case GateKind::Unitary: return "UNITARY";
  }
  return "?";
}

Gate Gate::inverse() const {
  Gate g = *this;
  if (is_rotation(kind)) {
    g.angle = -angle;
  } else if (kind == GateKind::Unitary) {
    g.block = std::make_shared<UnitaryBlock>(block->adjoint());
  }
  // X, H, Swap are self-inverse.
  return g;
}

Eigen::MatrixXcd Gate::matrix() const {
  switch (kind) {
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
      return rot_matrix(kind, angle);
    case GateKind::Rxx:
      return rxx_matrix(angle);
    case GateKind::X: {
      Eigen::Matrix2cd m;
      m << 0, 1, 1, 0;
      return m;
    }
    case GateKind::H: {
      Eigen::Matrix2cd m;
      const double r = 1.0 / std::numbers::sqrt2;
      m << r, r, r, -r;
      return m;
    }
    case GateKind::Swap: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = 1;
      m(1, 2) = 1;
      m(2, 1) = 1;
      m(3, 3) = 1;
      return m;
    }
    case GateKind::Unitary:
      return block->entries;
  }
  throw std::logic_error("unreachable");
}

Gate make_rotation(GateKind kind, double angle, std::vector<int> qubits,
                   std::vector<ControlBit> controls, std::string tag) {
  if (!is_rotation(kind)) throw std::invalid_argument("kind carries no angle");
  Gate g{kind, angle, std::move(qubits), std::move(controls), nullptr,
         std::move(tag)};
  check_gate(g);
  return g;
}

Gate make_gate(GateKind kind, std::vector<int> qubits,
               std::vector<ControlBit> controls, std::string tag) {
  if (is_rotation(kind) || kind == GateKind::Unitary) {
    throw std::invalid_argument("make_gate is for X/H/Swap");
  }
  Gate g{kind, 0.0, std::move(qubits), std::move(controls), nullptr,
         std::move(tag)};
  check_gate(g);
  return g;
}

Gate make_unitary(std::shared_ptr<const UnitaryBlock> block,
                  std::vector<int> qubits, std::vector<ControlBit> controls,
                  std::string tag) {
  Gate g{GateKind::Unitary, 0.0, std::move(qubits), std::move(controls),
         std::move(block), std::move(tag)};
  check_gate(g);
  return g;
}

std::vector<int> Register::all() const {
  std::vector<int> out(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) out[static_cast<std::size_t>(i)] = start + i;
  return out;
}

Register QuantumCircuit::add_register(const std::string& name, int size) {
  if (registers.count(name)) {
    throw std::invalid_argument("register already declared: " + name);
  }
  Register r{num_qubits, size};
  registers[name] = r;
  num_qubits += size;
  return r;
}

void QuantumCircuit::append(Gate g) {
  check_gate(g);
  for (int q : g.qubits) {
    if (q < 0 || q >= num_qubits) {
      throw std::invalid_argument("gate references undeclared qubit " +
                                  std::to_string(q));
    }
  }
  for (const ControlBit& c : g.controls) {
    if (c.qubit < 0 || c.qubit >= num_qubits) {
      throw std::invalid_argument("control references undeclared qubit " +
                                  std::to_string(c.qubit));
    }
  }
  gates.push_back(std::move(g));
}

void QuantumCircuit::append_all(const std::vector<Gate>& gs) {
  for (const Gate& g : gs) append(g);
}

QuantumCircuit QuantumCircuit::inverse() const {
  QuantumCircuit inv = shell();
  inv.gates.reserve(gates.size());
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    inv.gates.push_back(it->inverse());
  }
  return inv;
}

QuantumCircuit QuantumCircuit::shell() const {
  QuantumCircuit c;
  c.num_qubits = num_qubits;
  c.registers = registers;
  return c;
}

CircuitMetrics metrics(const QuantumCircuit& circuit) {
  CircuitMetrics m;
  m.num_qubits = circuit.num_qubits;
  std::vector<int> level(static_cast<std::size_t>(circuit.num_qubits), 0);
  for (const Gate& g : circuit.gates) {
    if (!is_rotation(g.kind) || !g.controls.empty()) {
      throw std::invalid_argument(
          std::string("non-native gate in metrics(): ") + kind_name(g.kind) +
          "; run decompose_to_native first");
    }
    int layer = 0;
    for (int q : g.qubits) layer = std::max(layer, level[static_cast<std::size_t>(q)]);
    ++layer;
    for (int q : g.qubits) level[static_cast<std::size_t>(q)] = layer;
    m.depth = std::max(m.depth, layer);
    ++m.gate_count;
    if (g.kind == GateKind::Rxx) ++m.two_qubit_count;
  }
  return m;
}

void simulate(const QuantumCircuit& circuit, Statevector& state) {
  if (state.num_qubits != circuit.num_qubits) {
    throw std::invalid_argument("state size does not match circuit");
  }
  for (const Gate& g : circuit.gates) {
    apply_unitary(state, g.matrix(), g.qubits, g.controls);
  }
}

Statevector simulate_from_zero(const QuantumCircuit& circuit) {
  Statevector s = init_basis_state(circuit.num_qubits, 0);
  simulate(circuit, s);
  return s;
}

UnitaryBlock circuit_unitary(const QuantumCircuit& circuit, int qubit_cap) {
  if (circuit.num_qubits > qubit_cap) {
    throw std::invalid_argument(
        "circuit_unitary: " + std::to_string(circuit.num_qubits) +
        " qubits exceeds cap " + std::to_string(qubit_cap) +
        "; use statevector spot checks instead");
  }
  const Eigen::Index dim = Eigen::Index{1} << circuit.num_qubits;
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Statevector s =
        init_basis_state(circuit.num_qubits, static_cast<std::uint64_t>(col));
    simulate(circuit, s);
    u.col(col) = s.amps;
  }
  return UnitaryBlock::from_matrix(std::move(u));
}

UnitaryBlock evolution_unitary(const Eigen::MatrixXcd& a, double t) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix not square");
  if ((a - a.adjoint()).norm() > kAmplitudeTol * std::max<double>(1.0, a.norm())) {
    throw std::invalid_argument("matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  const Eigen::VectorXd lam = es.eigenvalues();
  Eigen::VectorXcd phases(lam.size());
  for (Eigen::Index j = 0; j < lam.size(); ++j) {
    phases(j) = std::exp(kI * (lam(j) * t));
  }
  Eigen::MatrixXcd u =
      es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return UnitaryBlock::from_matrix(std::move(u));
}

void write_circuit(std::ostream& os, const QuantumCircuit& circuit) {
  os << "qubits " << circuit.num_qubits << "\n";
  for (const auto& [name, reg] : circuit.registers) {
    os << "register " << name << " " << reg.start << " " << reg.size << "\n";
  }
  os.precision(17);
  for (const Gate& g : circuit.gates) {
    if (g.kind == GateKind::Unitary) {
      throw std::invalid_argument("opaque unitary gates are not serializable");
    }
    os << kind_name(g.kind);
    if (is_rotation(g.kind)) os << " " << g.angle;
    os << " ";
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      if (i) os << ",";
      os << g.qubits[i];
    }
    for (const ControlBit& c : g.controls) {
      os << " ctrl=" << c.qubit << ":" << c.value;
    }
    os << "\n";
  }
}

QuantumCircuit read_circuit(std::istream& is) {
  QuantumCircuit c;
  std::string line;
  bool have_qubits = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "qubits") {
      ls >> c.num_qubits;
      have_qubits = true;
      continue;
    }
    if (head == "register") {
      std::string name;
      Register r;
      ls >> name >> r.start >> r.size;
      c.registers[name] = r;
      continue;
    }
    GateKind kind;
    if (head == "RX") kind = GateKind::Rx;
    else if (head == "RY") kind = GateKind::Ry;
    else if (head == "RZ") kind = GateKind::Rz;
    else if (head == "RXX") kind = GateKind::Rxx;
    else if (head == "X") kind = GateKind::X;
    else if (head == "H") kind = GateKind::H;
    else if (head == "SWAP") kind = GateKind::Swap;
    else throw std::invalid_argument("unknown gate kind: " + head);

    Gate g;
    g.kind = kind;
    if (is_rotation(kind)) ls >> g.angle;
    std::string operands;
    ls >> operands;
    std::istringstream qs(operands);
    std::string tok;
    while (std::getline(qs, tok, ',')) g.qubits.push_back(std::stoi(tok));
    std::string rest;
    while (ls >> rest) {
      if (rest.rfind("ctrl=", 0) != 0) {
        throw std::invalid_argument("bad token in circuit file: " + rest);
      }
      const auto colon = rest.find(':', 5);
      if (colon == std::string::npos) {
        throw std::invalid_argument("bad control spec: " + rest);
      }
      g.controls.push_back({std::stoi(rest.substr(5, colon - 5)),
                            std::stoi(rest.substr(colon + 1))});
    }
    if (!have_qubits) throw std::invalid_argument("missing qubits header");
    c.append(std::move(g));
  }
  return c;
}

std::string circuit_to_string(const QuantumCircuit& circuit) {
  std::ostringstream os;
  write_circuit(os, circuit);
  return os.str();
}

QuantumCircuit circuit_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_circuit(is);
}

}  // namespace qlsw
