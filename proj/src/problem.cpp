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

#include "qlsw/problem.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace qlsw {

namespace {

using nlohmann::json;

Eigen::Index next_power_of_two(Eigen::Index n) {
  Eigen::Index p = 1;
  while (p < n) p *= 2;
  return p;
}

std::complex<double> parse_entry(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw std::invalid_argument("matrix entry must be a number or [re, im]");
}

json entry_to_json(const std::complex<double>& v) {
  if (v.imag() == 0.0) return json(v.real());
  return json::array({v.real(), v.imag()});
}

}  // namespace

ProblemInstance make_problem(std::string label, Eigen::MatrixXcd a,
                             Eigen::VectorXcd b,
                             std::optional<double> reference_e_corr) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("matrix must be square");
  }
  if (a.rows() != b.size()) {
    throw std::invalid_argument("matrix/vector dimension mismatch");
  }
  const double asym = (a - a.adjoint()).norm();
  if (asym > 1e-10 * std::max(1.0, a.norm())) {
    throw std::invalid_argument("matrix is not Hermitian (max asymmetry " +
                                std::to_string(asym) + ")");
  }

  ProblemInstance p;
  p.label = std::move(label);
  const Eigen::Index n = a.rows();
  const Eigen::Index padded = next_power_of_two(n);
  if (padded != n) {
    Eigen::MatrixXcd ap = Eigen::MatrixXcd::Identity(padded, padded);
    ap.topLeftCorner(n, n) = a;
    Eigen::VectorXcd bp = Eigen::VectorXcd::Zero(padded);
    bp.head(n) = b;
    p.a = std::move(ap);
    p.b = std::move(bp);
    p.warning = "padded from dimension " + std::to_string(n) + " to " +
                std::to_string(padded) +
                " with unit diagonal; padding eigenvalues stay representable "
                "only if d_tilde_min <= 1";
  } else {
    p.a = std::move(a);
    p.b = std::move(b);
  }
  p.reference_e_corr = reference_e_corr;
  p.n_b = 0;
  while ((Eigen::Index{1} << p.n_b) < p.a.rows()) ++p.n_b;
  return p;
}

ProblemInstance problem_from_json_text(const std::string& text) {
  const json j = json::parse(text);
  const auto& rows = j.at("matrix");
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw std::invalid_argument("matrix rows have inconsistent lengths");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      a(i, k) = parse_entry(row[static_cast<std::size_t>(k)]);
    }
  }
  const auto& bj = j.at("b");
  if (static_cast<Eigen::Index>(bj.size()) != n) {
    throw std::invalid_argument("right-hand side length mismatch");
  }
  Eigen::VectorXcd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    b(i) = parse_entry(bj[static_cast<std::size_t>(i)]);
  }
  std::optional<double> ref;
  if (j.contains("reference_e_corr")) {
    ref = j.at("reference_e_corr").get<double>();
  }
  return make_problem(j.value("label", "unnamed"), std::move(a), std::move(b),
                      ref);
}

ProblemInstance load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return problem_from_json_text(text);
}

std::string problem_to_json_text(const ProblemInstance& p) {
  json j;
  j["label"] = p.label;
  json rows = json::array();
  for (Eigen::Index i = 0; i < p.dim(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < p.dim(); ++k) {
      row.push_back(entry_to_json(p.a(i, k)));
    }
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  json bj = json::array();
  for (Eigen::Index i = 0; i < p.dim(); ++i) bj.push_back(entry_to_json(p.b(i)));
  j["b"] = std::move(bj);
  if (p.reference_e_corr) j["reference_e_corr"] = *p.reference_e_corr;
  return j.dump(2);
}

void save_problem(const std::string& path, const ProblemInstance& p) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write problem file: " + path);
  out << problem_to_json_text(p) << "\n";
}

double oracle_e_corr(const ProblemInstance& p) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p.a);
  const double lmin = es.eigenvalues().cwiseAbs().minCoeff();
  const double lmax = es.eigenvalues().cwiseAbs().maxCoeff();
  if (lmin == 0.0 || lmax / lmin > 1e12) {
    throw std::runtime_error("matrix is numerically singular");
  }
  const Eigen::VectorXcd x = p.a.ldlt().solve(p.b);
  return -(p.b.dot(x)).real();
}

double pfd(double e_oracle, double e_method) {
  if (e_oracle == 0.0) throw std::invalid_argument("oracle energy is zero");
  return (e_oracle - e_method) / e_oracle * 100.0;
}

ProblemInstance make_random_spd_instance(int dim, std::uint64_t seed,
                                         double offdiag_scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> diag(0.5, 2.0);
  std::uniform_real_distribution<double> off(-1.0, 1.0);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const double v = offdiag_scale * off(rng) / dim;
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  for (int i = 0; i < dim; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < dim; ++j) {
      if (j != i) rowsum += std::abs(a(i, j));
    }
    a(i, i) = rowsum + diag(rng);
  }
  Eigen::VectorXcd b(dim);
  std::normal_distribution<double> n01(0.0, 1.0);
  for (int i = 0; i < dim; ++i) b(i) = n01(rng);
  b.normalize();
  return make_problem("random-spd-" + std::to_string(dim) + "-" +
                          std::to_string(seed),
                      std::move(a), std::move(b));
}

ProblemInstance make_dyadic_instance(int dim, int n_r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::uint64_t levels = std::uint64_t{1} << n_r;
  std::uniform_int_distribution<std::uint64_t> pick(1, levels - 1);
  Eigen::VectorXd lam(dim);
  lam(0) = static_cast<double>(levels - 1) / static_cast<double>(levels);
  for (int i = 1; i < dim; ++i) {
    lam(i) = static_cast<double>(pick(rng)) / static_cast<double>(levels);
  }

  std::normal_distribution<double> n01(0.0, 1.0);
  Eigen::MatrixXd g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = n01(rng);
  }
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
  const Eigen::MatrixXd a = q * lam.asDiagonal() * q.transpose();

  Eigen::VectorXcd b(dim);
  for (int i = 0; i < dim; ++i) b(i) = n01(rng);
  b.normalize();
  return make_problem("dyadic-" + std::to_string(dim) + "-" +
                          std::to_string(seed),
                      a.cast<std::complex<double>>(), std::move(b));
}

}  // namespace qlsw
