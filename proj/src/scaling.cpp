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

#include "qlsw/scaling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qlsw {

namespace {

void check_hermitian(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("matrix not square");
  }
  if ((a - a.adjoint()).norm() > 1e-10 * std::max(1.0, a.norm())) {
    throw std::invalid_argument("matrix is not Hermitian");
  }
}

std::pair<double, double> diag_extremes(const Eigen::MatrixXcd& a) {
  double dmin = a(0, 0).real();
  double dmax = dmin;
  for (Eigen::Index i = 1; i < a.rows(); ++i) {
    const double d = a(i, i).real();
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  return {dmin, dmax};
}

double grid_cap(int n_r) {
  const double grid = std::ldexp(1.0, -n_r);
  return 1.0 - grid;
}

}  // namespace

const char* strategy_name(ScalingStrategy s) {
  switch (s) {
    case ScalingStrategy::adapt: return "adapt";
    case ScalingStrategy::perturbed: return "perturbed";
    case ScalingStrategy::exact: return "exact";
  }
  return "?";
}

ScalingPlan adapt_scaling(const Eigen::MatrixXcd& a, int n_r,
                          std::optional<double> d_tilde_min) {
  check_hermitian(a);
  if (n_r < 1) throw std::invalid_argument("need at least one clock qubit");
  const auto [dmin, dmax] = diag_extremes(a);
  if (dmin <= 0.0) {
    throw std::invalid_argument("diagonal entries must be positive");
  }
  const double grid = std::ldexp(1.0, -n_r);
  const double dt = d_tilde_min.value_or(dmin);
  if (dt <= 0.0) throw std::invalid_argument("d_tilde_min must be positive");

  if (grid * dmax / dt >= 1.0) {
    const int needed =
        static_cast<int>(std::ceil(std::log2(dmax / dt))) + 1;
    throw std::invalid_argument(
        "largest diagonal entry not representable at n_r=" +
        std::to_string(n_r) + "; need n_r >= " + std::to_string(needed));
  }

  ScalingPlan plan;
  plan.strategy = ScalingStrategy::adapt;
  plan.n_r = n_r;
  plan.d_tilde_min = dt;
  plan.s = grid / dt;
  plan.c = grid;
  if (dmin < grid * dmax) {
    plan.warning = "estimate window is empty: d_min < 2^-n_r * d_max";
  } else if (dt > dmin || dt <= grid * dmax) {
    plan.warning = "d_tilde_min outside the window (d_min, 2^-n_r * d_max]";
  }
  return plan;
}

std::pair<double, double> perturbed_eigen_estimates(const Eigen::MatrixXcd& a,
                                                    double xi) {
  check_hermitian(a);
  if (xi <= 0.0 || xi > 1.0) {
    throw std::invalid_argument("level shift must lie in (0, 1]");
  }
  const Eigen::Index n = a.rows();

  // Level-shift repeated diagonal values so first-order denominators stay
  // finite; the m-th repetition of a value is lowered by m * xi.
  Eigen::VectorXd bdiag(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = a(i, i).real();
    int repeats = 0;
    for (Eigen::Index j = 0; j < i; ++j) {
      if (std::abs(a(j, j).real() - d) < 1e-12) ++repeats;
    }
    bdiag(i) = d - repeats * xi;
  }

  Eigen::Index imin = 0, imax = 0;
  for (Eigen::Index i = 1; i < n; ++i) {
    if (a(i, i).real() < a(imin, imin).real()) imin = i;
    if (a(i, i).real() > a(imax, imax).real()) imax = i;
  }

  auto estimate = [&](Eigen::Index i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double coupling = std::norm(a(i, j));
      if (coupling == 0.0) continue;
      const double gap = bdiag(i) - bdiag(j);
      if (std::abs(gap) < 1e-12) {
        throw std::runtime_error(
            "degenerate shifted diagonal; choose a different level shift");
      }
      sum += coupling / gap;
    }
    return a(i, i).real() + sum;
  };
  return {estimate(imin), estimate(imax)};
}

ScalingPlan perturbed_scaling(const Eigen::MatrixXcd& a, int n_r, double xi) {
  if (n_r < 1) throw std::invalid_argument("need at least one clock qubit");
  const auto [lmin, lmax] = perturbed_eigen_estimates(a, xi);
  if (lmin <= 0.0 || lmax <= 0.0) {
    throw std::invalid_argument("non-positive eigenvalue estimates");
  }
  ScalingPlan plan;
  plan.strategy = ScalingStrategy::perturbed;
  plan.n_r = n_r;
  plan.lambda_est_min = lmin;
  plan.lambda_est_max = lmax;
  plan.s = grid_cap(n_r) / lmax;
  plan.c = plan.s * lmin;
  plan.d_tilde_min = lmin;
  return plan;
}

ScalingPlan exact_scaling(const Eigen::MatrixXcd& a, int n_r) {
  check_hermitian(a);
  if (n_r < 1) throw std::invalid_argument("need at least one clock qubit");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  if (lmin <= 0.0) {
    throw std::invalid_argument("matrix is not positive definite");
  }
  ScalingPlan plan;
  plan.strategy = ScalingStrategy::exact;
  plan.n_r = n_r;
  plan.lambda_est_min = lmin;
  plan.lambda_est_max = lmax;
  plan.kappa = lmax / lmin;
  plan.s = grid_cap(n_r) / lmax;
  plan.c = plan.s * lmin;
  plan.d_tilde_min = lmin;
  return plan;
}

ScalingReport validate_scaling(const Eigen::MatrixXcd& a,
                               const ScalingPlan& plan,
                               std::optional<Eigen::VectorXcd> b) {
  check_hermitian(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  const Eigen::Index n = a.rows();
  const double grid = std::ldexp(1.0, -plan.n_r);

  ScalingReport report;
  report.in_range = true;
  Eigen::VectorXd rounded(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lam = plan.s * es.eigenvalues()(j);
    report.scaled_eigenvalues.push_back(lam);
    if (lam <= 0.0 || lam >= 1.0) report.in_range = false;
    rounded(j) = std::round(lam / grid) * grid;
    report.max_rounding_error =
        std::max(report.max_rounding_error, std::abs(lam - rounded(j)));
  }

  Eigen::VectorXcd ref = b.value_or(
      Eigen::VectorXcd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n))));
  ref.normalize();
  const Eigen::VectorXcd beta = es.eigenvectors().adjoint() * ref;
  double true_sq = 0.0, approx_sq = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lam = plan.s * es.eigenvalues()(j);
    true_sq += std::norm(beta(j)) / (lam * lam);
    const double r = rounded(j) > 0.0 ? rounded(j) : grid;
    approx_sq += std::norm(beta(j)) / (r * r);
  }
  const double true_norm = std::sqrt(true_sq);
  const double approx_norm = std::sqrt(approx_sq);
  report.predicted_loss_pct =
      std::abs(approx_norm - true_norm) / true_norm * 100.0;
  return report;
}

}  // namespace qlsw
