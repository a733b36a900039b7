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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qlsw {

enum class ScalingStrategy { adapt, perturbed, exact };

const char* strategy_name(ScalingStrategy s);

/// How the scaled system maps onto the clock grid: the scaled matrix is s*A,
/// the conditioned-rotation constant is c, and ||A^{-1} b|| is recovered as
/// sqrt(P(1)) / d_tilde_min with d_tilde_min = c / s.
struct ScalingPlan {
  double s = 0.0;
  double c = 0.0;
  int n_r = 0;
  double d_tilde_min = 0.0;
  ScalingStrategy strategy = ScalingStrategy::adapt;
  std::optional<double> lambda_est_min;
  std::optional<double> lambda_est_max;
  std::optional<double> kappa;
  std::string warning;
};

/// Eigenvalue-free scaling s = 2^{-n_r} / d_tilde_min with c = 2^{-n_r}.
/// Defaults to d_tilde_min = d_min (smallest diagonal entry); an explicit
/// value outside the window d_min >= d_tilde_min > 2^{-n_r} d_max attaches a
/// warning to the plan. Throws when 2^{-n_r} d_max / d_tilde_min >= 1,
/// reporting the smallest workable n_r.
ScalingPlan adapt_scaling(const Eigen::MatrixXcd& a, int n_r,
                          std::optional<double> d_tilde_min = std::nullopt);

/// First-order estimates of the extreme eigenvalues from the extreme diagonal
/// entries, with a level shift of m*xi applied to the m-th repetition of a
/// repeated diagonal value. Returns (lambda_min_est, lambda_max_est).
std::pair<double, double> perturbed_eigen_estimates(const Eigen::MatrixXcd& a,
                                                    double xi = 1.0);

ScalingPlan perturbed_scaling(const Eigen::MatrixXcd& a, int n_r,
                              double xi = 1.0);

/// Full-diagonalization baseline: places the largest eigenvalue on the top
/// clock grid line (2^{n_r}-1)/2^{n_r} and sets c = s * lambda_min. Records
/// the condition number.
ScalingPlan exact_scaling(const Eigen::MatrixXcd& a, int n_r);

struct ScalingReport {
  bool in_range = false;
  double max_rounding_error = 0.0;
  double predicted_loss_pct = 0.0;
  std::vector<double> scaled_eigenvalues;
};

/// Desk-scale diagnostic: diagonalizes s*A and predicts the norm-recovery
/// loss for a reference right-hand side (uniform when omitted).
ScalingReport validate_scaling(const Eigen::MatrixXcd& a,
                               const ScalingPlan& plan,
                               std::optional<Eigen::VectorXcd> b = std::nullopt);

}  // namespace qlsw
