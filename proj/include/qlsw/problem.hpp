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

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Dense>

namespace qlsw {

/// A Hermitian linear system A x = -b with E_corr = -b^dag A^{-1} b.
/// Dimensions are padded to the next power of two on construction (identity
/// diagonal, zero b entries); the padding is recorded in `warning`.
struct ProblemInstance {
  std::string label;
  Eigen::MatrixXcd a;
  Eigen::VectorXcd b;
  std::optional<double> reference_e_corr;
  int n_b = 0;
  std::string warning;

  Eigen::Index dim() const { return a.rows(); }
};

/// Validates Hermiticity (reporting the worst asymmetry), pads to a power of
/// two, and derives n_b.
ProblemInstance make_problem(std::string label, Eigen::MatrixXcd a,
                             Eigen::VectorXcd b,
                             std::optional<double> reference_e_corr = {});

/// JSON schema: {"label": str, "matrix": [[entry,...],...], "b": [entry,...],
/// "reference_e_corr": number (optional)} where an entry is a number or a
/// [re, im] pair.
ProblemInstance load_problem(const std::string& path);
ProblemInstance problem_from_json_text(const std::string& text);
std::string problem_to_json_text(const ProblemInstance& p);
void save_problem(const std::string& path, const ProblemInstance& p);

/// Ground truth: -b^dag A^{-1} b by direct solve. Throws when the condition
/// number exceeds 1e12.
double oracle_e_corr(const ProblemInstance& p);

/// Percentage fraction difference (e_oracle - e_method) / e_oracle * 100.
double pfd(double e_oracle, double e_method);

/// Seeded random symmetric positive definite, diagonally dominant instance
/// with a random unit b.
ProblemInstance make_random_spd_instance(int dim, std::uint64_t seed,
                                         double offdiag_scale = 0.1);

/// Seeded random SPD instance whose eigenvalues sit exactly on the n_r-bit
/// clock grid, with the largest pinned to (2^{n_r}-1)/2^{n_r}.
ProblemInstance make_dyadic_instance(int dim, int n_r, std::uint64_t seed);

}  // namespace qlsw
