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

#include "qlsw/workbench.hpp"

#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "test_helpers.hpp"

using namespace qlsw;

namespace {

ProblemInstance fixture_2x2() {
  Eigen::MatrixXcd a(2, 2);
  a << 1.5, 0.1, 0.1, 0.75;
  Eigen::VectorXcd b(2);
  b << 0.0, 1.0;
  return make_problem("fixture", a, b);
}

ProblemInstance dyadic_diag() {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = 7.0 / 8.0;
  a(1, 1) = 3.0 / 8.0;
  Eigen::VectorXcd b(2);
  b << 1.0, 0.0;
  return make_problem("dyadic", a, b);
}

}  // namespace

TEST_CASE("variant and fixing-method names round trip") {
  for (Variant v : {Variant::hhl, Variant::hhlite, Variant::perturbed,
                    Variant::perturbedlite, Variant::adapt, Variant::adaptlite}) {
    CHECK(variant_from_string(variant_name(v)) == v);
  }
  CHECK(is_lite(Variant::hhlite));
  CHECK(!is_lite(Variant::adapt));
  CHECK_THROWS(variant_from_string("nope"));

  CHECK(fix_method_from_string("classical") == FixMethod::classical);
  CHECK(fix_method_from_string("quantum") == FixMethod::quantum);
  CHECK(fix_method_from_string("lmr") == FixMethod::lmr);
  CHECK_THROWS(fix_method_from_string("psychic"));
}

TEST_CASE("run_variant solves the identity instance exactly") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::VectorXcd b(2);
  b << 1.0, 0.0;
  const ProblemInstance p = make_problem("identity", a, b);

  RunConfig cfg;
  cfg.variant = Variant::hhl;
  cfg.n_r = 4;
  const ReportRow row = run_variant(p, cfg);
  CHECK(row.ok);
  CHECK(row.n_t == 2 * 1 + 4 + 1);
  CHECK(row.e_corr_oracle == doctest::Approx(-1.0));
  CHECK(std::abs(row.pfd) < 1e-6);
  CHECK(row.depth > 0);
  CHECK(row.two_q > 0);
  CHECK(row.n_f == 0);
}

TEST_CASE("adaptive variant stays close on the reference instance") {
  RunConfig cfg;
  cfg.variant = Variant::adapt;
  cfg.n_r = 6;
  const ReportRow row = run_variant(fixture_2x2(), cfg);
  CHECK(row.ok);
  CHECK(row.variant == "adapt");
  CHECK(std::abs(row.pfd) < 10.0);
  CHECK(row.success_probability > 0.0);
}

TEST_CASE("lite variants shrink the circuit via fixing") {
  const ProblemInstance p = dyadic_diag();
  RunConfig full;
  full.variant = Variant::hhl;
  full.n_r = 3;
  RunConfig lite = full;
  lite.variant = Variant::hhlite;
  lite.fixing = FixMethod::classical;

  const ReportRow rf = run_variant(p, full);
  const ReportRow rl = run_variant(p, lite);
  CHECK(rl.n_f == 3);
  CHECK(rl.depth < rf.depth);
  CHECK(rl.two_q < rf.two_q);
  CHECK(rl.e_corr == doctest::Approx(rf.e_corr).epsilon(1e-9));
}

TEST_CASE("optimizer integration reports a compression figure") {
  RunConfig cfg;
  cfg.variant = Variant::hhl;
  cfg.n_r = 3;
  cfg.optimize = true;
  const ReportRow row = run_variant(dyadic_diag(), cfg);
  CHECK(row.ok);
  CHECK(row.compression_pct > 0.0);
}

TEST_CASE("sweeps keep going past failing rows") {
  Eigen::MatrixXcd spread = Eigen::MatrixXcd::Zero(2, 2);
  spread(0, 0) = 1.0;
  spread(1, 1) = 300.0;  // needs far more than 3 clock qubits under adapt
  Eigen::VectorXcd b(2);
  b << 1.0, 0.0;
  const std::vector<ProblemInstance> instances = {
      dyadic_diag(), make_problem("spread", spread, b)};

  RunConfig hhl;
  hhl.variant = Variant::hhl;
  hhl.n_r = 3;
  RunConfig adapt = hhl;
  adapt.variant = Variant::adapt;
  const SweepReport rep = run_sweep(instances, {hhl, adapt}, 2);
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.rows[0].ok);        // dyadic / hhl
  CHECK(rep.rows[1].ok);        // dyadic / adapt
  CHECK(rep.rows[2].ok);        // spread / hhl (exact scaling copes)
  CHECK(!rep.rows[3].ok);       // spread / adapt breaks representability
  CHECK(rep.rows[3].error.find("scale") != std::string::npos);

  const std::string csv = rep.csv();
  CHECK(csv.find("label,variant,") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  const std::string heat = rep.heatmap_csv();
  CHECK(heat.find("depth_compression_vs_hhl_pct") != std::string::npos);

  CHECK_THROWS(run_sweep({}, {hhl}));
}

TEST_CASE("shot convergence tightens with more shots") {
  RunConfig cfg;
  cfg.variant = Variant::adapt;
  cfg.n_r = 3;
  cfg.seed = 123;
  const std::vector<std::uint64_t> grid = {100, 10000};
  const std::vector<ShotStat> stats =
      shot_convergence(fixture_2x2(), cfg, grid, 8);
  REQUIRE(stats.size() == 2);
  CHECK(stats[0].shots == 100);
  CHECK(stats[1].stddev_e_corr < stats[0].stddev_e_corr);

  // Derived seeds make the whole experiment repeatable.
  const std::vector<ShotStat> again =
      shot_convergence(fixture_2x2(), cfg, grid, 8);
  CHECK(again[0].mean_e_corr == stats[0].mean_e_corr);
  CHECK(again[1].stddev_e_corr == stats[1].stddev_e_corr);

  CHECK_THROWS(shot_convergence(fixture_2x2(), cfg, grid, 0));
}

TEST_CASE("d_tilde_min sweep flags the representability window") {
  const std::vector<DminPoint> pts =
      dmin_sweep(fixture_2x2(), 3, {0.1, 0.75, 0.9});
  REQUIRE(pts.size() == 3);

  CHECK(!pts[0].valid);  // below 2^-3 * 1.5
  CHECK(!pts[0].in_window);
  CHECK(!pts[0].note.empty());

  CHECK(pts[1].valid);  // the default d_min choice
  CHECK(pts[1].in_window);
  CHECK(std::abs(pts[1].pfd) < 10.0);
  CHECK(pts[1].p1 > 0.0);

  CHECK(pts[2].valid);  // above d_min: runs, but flagged out of window
  CHECK(!pts[2].in_window);
  CHECK(!pts[2].note.empty());
}

TEST_CASE("resource scan grows with the state register") {
  const std::vector<ResourceRow> rows = resource_scan({1, 2}, 3, 2);
  REQUIRE(rows.size() == 2);
  for (const ResourceRow& r : rows) {
    CHECK(r.qpe_two_q > 0);
    CHECK(r.hhl_two_q > r.qpe_two_q);
    CHECK(r.qpe_eqpe_two_q > r.qpe_two_q);
    CHECK(r.ratio > 0.0);
  }
  CHECK(rows[1].hhl_two_q > rows[0].hhl_two_q);
  // The readout overhead is instance independent.
  CHECK(rows[0].qpe_eqpe_two_q - rows[0].qpe_two_q ==
        rows[1].qpe_eqpe_two_q - rows[1].qpe_two_q);
}

TEST_CASE("report serialization") {
  ReportRow row;
  row.label = "x";
  row.variant = "hhl";
  row.ok = true;
  const std::string csv = rows_to_csv({row});
  CHECK(csv.find("label,variant,") == 0);
  CHECK(csv.find("\nx,hhl,") != std::string::npos);
  const std::string json = row_to_json(row);
  CHECK(json.find("\"label\": \"x\"") != std::string::npos);
  CHECK(json.find("\"ok\": true") != std::string::npos);
}
