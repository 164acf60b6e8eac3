// Copyright 2026 The carbm Authors
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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "carbm/dense.hpp"
#include "carbm/experiments.hpp"
#include "support.hpp"

using namespace carbm;

namespace {

// Analytic single-qubit Lee-Yang grid: Tr e^{−(g_r + i g_i)Z} / Tr e^{−g_r Z}.
ScanGrid toy_grid(std::size_t steps) {
  ScanGrid g(Axis{"g_r", -1.0, 1.0, steps}, Axis{"g_i", 0.0, M_PI, steps});
  for (std::size_t i = 0; i < steps; ++i)
    for (std::size_t j = 0; j < steps; ++j) {
      const std::complex<double> w(g.axis1.at(i), g.axis2.at(j));
      g.values[g.index(i, j)] = std::cosh(w) / std::cosh(w.real());
      g.success[g.index(i, j)] = 1.0;
    }
  return g;
}

}  // namespace

TEST_CASE("axes and grids") {
  const Axis a{"x", 0.0, 2.0, 5};
  CHECK(a.at(0) == 0.0);
  CHECK(a.at(4) == 2.0);
  CHECK(a.spacing() == 0.5);
  CHECK(Axis{"y", 3.0, 9.0, 1}.at(0) == 3.0);
  ScanGrid g(a, Axis{"y", 0.0, 1.0, 3});
  CHECK(g.size() == 15);
  CHECK(g.index(2, 1) == 7);
  CHECK_NOTHROW(g.check());
  g.success[3] = 1.5;
  CHECK_THROWS(g.check());
}

TEST_CASE("partition function oracle") {
  const auto h0 = build_xxz({3, 1.0, 0.5, 0.2});
  CHECK(std::abs(ed_partition_oracle(h0, build_uniform_field(3), 0.0, 1.3) - 8.0) < 1e-12);
  const auto zero = PauliSentence(1);
  const auto z = PauliSentence::from_terms(1, {{"Z", 1.0}});
  for (double gi : {0.0, 0.4, M_PI / 2, 3.0})
    CHECK(std::abs(ed_partition_oracle(zero, z, 1.0, gi) - 2 * std::cos(gi)) < 1e-12);
  const auto real = ed_partition_oracle(h0, build_uniform_field(3), 0.8, 0.0);
  CHECK(std::abs(real.imag()) < 1e-12);
  CHECK(real.real() == doctest::Approx(hermitian_exp(test::kron_sentence(h0), -0.8).trace().real()));
  CHECK_THROWS(ed_partition_oracle(PauliSentence(13), PauliSentence(13), 1.0, 0.0));
}

TEST_CASE("zero finding") {
  ScanGrid flat(Axis{"a", 0, 1, 4}, Axis{"b", 0, 1, 4});
  for (auto& v : flat.values) v = 0.01;
  CHECK(locate_zeros(flat, 0.1).empty());

  const auto coarse = locate_zeros(toy_grid(41), 0.1);
  REQUIRE(coarse.size() == 1);
  CHECK(std::abs(coarse[0].a1) < 1e-12);
  CHECK(coarse[0].a2 == doctest::Approx(M_PI / 2));

  const auto fine = locate_zeros(toy_grid(81), 0.1);
  REQUIRE(fine.size() == 1);
  CHECK(std::abs(fine[0].a1 - coarse[0].a1) < toy_grid(41).axis1.spacing());
  CHECK(std::abs(fine[0].a2 - coarse[0].a2) < toy_grid(41).axis2.spacing());
}

TEST_CASE("lee-yang scan on a small grid") {
  LeeYangOptions opt;
  opt.model = {4, 1.0, 0.1, 0.0};
  opt.g_r = {"g_r", -0.5, 0.5, 3};
  opt.g_i = {"g_i", 0.0, M_PI, 5};
  ScanDiagnostics diag;
  const auto grid = lee_yang_scan(opt, &diag);
  CHECK(diag.max_oracle_error >= 0.0);
  CHECK(diag.max_oracle_error <= 1e-6);
  CHECK(diag.residuals.size() == 3);
  for (double r : diag.residuals) CHECK(r <= 1e-6);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(grid.values[grid.index(i, 0)] - 1.0) < 1e-10);
  for (double s : grid.success) CHECK((s > 0.0 && s <= 1.0));

  opt.threads = 2;
  const auto again = lee_yang_scan(opt);
  CHECK(grid_csv(again, "x") == grid_csv(grid, "x"));

  opt.threads = 1;
  opt.correction = {Scheme::kStandard, 4};
  const auto corrected = lee_yang_scan(opt);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(std::abs(corrected.values[k] - grid.values[k]) < 1e-8);
    CHECK(corrected.success[k] >= grid.success[k] - 1e-15);
  }
}

TEST_CASE("fisher scan on a small grid") {
  FisherOptions opt;
  opt.model = {4, 1.0, 1.0, 0.0};
  opt.beta_r = {"beta_r", 0.5, 1.5, 3};
  opt.beta_i = {"beta_i", 0.0, M_PI, 4};
  opt.compare_full_k = true;
  ScanDiagnostics diag;
  const auto grid = fisher_scan(opt, &diag);
  CHECK(diag.max_oracle_error <= 1e-6);
  CHECK(diag.max_cyclicity_error >= 0.0);
  CHECK(diag.max_cyclicity_error <= 1e-8);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(grid.values[grid.index(i, 0)] - 1.0) < 1e-10);
}

TEST_CASE("gross-neveu scan on a small grid") {
  GrossNeveuScanOptions opt;
  opt.beta = {"beta", 0.0, 2.0, 3};
  opt.mu = {"mu", 0.0, 2.0, 3};
  ScanDiagnostics diag;
  const auto plain = gn_phase_scan(opt, &diag);
  CHECK(diag.max_oracle_error <= 1e-6);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(plain.observable.values[plain.observable.index(0, j)].real() == doctest::Approx(1.0));
    CHECK(plain.success.success[plain.success.index(0, j)] == doctest::Approx(1.0));
  }
  opt.correction = {Scheme::kStandard, 4};
  ScanDiagnostics cdiag;
  const auto corrected = gn_phase_scan(opt, &cdiag);
  CHECK(cdiag.max_oracle_error <= 1e-6);
  for (std::size_t k = 0; k < plain.success.size(); ++k) {
    CHECK(corrected.success.success[k] >= plain.success.success[k] - 1e-15);
    CHECK(std::abs(corrected.observable.values[k] - plain.observable.values[k]) < 1e-8);
  }
}

TEST_CASE("csv output") {
  ScanGrid g(Axis{"a", 0.0, 1.0, 2}, Axis{"b", 0.0, 1.0, 1});
  g.values = {{1.0, 0.0}, {0.0, -2.0}};
  g.success = {1.0, 0.25};
  const auto csv = grid_csv(g, "abc123");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# config_hash=abc123");
  std::getline(in, line);
  CHECK(line == "axis1,axis2,re_value,im_value,abs_value,log_abs,success_prob");
  std::getline(in, line);
  CHECK(line == "0,0,1,0,1,0,1");
  std::getline(in, line);
  CHECK(line.rfind("1,0,0,-2,2,", 0) == 0);
  CHECK(grid_csv(g, "abc123") == csv);
}
