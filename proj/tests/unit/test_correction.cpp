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

#include <random>

#include "carbm/circuit.hpp"
#include "carbm/correction.hpp"
#include "carbm/dense.hpp"
#include "support.hpp"

using namespace carbm;
using carbm::test::kron_pauli;

namespace {

std::vector<PauliString> all_strings(std::size_t n) {
  std::vector<PauliString> out;
  const std::uint64_t lim = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < lim; ++x)
    for (std::uint64_t z = 0; z < lim; ++z) out.emplace_back(n, x, z);
  return out;
}

std::optional<PauliString> brute_correction(const std::vector<PauliString>& previous, const PauliString& target) {
  std::optional<PauliString> best;
  for (const auto& o : all_strings(target.num_qubits())) {
    if (commutes(o, target)) continue;
    bool ok = true;
    for (const auto& p : previous) ok = ok && commutes(o, p);
    if (ok && (!best || canonical_less(o, *best))) best = o;
  }
  return best;
}

ITELayer layer(const char* sigma, double kappa) {
  return {PauliString::from_text(sigma), kappa, params_standard(kappa), std::nullopt};
}

}  // namespace

TEST_CASE("find_correction examples") {
  const auto zz = PauliString::from_text("ZZ");
  CHECK(find_correction({}, zz)->to_text() == "XI");
  CHECK(brute_correction({}, zz)->to_text() == "XI");
  CHECK(find_correction({PauliString::from_text("ZI")}, PauliString::from_text("IZ"))->to_text() == "IX");
  CHECK_FALSE(find_correction({PauliString::from_text("ZI"), PauliString::from_text("IZ")}, zz).has_value());
}

TEST_CASE("find_correction matches exhaustive minimum-weight search") {
  std::mt19937_64 rng(31);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto strings = all_strings(n);
    for (int t = 0; t < 150; ++t) {
      std::vector<PauliString> previous;
      const std::size_t k = rng() % (2 * n + 1);
      for (std::size_t i = 0; i < k; ++i) previous.push_back(strings[rng() % strings.size()]);
      const auto target = strings[1 + rng() % (strings.size() - 1)];
      CHECK(find_correction(previous, target) == brute_correction(previous, target));
    }
  }
}

TEST_CASE("filter restricts candidates") {
  const auto only_y = [](const PauliString& p) { return p.letter(0) == 'Y'; };
  CHECK(find_correction({}, PauliString::from_text("ZI"), only_y)->to_text() == "YI");
}

TEST_CASE("plan examples") {
  const auto both = plan_corrections({layer("IZ", 1.0), layer("ZI", 2.0)}, 5, InitialStateKind::kMaximallyMixed);
  CHECK(both.layers[0].sigma.to_text() == "ZI");
  CHECK(both.corrected_indices == std::vector<std::size_t>{0, 1});
  for (const auto& l : both.layers) {
    CHECK(l.params.scheme == Scheme::kCorrectable);
    CHECK_NOTHROW(validate(l));
  }

  const auto dep = plan_corrections({layer("ZI", 3.0), layer("IZ", 2.0), layer("ZZ", 1.0)}, 5,
                                    InitialStateKind::kMaximallyMixed);
  CHECK(dep.corrected_indices.size() == 2);
  CHECK(dep.layers[2].sigma.to_text() == "ZZ");
  CHECK_FALSE(dep.layers[2].correction.has_value());
  CHECK(dep.layers[2].params.scheme == Scheme::kStandard);

  const auto none = plan_corrections({layer("ZI", 3.0), layer("IZ", 2.0)}, 0, InitialStateKind::kMaximallyMixed);
  CHECK(none.corrected_indices.empty());
  CHECK(none.operators.empty());

  CHECK_THROWS_AS(plan_corrections({layer("ZI", 1.0), layer("XI", 1.0)}, 2, InitialStateKind::kMaximallyMixed),
                  std::invalid_argument);
}

TEST_CASE("general initial states need a stabilizer check") {
  const std::vector<ITELayer> ls = {layer("ZI", 1.0), layer("IZ", 0.5)};
  CHECK(plan_corrections(ls, 2, InitialStateKind::kGeneral).corrected_indices.empty());
  const auto plan = plan_corrections(ls, 2, InitialStateKind::kGeneral,
                                     [](const PauliString& o) { return o.letter(1) == 'I'; });
  CHECK(plan.corrected_indices == std::vector<std::size_t>{0});
}

TEST_CASE("plans respect the commutation pattern and the n bound") {
  std::mt19937_64 rng(41);
  for (std::size_t n = 2; n <= 4; ++n) {
    // Every Z string commutes with every other one.
    std::vector<ITELayer> ls;
    for (std::uint64_t z = 1; z < (std::uint64_t{1} << n); ++z) {
      const double k = std::uniform_real_distribution<double>(-2, 2)(rng);
      ls.push_back({PauliString(n, 0, z), k, params_standard(k), std::nullopt});
    }
    const auto plan = plan_corrections(ls, 100, InitialStateKind::kMaximallyMixed);
    CHECK(plan.corrected_indices.size() == n);
    for (std::size_t i = 1; i < plan.layers.size(); ++i)
      CHECK(std::abs(plan.layers[i - 1].kappa) >= std::abs(plan.layers[i].kappa));
    std::vector<PauliString> previous_sigmas;
    for (std::size_t j = 0; j < plan.layers.size(); ++j) {
      const auto& l = plan.layers[j];
      if (l.correction) {
        const CMatrix o = kron_pauli(l.correction->to_text());
        const CMatrix s = kron_pauli(l.sigma.to_text());
        CHECK((o * s + s * o).norm() < 1e-12);
        CHECK_FALSE(commutes(*l.correction, l.sigma));
        for (const auto& p : previous_sigmas) {
          const CMatrix q = kron_pauli(p.to_text());
          CHECK((o * q - q * o).norm() < 1e-12);
          CHECK(commutes(*l.correction, p));
        }
        CHECK(is_independent(l.sigma, previous_sigmas));
      }
      previous_sigmas.push_back(l.sigma);
    }
  }
}

TEST_CASE("corrected layer is a deterministic channel") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + rng() % 3;
    PauliString sigma;
    do sigma = test::random_pauli(n, rng);
    while (sigma.is_identity());
    const auto o = *find_correction({}, sigma);
    const double k = std::uniform_real_distribution<double>(-3, 3)(rng);
    const auto p = params_correctable(k);
    // Random state symmetrized so that OρO† = ρ.
    CMatrix rho = test::random_density(n, rng);
    const CMatrix om = kron_pauli(o.to_text());
    rho = 0.5 * (rho + om * rho * om.adjoint());

    const std::size_t m = n + 1;
    auto gates = encode_layer(p, sigma, n, m);
    gates.push_back(ControlledPauli{n, o.widened(m)});
    const CMatrix u = circuit_matrix(gates, m);
    const auto dim = Eigen::Index{1} << n;
    CMatrix full = CMatrix::Zero(2 * dim, 2 * dim);
    full.block(0, 0, dim, dim) = rho;
    const CMatrix out = u * full * u.adjoint();
    const CMatrix reduced = out.block(0, 0, dim, dim) + out.block(dim, dim, dim, dim);
    CHECK(std::abs(reduced.trace().real() - 1.0) < 1e-10);

    const CMatrix e = hermitian_exp(kron_pauli(sigma.to_text()), -k);
    CMatrix ite = e * rho * e;
    ite /= ite.trace().real();
    CHECK((reduced - ite).norm() < 1e-10);
  }
}

TEST_CASE("layers from h and plan serialization") {
  const auto h = PauliSentence::from_terms(2, {{"II", 5.0}, {"ZI", 0.8}, {"ZZ", -0.2}});
  const auto ls = layers_from_h(h, 1.5, Scheme::kStandard);
  REQUIRE(ls.size() == 2);
  for (const auto& l : ls) CHECK(l.kappa == doctest::Approx(0.75 * h.coefficient(l.sigma)));
  const auto plan = plan_corrections(ls, 1, InitialStateKind::kMaximallyMixed);
  const auto j = plan.to_json();
  CHECK(j["layers"].size() == 2);
  CHECK(j["layers"][0]["sigma"] == "ZI");
  CHECK(j["layers"][0]["scheme"] == "correctable");
  CHECK(j["layers"][0]["correction"] == "XI");
  CHECK(j["layers"][1]["correction"].is_null());
  CHECK(j["corrected_indices"] == nlohmann::json::array({0}));
}
