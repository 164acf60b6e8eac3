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

#include "carbm/dense.hpp"
#include "carbm/models.hpp"
#include "support.hpp"

using namespace carbm;
using carbm::test::kron_sentence;

namespace {

using C = std::complex<double>;

// Single-qubit operator on qubit q of an n-qubit register.
CMatrix embed1(const CMatrix& op, std::size_t q, std::size_t n) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (std::size_t i = n; i-- > 0;) {
    const CMatrix f = i == q ? op : CMatrix::Identity(2, 2);
    CMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = out(r, c) * f;
    out = next;
  }
  return out;
}

// Jordan-Wigner annihilator: string of Z on lower qubits, then |0⟩⟨1|.
CMatrix annihilator(std::size_t j, std::size_t n) {
  CMatrix lower = CMatrix::Zero(2, 2);
  lower(0, 1) = 1.0;
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  CMatrix out = embed1(lower, j, n);
  for (std::size_t i = 0; i < j; ++i) out = embed1(z, i, n) * out;
  return out;
}

// The staggered chain written directly with fermion operators.
CMatrix fermionic_gn(const GrossNeveuSpec& s) {
  const std::size_t n = s.N * s.L;
  const auto dim = Eigen::Index{1} << n;
  std::vector<CMatrix> a;
  for (std::size_t j = 0; j < n; ++j) a.push_back(annihilator(j, n));
  const auto mode = [&](std::size_t flavor, std::size_t site) -> const CMatrix& { return a[flavor * s.L + site - 1]; };
  CMatrix h = CMatrix::Zero(dim, dim);
  for (std::size_t f = 0; f < s.N; ++f) {
    for (std::size_t site = 1; site < s.L; ++site) {
      const CMatrix& an = mode(f, site);
      const CMatrix& an1 = mode(f, site + 1);
      const CMatrix hop = an1.adjoint() * an - an.adjoint() * an1;
      const double stagger = (site % 2) ? -1.0 : 1.0;
      h += C(0, -2) * hop;
      h += s.mu * stagger * C(0, 1) * hop;
    }
    for (std::size_t site = 1; site <= s.L; ++site) {
      const double stagger = (site % 2) ? -1.0 : 1.0;
      h += s.m * stagger * 2.0 * mode(f, site).adjoint() * mode(f, site);
    }
  }
  for (std::size_t site = 1; site <= s.L; ++site)
    for (std::size_t f = 0; f < s.N; ++f)
      for (std::size_t g = f + 1; g < s.N; ++g) {
        const CMatrix na = mode(f, site).adjoint() * mode(f, site);
        const CMatrix nb = mode(g, site).adjoint() * mode(g, site);
        h += -(s.G * s.G / 2) * 4.0 * na * nb;
      }
  return h;
}

}  // namespace

TEST_CASE("xxz examples") {
  const auto h = build_xxz({2, 1.0, 0.0, 0.0});
  CHECK(h == PauliSentence::from_terms(2, {{"XX", -1.0}, {"YY", -1.0}}));
  CHECK(build_xxz({3, 0.0, 0.0, 0.4}) == PauliSentence::from_terms(3, {{"ZII", 0.4}, {"IZI", 0.4}, {"IIZ", 0.4}}));
  const auto full = build_xxz({4, 1.0, 0.5, 0.3});
  CHECK(full.coefficient(PauliString::from_text("IZZI")) == -0.5);
  CHECK(full.coefficient(PauliString::from_text("ZIIZ")) == 0.0);
  CHECK_THROWS(validate(XXZSpec{1, 1.0, 1.0, 0.0}));
}

TEST_CASE("xxz commutes with the probe") {
  const CMatrix hs = kron_sentence(build_xxz({4, 0.7, -1.3, 0.0}));
  const CMatrix hi = kron_sentence(build_uniform_field(4));
  CHECK((hs * hi - hi * hs).norm() < 1e-12);
  CHECK((hs - hs.adjoint()).norm() < 1e-12);
}

TEST_CASE("probe builder") {
  CHECK(build_probe(1, 0.25) == PauliSentence::from_terms(1, {{"Z", 0.25}}));
  CHECK(build_probe(3, 0.0).empty());
  auto field = build_xxz({4, 1.0, 1.0, 0.3});
  field += build_xxz({4, 1.0, 1.0, 0.0}) * -1.0;
  field.prune(1e-15);
  CHECK(field == build_probe(4, 0.3));
  CHECK(build_uniform_field(2) == build_probe(2, 1.0));
}

TEST_CASE("gross-neveu mass and interaction terms") {
  const auto mass = build_gross_neveu({1, 2, 0.0, 0.0, 1.0});
  CHECK(mass == PauliSentence::from_terms(2, {{"XY", -1.0}, {"YX", 1.0}, {"ZI", 1.0}, {"IZ", -1.0}}));

  const auto g = build_gross_neveu({2, 1, 1.0, 0.0, 0.0});
  CHECK(g == PauliSentence::from_terms(2, {{"II", -0.5}, {"ZI", 0.5}, {"IZ", 0.5}, {"ZZ", -0.5}}));
  CHECK_THROWS(validate(GrossNeveuSpec{0, 2, 1.0, 0.0, 0.0}));
}

TEST_CASE("jordan-wigner operators satisfy canonical anticommutators") {
  const std::size_t n = 4;
  std::vector<CMatrix> a;
  for (std::size_t j = 0; j < n; ++j) a.push_back(annihilator(j, n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const CMatrix ac = a[x].adjoint() * a[y] + a[y] * a[x].adjoint();
      const CMatrix expect = CMatrix::Identity(16, 16) * (x == y ? 1.0 : 0.0);
      CHECK((ac - expect).norm() < 1e-12);
      CHECK((a[x] * a[y] + a[y] * a[x]).norm() < 1e-12);
    }
  }
}

TEST_CASE("pauli form matches the fermionic construction") {
  for (const GrossNeveuSpec& s : {GrossNeveuSpec{2, 2, 1.0, 0.0, 0.0}, GrossNeveuSpec{2, 2, 1.0, 0.8, 0.0},
                                  GrossNeveuSpec{2, 3, 0.7, 1.3, 0.4}, GrossNeveuSpec{1, 4, 0.0, -0.6, 1.1}}) {
    const CMatrix pauli = kron_sentence(build_gross_neveu(s));
    CHECK((pauli - fermionic_gn(s)).norm() < 1e-12);
  }
}

TEST_CASE("gross-neveu conserves parity per flavor") {
  const GrossNeveuSpec s{2, 2, 1.0, 0.9, 0.0};
  const CMatrix h = kron_sentence(build_gross_neveu(s));
  CHECK((h - h.adjoint()).norm() < 1e-12);
  for (const char* parity : {"ZZII", "IIZZ"}) {
    const CMatrix p = test::kron_pauli(parity);
    CHECK((h * p - p * h).norm() < 1e-12);
  }
}

TEST_CASE("condensate observable") {
  const GrossNeveuSpec s{2, 2, 1.0, 0.0, 0.0};
  const auto obs = build_condensate_observable(s);
  CHECK(obs == PauliSentence::from_terms(4, {{"IIII", 1.0}, {"ZZII", 1.0}}));
  const CMatrix m = kron_sentence(obs);
  CHECK((m - m.adjoint()).norm() == 0.0);
  CHECK((m / 16.0).trace().real() == doctest::Approx(1.0));
  CHECK(build_condensate_observable({2, 4, 1.0, 0.0, 0.0}).size() == 4);
}
