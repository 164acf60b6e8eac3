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

#include <algorithm>
#include <random>
#include <set>

#include "carbm/dense.hpp"
#include "carbm/pauli.hpp"
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

}  // namespace

TEST_CASE("symplectic form of XIZZY") {
  const auto p = PauliString::from_text("XIZZY");
  CHECK(p.to_symplectic().to_string() == "0011110001");
  CHECK(PauliString::from_text("III").to_symplectic().is_zero());
  CHECK(PauliString::from_symplectic(Gf2Vector::from_string("00111|10001")) == p);
}

TEST_CASE("text and symplectic round trips") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng() % 20;
    const auto p = test::random_pauli(n, rng);
    CHECK(PauliString::from_symplectic(p.to_symplectic()) == p);
    CHECK(PauliString::from_text(p.to_text()) == p);
  }
}

TEST_CASE("malformed text is rejected") {
  CHECK_THROWS(PauliString::from_text("XQ"));
  CHECK_THROWS(PauliString::from_text("x"));
}

TEST_CASE("single-site multiplication table") {
  const SignedPauli x{Phase::kPlusOne, PauliString::from_text("X")};
  const SignedPauli y{Phase::kPlusOne, PauliString::from_text("Y")};
  const auto xy = multiply(x, y);
  CHECK(xy.phase == Phase::kPlusI);
  CHECK(xy.string.to_text() == "Z");
  CHECK(multiply(y, x).phase == Phase::kMinusI);

  const auto zz_zi = multiply({Phase::kPlusOne, PauliString::from_text("ZZ")},
                              {Phase::kPlusOne, PauliString::from_text("ZI")});
  CHECK(zz_zi.phase == Phase::kPlusOne);
  CHECK(zz_zi.string.to_text() == "IZ");
}

TEST_CASE("every string squares to the identity") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const SignedPauli p{Phase::kPlusOne, test::random_pauli(1 + rng() % 12, rng)};
    const auto sq = multiply(p, p);
    CHECK(sq.phase == Phase::kPlusOne);
    CHECK(sq.string.is_identity());
  }
}

TEST_CASE("multiply matches dense products exhaustively for three qubits") {
  const auto strings = all_strings(3);
  std::vector<CMatrix> mats;
  for (const auto& p : strings) mats.push_back(kron_pauli(p.to_text()));
  for (std::size_t i = 0; i < strings.size(); ++i) {
    for (std::size_t j = 0; j < strings.size(); ++j) {
      const auto r = multiply({Phase::kPlusOne, strings[i]}, {Phase::kPlusOne, strings[j]});
      const CMatrix expect = mats[i] * mats[j];
      const CMatrix got = to_complex(r.phase) * kron_pauli(r.string.to_text());
      REQUIRE((expect - got).norm() < 1e-12);
    }
  }
}

TEST_CASE("multiply is associative including phases") {
  std::mt19937_64 rng(5);
  const Phase phases[] = {Phase::kPlusOne, Phase::kPlusI, Phase::kMinusOne, Phase::kMinusI};
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng() % 10;
    const SignedPauli a{phases[rng() % 4], test::random_pauli(n, rng)};
    const SignedPauli b{phases[rng() % 4], test::random_pauli(n, rng)};
    const SignedPauli c{phases[rng() % 4], test::random_pauli(n, rng)};
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
  }
}

TEST_CASE("commutation examples") {
  CHECK(commutes(PauliString::from_text("XX"), PauliString::from_text("ZZ")));
  CHECK_FALSE(commutes(PauliString::from_text("XI"), PauliString::from_text("ZI")));
  CHECK_THROWS(commutes(PauliString::from_text("X"), PauliString::from_text("XX")));
  CHECK_THROWS(multiply({Phase::kPlusOne, PauliString::from_text("X")},
                        {Phase::kPlusOne, PauliString::from_text("XX")}));
}

TEST_CASE("commutes agrees with dense commutators on all two-qubit pairs") {
  const auto strings = all_strings(2);
  REQUIRE(strings.size() == 16);
  int checked = 0;
  for (const auto& p : strings) {
    for (const auto& q : strings) {
      const CMatrix a = kron_pauli(p.to_text());
      const CMatrix b = kron_pauli(q.to_text());
      const bool dense_commute = (a * b - b * a).norm() < 1e-12;
      const bool dense_anticommute = (a * b + b * a).norm() < 1e-12;
      CHECK(commutes(p, q) == dense_commute);
      CHECK(dense_commute != dense_anticommute);
      ++checked;
    }
  }
  CHECK(checked == 256);
}

TEST_CASE("commutation row detects anticommutation") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng() % 16;
    const auto p = test::random_pauli(n, rng);
    const auto q = test::random_pauli(n, rng);
    CHECK(commutation_row(p).dot(q.to_symplectic()) == !commutes(p, q));
  }
}

TEST_CASE("is_independent examples") {
  const std::vector<PauliString> basis = {PauliString::from_text("ZI"), PauliString::from_text("IZ")};
  CHECK_FALSE(is_independent(PauliString::from_text("ZZ"), basis));
  CHECK(is_independent(PauliString::from_text("XI"), basis));
  CHECK_FALSE(is_independent(PauliString::from_text("II"), {}));
}

TEST_CASE("is_independent agrees with subset-product enumeration") {
  std::mt19937_64 rng(21);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto strings = all_strings(n);
    for (int t = 0; t < 60; ++t) {
      std::vector<PauliString> basis;
      const std::size_t k = rng() % 5;
      for (std::size_t i = 0; i < k; ++i) basis.push_back(strings[rng() % strings.size()]);
      std::set<PauliString> products;
      for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        PauliString acc(n);
        for (std::size_t i = 0; i < k; ++i)
          if (mask >> i & 1u) acc = unsigned_product(acc, basis[i]);
        products.insert(acc);
      }
      for (const auto& p : strings) CHECK(is_independent(p, basis) == (products.count(p) == 0));
    }
  }
}

TEST_CASE("canonical order") {
  const auto lt = [](const char* a, const char* b) {
    return canonical_less(PauliString::from_text(a), PauliString::from_text(b));
  };
  CHECK(lt("XI", "IX"));
  CHECK(lt("XI", "YI"));
  CHECK(lt("YI", "ZI"));
  CHECK(lt("ZI", "XX"));
  CHECK(lt("IZ", "XX"));
  CHECK_FALSE(lt("XX", "XX"));
  CHECK(lt("II", "XI"));
}

TEST_CASE("sentence bookkeeping") {
  PauliSentence s(2);
  s.add("XX", 0.5);
  s.add("ZI", 1.0);
  s.add("XX", -0.5);
  CHECK(s.size() == 1);
  CHECK(s.coefficient(PauliString::from_text("XX")) == 0.0);
  s.add("II", 2.0);
  CHECK(s.identity_coefficient() == 2.0);
  s.add("YY", 1e-14);
  s.prune(1e-12);
  CHECK(s.size() == 2);
  CHECK(s.norm() == doctest::Approx(std::sqrt(5.0)));
  const auto sorted = s.sorted_terms();
  CHECK(sorted.front().first.to_text() == "II");
}

TEST_CASE("sentence dense matrix is the weighted sum of term matrices") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng() % 4;
    const auto s = test::random_sentence(n, 6, rng);
    const CMatrix m = dense_matrix(s);
    CHECK((m - test::kron_sentence(s)).norm() < 1e-12);
    CHECK((m - m.adjoint()).norm() < 1e-12);
  }
}

TEST_CASE("commutator norm") {
  const auto a = PauliSentence::from_terms(2, {{"XX", 1.0}, {"YY", 1.0}});
  const auto b = PauliSentence::from_terms(2, {{"ZI", 1.0}, {"IZ", 1.0}});
  CHECK(commutator_norm(a, b) == doctest::Approx(0.0));
  const auto x = PauliSentence::from_terms(1, {{"X", 1.0}});
  const auto z = PauliSentence::from_terms(1, {{"Z", 1.0}});
  // [X, Z] = −2iY.
  CHECK(commutator_norm(x, z) == doctest::Approx(2.0));
}
