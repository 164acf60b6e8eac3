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
#include <set>

#include "carbm/gf2.hpp"
#include "carbm/pauli.hpp"
#include "support.hpp"

using namespace carbm;

namespace {

std::vector<PauliString> all_strings(std::size_t n) {
  std::vector<PauliString> out;
  const std::uint64_t lim = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < lim; ++x)
    for (std::uint64_t z = 0; z < lim; ++z) out.emplace_back(n, x, z);
  return out;
}

std::vector<Gf2Vector> rows_of(const std::vector<PauliString>& sigmas) {
  std::vector<Gf2Vector> rows;
  for (const auto& s : sigmas) rows.push_back(commutation_row(s));
  return rows;
}

// All solutions spanned by a descriptor.
std::set<PauliString> expand(const Gf2Solution& sol) {
  std::set<PauliString> out;
  const std::size_t k = sol.null_space.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    Gf2Vector v = sol.particular;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1u) v ^= sol.null_space[i];
    out.insert(PauliString::from_symplectic(v));
  }
  return out;
}

}  // namespace

TEST_CASE("bit vector basics") {
  auto v = Gf2Vector::from_string("0110|1");
  CHECK(v.size() == 5);
  CHECK(v.popcount() == 3);
  CHECK(v.lowest_set() == 1);
  CHECK(v.dot(Gf2Vector::from_string("01000")));
  CHECK_FALSE(v.dot(Gf2Vector::from_string("01001")));
  v.flip(1);
  CHECK(v.to_string() == "00101");
  CHECK(Gf2Vector(70).lowest_set() == 70);
}

TEST_CASE("ZI, IZ with rhs (0,1) gives IX") {
  const std::vector<PauliString> sigmas = {PauliString::from_text("ZI"), PauliString::from_text("IZ")};
  const auto sol = gf2_solve(rows_of(sigmas), Gf2Vector::from_string("01"), 4);
  REQUIRE(sol.has_value());
  CHECK(PauliString::from_symplectic(sol->particular).to_text() == "IX");
  CHECK(sol->rank == 2);

  std::set<PauliString> brute;
  for (const auto& o : all_strings(2))
    if (commutes(o, sigmas[0]) && !commutes(o, sigmas[1])) brute.insert(o);
  CHECK(brute.size() == 4);
  CHECK(expand(*sol) == brute);
}

TEST_CASE("dependent target has no solution") {
  const auto rows = rows_of(
      {PauliString::from_text("ZI"), PauliString::from_text("IZ"), PauliString::from_text("ZZ")});
  CHECK_FALSE(gf2_solve(rows, Gf2Vector::from_string("001"), 4).has_value());
}

TEST_CASE("unconstrained system") {
  const auto sol = gf2_solve({}, Gf2Vector(0), 6);
  REQUIRE(sol.has_value());
  CHECK(sol->particular.is_zero());
  CHECK(sol->particular.size() == 6);
  CHECK(sol->null_space.size() == 6);
  CHECK(gf2_rank(sol->null_space) == 6);
}

TEST_CASE("solver agrees with brute force on every pattern for n up to 3") {
  std::mt19937_64 rng(17);
  std::size_t inconsistent = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto strings = all_strings(n);
    for (int t = 0; t < 400; ++t) {
      const std::size_t k = 1 + rng() % (2 * n + 1);
      std::vector<PauliString> sigmas;
      for (std::size_t i = 0; i < k; ++i) sigmas.push_back(strings[rng() % strings.size()]);
      Gf2Vector rhs(k);
      for (std::size_t i = 0; i < k; ++i) rhs.set(i, rng() & 1u);

      std::set<PauliString> brute;
      for (const auto& o : strings) {
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) ok = commutes(o, sigmas[i]) != rhs.get(i);
        if (ok) brute.insert(o);
      }
      const auto sol = gf2_solve(rows_of(sigmas), rhs, 2 * n);
      REQUIRE(sol.has_value() == !brute.empty());
      if (!sol) {
        ++inconsistent;
        continue;
      }
      CHECK(brute.size() == (std::size_t{1} << (2 * n - sol->rank)));
      CHECK(expand(*sol) == brute);
      const auto rows = rows_of(sigmas);
      for (std::size_t i = 0; i < k; ++i) {
        CHECK(rows[i].dot(sol->particular) == rhs.get(i));
        for (const auto& nv : sol->null_space) CHECK(rows[i].dot(sol->particular ^ nv) == rhs.get(i));
      }
    }
  }
  CHECK(inconsistent > 0);
}

TEST_CASE("rank and span") {
  const std::vector<Gf2Vector> vs = {Gf2Vector::from_string("1100"), Gf2Vector::from_string("0110"),
                                     Gf2Vector::from_string("1010")};
  CHECK(gf2_rank(vs) == 2);
  CHECK(gf2_in_span(Gf2Vector::from_string("0000"), vs));
  CHECK(gf2_in_span(Gf2Vector::from_string("1010"), vs));
  CHECK_FALSE(gf2_in_span(Gf2Vector::from_string("0001"), vs));
}
