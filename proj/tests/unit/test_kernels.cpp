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

#include <complex>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "carbm/kernels.hpp"

using namespace carbm::kernels;

namespace {

std::vector<cplx> random_row(std::size_t len, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(len);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

bool same_bits(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

}  // namespace

TEST_CASE("scalar kernels against direct formulas") {
  std::mt19937_64 rng(1);
  const auto& s = scalar_table();
  auto r0 = random_row(17, rng);
  auto r1 = random_row(17, rng);
  const auto o0 = r0, o1 = r1;
  const cplx a{0.3, -0.1}, b{1.2, 0.5}, c{-0.7, 0.2}, d{0.1, 0.9};
  s.mix_rows(r0.data(), r1.data(), r0.size(), a, b, c, d);
  for (std::size_t i = 0; i < r0.size(); ++i) {
    CHECK(std::abs(r0[i] - (a * o0[i] + b * o1[i])) < 1e-14);
    CHECK(std::abs(r1[i] - (c * o0[i] + d * o1[i])) < 1e-14);
  }
  cplx ref = 0;
  for (std::size_t i = 0; i < o0.size(); ++i) ref += o0[i] * std::conj(o1[i]);
  CHECK(std::abs(s.dotc(o0.data(), o1.data(), o0.size()) - ref) < 1e-12);

  std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
  const std::vector<std::uint32_t> e = {0, 2}, f = {1, 3};
  const std::vector<double> sign = {1.0, -1.0};
  s.rotate_pairs(x.data(), e.data(), f.data(), sign.data(), 2, 0.6, 0.8);
  CHECK(x[0] == doctest::Approx(0.6 * 1 - 0.8 * 2));
  CHECK(x[1] == doctest::Approx(0.6 * 2 + 0.8 * 1));
  CHECK(x[2] == doctest::Approx(0.6 * 3 + 0.8 * 4));
  CHECK(x[3] == doctest::Approx(0.6 * 4 - 0.8 * 3));
}

TEST_CASE("avx2 kernels are bitwise identical to scalar") {
  const KernelTable* v = avx2_table();
  if (v == nullptr) {
    MESSAGE("AVX2 unavailable; skipped");
    return;
  }
  const auto& s = scalar_table();
  std::mt19937_64 rng(2);
  for (std::size_t len : {0u, 1u, 2u, 3u, 7u, 8u, 31u, 64u, 257u}) {
    auto a0 = random_row(len, rng), a1 = random_row(len, rng);
    auto b0 = a0, b1 = a1;
    const cplx a{0.3, -0.1}, b{1.2, 0.5}, c{-0.7, 0.2}, d{0.1, 0.9};
    s.mix_rows(a0.data(), a1.data(), len, a, b, c, d);
    v->mix_rows(b0.data(), b1.data(), len, a, b, c, d);
    CHECK(same_bits(a0, b0));
    CHECK(same_bits(a1, b1));

    s.scale_row(a0.data(), len, c);
    v->scale_row(b0.data(), len, c);
    CHECK(same_bits(a0, b0));

    const cplx ds = s.dotc(a0.data(), a1.data(), len);
    const cplx dv = v->dotc(b0.data(), b1.data(), len);
    CHECK(std::memcmp(&ds, &dv, sizeof(cplx)) == 0);

    std::normal_distribution<double> g;
    std::vector<double> xs(2 * len + 2);
    for (auto& x : xs) x = g(rng);
    auto xv = xs;
    std::vector<std::uint32_t> e(len), f(len);
    std::vector<double> sign(len);
    for (std::size_t i = 0; i < len; ++i) {
      e[i] = static_cast<std::uint32_t>(2 * i);
      f[i] = static_cast<std::uint32_t>(2 * i + 1);
      sign[i] = (rng() & 1u) ? 1.0 : -1.0;
    }
    s.rotate_pairs(xs.data(), e.data(), f.data(), sign.data(), len, 0.28, 0.96);
    v->rotate_pairs(xv.data(), e.data(), f.data(), sign.data(), len, 0.28, 0.96);
    CHECK(std::memcmp(xs.data(), xv.data(), xs.size() * sizeof(double)) == 0);
  }
}

TEST_CASE("kernel selection") {
  CHECK(select("scalar"));
  CHECK(std::string(active().name) == "scalar");
  CHECK_FALSE(select("neon9000"));
  if (avx2_table() != nullptr) {
    CHECK(select("avx2"));
    CHECK(std::string(active().name) == "avx2");
  }
  CHECK(select("auto"));
}
