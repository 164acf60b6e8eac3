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

#include <immintrin.h>

#include "carbm/kernels.hpp"

namespace carbm::kernels {

namespace {

// (a·x) for a broadcast complex a = (ar, ai) and two packed complexes x.
inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d x) {
  const __m256d xs = _mm256_permute_pd(x, 0b0101);
  return _mm256_addsub_pd(_mm256_mul_pd(ar, x), _mm256_mul_pd(ai, xs));
}

void mix_rows_avx2(cplx* r0, cplx* r1, std::size_t len, cplx a, cplx b, cplx c, cplx d) {
  double* p0 = reinterpret_cast<double*>(r0);
  double* p1 = reinterpret_cast<double*>(r1);
  const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
  const __m256d br = _mm256_set1_pd(b.real()), bi = _mm256_set1_pd(b.imag());
  const __m256d cr = _mm256_set1_pd(c.real()), ci = _mm256_set1_pd(c.imag());
  const __m256d dr = _mm256_set1_pd(d.real()), di = _mm256_set1_pd(d.imag());
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d x0 = _mm256_loadu_pd(p0 + 2 * i);
    const __m256d x1 = _mm256_loadu_pd(p1 + 2 * i);
    const __m256d n0 = _mm256_add_pd(cmul_bcast(ar, ai, x0), cmul_bcast(br, bi, x1));
    const __m256d n1 = _mm256_add_pd(cmul_bcast(cr, ci, x0), cmul_bcast(dr, di, x1));
    _mm256_storeu_pd(p0 + 2 * i, n0);
    _mm256_storeu_pd(p1 + 2 * i, n1);
  }
  if (i < len) scalar_table().mix_rows(r0 + i, r1 + i, len - i, a, b, c, d);
}

void scale_row_avx2(cplx* r, std::size_t len, cplx a) {
  double* p = reinterpret_cast<double*>(r);
  const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    _mm256_storeu_pd(p + 2 * i, cmul_bcast(ar, ai, _mm256_loadu_pd(p + 2 * i)));
  }
  if (i < len) scalar_table().scale_row(r + i, len - i, a);
}

void rotate_pairs_avx2(double* x, const std::uint32_t* e, const std::uint32_t* f, const double* sign,
                       std::size_t count, double c, double s) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t p = 0;
  alignas(32) double ne[4];
  alignas(32) double nf[4];
  for (; p + 4 <= count; p += 4) {
    const __m128i ie = _mm_loadu_si128(reinterpret_cast<const __m128i*>(e + p));
    const __m128i jf = _mm_loadu_si128(reinterpret_cast<const __m128i*>(f + p));
    const __m256d xe = _mm256_i32gather_pd(x, ie, 8);
    const __m256d xf = _mm256_i32gather_pd(x, jf, 8);
    const __m256d ss = _mm256_mul_pd(_mm256_loadu_pd(sign + p), vs);
    _mm256_store_pd(ne, _mm256_sub_pd(_mm256_mul_pd(vc, xe), _mm256_mul_pd(ss, xf)));
    _mm256_store_pd(nf, _mm256_add_pd(_mm256_mul_pd(vc, xf), _mm256_mul_pd(ss, xe)));
    for (int k = 0; k < 4; ++k) {
      x[e[p + k]] = ne[k];
      x[f[p + k]] = nf[k];
    }
  }
  if (p < count) scalar_table().rotate_pairs(x, e + p, f + p, sign + p, count - p, c, s);
}

cplx dotc_avx2(const cplx* a, const cplx* b, std::size_t len) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc = _mm256_setzero_pd();
  const __m256d neg = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d bre = _mm256_movedup_pd(vb);
    const __m256d bim = _mm256_permute_pd(vb, 0b1111);
    const __m256d t1 = _mm256_mul_pd(va, bre);
    const __m256d t2 = _mm256_xor_pd(_mm256_mul_pd(_mm256_permute_pd(va, 0b0101), bim), neg);
    acc = _mm256_add_pd(acc, _mm256_addsub_pd(t1, t2));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double even_r = lanes[0], even_i = lanes[1];
  const double odd_r = lanes[2], odd_i = lanes[3];
  if (i < len) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    const double br = pb[2 * i], bi = pb[2 * i + 1];
    even_r = even_r + (ar * br + ai * bi);
    even_i = even_i + (ai * br - ar * bi);
  }
  return {even_r + odd_r, even_i + odd_i};
}

}  // namespace

const KernelTable* avx2_table_impl() {
  static const KernelTable table{"avx2", mix_rows_avx2, scale_row_avx2, rotate_pairs_avx2, dotc_avx2};
  return &table;
}

}  // namespace carbm::kernels
