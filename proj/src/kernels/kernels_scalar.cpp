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

#include "carbm/kernels.hpp"

namespace carbm::kernels {

namespace {

// Complex product written out so every variant rounds identically.
inline void cmul(double ar, double ai, double br, double bi, double& re, double& im) {
  re = ar * br - ai * bi;
  im = ar * bi + ai * br;
}

void mix_rows_scalar(cplx* r0, cplx* r1, std::size_t len, cplx a, cplx b, cplx c, cplx d) {
  double* p0 = reinterpret_cast<double*>(r0);
  double* p1 = reinterpret_cast<double*>(r1);
  for (std::size_t i = 0; i < len; ++i) {
    const double x0r = p0[2 * i], x0i = p0[2 * i + 1];
    const double x1r = p1[2 * i], x1i = p1[2 * i + 1];
    double t0r, t0i, t1r, t1i, t2r, t2i, t3r, t3i;
    cmul(a.real(), a.imag(), x0r, x0i, t0r, t0i);
    cmul(b.real(), b.imag(), x1r, x1i, t1r, t1i);
    cmul(c.real(), c.imag(), x0r, x0i, t2r, t2i);
    cmul(d.real(), d.imag(), x1r, x1i, t3r, t3i);
    p0[2 * i] = t0r + t1r;
    p0[2 * i + 1] = t0i + t1i;
    p1[2 * i] = t2r + t3r;
    p1[2 * i + 1] = t2i + t3i;
  }
}

void scale_row_scalar(cplx* r, std::size_t len, cplx a) {
  double* p = reinterpret_cast<double*>(r);
  for (std::size_t i = 0; i < len; ++i) {
    double re, im;
    cmul(a.real(), a.imag(), p[2 * i], p[2 * i + 1], re, im);
    p[2 * i] = re;
    p[2 * i + 1] = im;
  }
}

void rotate_pairs_scalar(double* x, const std::uint32_t* e, const std::uint32_t* f, const double* sign,
                         std::size_t count, double c, double s) {
  for (std::size_t p = 0; p < count; ++p) {
    const double xe = x[e[p]];
    const double xf = x[f[p]];
    const double ss = sign[p] * s;
    x[e[p]] = c * xe - ss * xf;
    x[f[p]] = c * xf + ss * xe;
  }
}

cplx dotc_scalar(const cplx* a, const cplx* b, std::size_t len) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double acc[2][2] = {{0, 0}, {0, 0}};
  for (std::size_t i = 0; i < len; ++i) {
    const double ar = pa[2 * i], ai = pa[2 * i + 1];
    const double br = pb[2 * i], bi = pb[2 * i + 1];
    double* s = acc[i & 1];
    s[0] = s[0] + (ar * br + ai * bi);
    s[1] = s[1] + (ai * br - ar * bi);
  }
  return {acc[0][0] + acc[1][0], acc[0][1] + acc[1][1]};
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", mix_rows_scalar, scale_row_scalar, rotate_pairs_scalar, dotc_scalar};
  return table;
}

}  // namespace carbm::kernels
