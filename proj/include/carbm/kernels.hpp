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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace carbm::kernels {

using cplx = std::complex<double>;

/// Inner loops shared by the simulator and the Cartan optimizer.
///
/// Every variant performs the same floating-point operations in the same order
/// (no fused multiply-add, identical reduction tree), so results are
/// bitwise identical across variants.
struct KernelTable {
  const char* name;
  /// r0 ← a·r0 + b·r1, r1 ← c·r0 + d·r1 (both right-hand sides use old values).
  void (*mix_rows)(cplx* r0, cplx* r1, std::size_t len, cplx a, cplx b, cplx c, cplx d);
  /// r ← a·r.
  void (*scale_row)(cplx* r, std::size_t len, cplx a);
  /// For each pair p: (x[e], x[f]) ← (c·x[e] − sign·s·x[f], c·x[f] + sign·s·x[e]).
  void (*rotate_pairs)(double* x, const std::uint32_t* e, const std::uint32_t* f, const double* sign,
                       std::size_t count, double c, double s);
  /// Σ a[i]·conj(b[i]), accumulated in two interleaved partial sums (even and
  /// odd i) that are added at the end.
  cplx (*dotc)(const cplx* a, const cplx* b, std::size_t len);
};

const KernelTable& scalar_table();
/// nullptr when AVX2 support was not compiled in or the CPU lacks it.
const KernelTable* avx2_table();

/// Kernel set in use. Chosen on first call: the CARBM_KERNELS environment
/// variable ("scalar", "avx2", "auto") if set, otherwise the widest available.
const KernelTable& active();

/// Overrides the active set. Returns false if `name` is unavailable.
bool select(std::string_view name);

}  // namespace carbm::kernels
