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

#include <cstddef>

#include "carbm/pauli.hpp"

namespace carbm {

/// Open XXZ chain −J Σ(XX + YY) − J_z Σ ZZ plus probe field g_r Σ Z.
struct XXZSpec {
  std::size_t L = 4;
  double J = 1.0;
  double Jz = 1.0;
  double g_r = 0.0;
};

/// Staggered Gross-Neveu chain after Jordan-Wigner. Flavor a occupies qubits
/// a·L … a·L + L − 1; site n of a flavor runs from 1 to L.
struct GrossNeveuSpec {
  std::size_t N = 2;
  std::size_t L = 2;
  double G = 1.0;
  double mu = 0.0;
  double m = 0.0;
};

void validate(const XXZSpec& spec);
void validate(const GrossNeveuSpec& spec);

PauliSentence build_xxz(const XXZSpec& spec);

/// g_r Σ_i Z_i on L qubits.
PauliSentence build_probe(std::size_t L, double g_r);

/// Σ_i Z_i (unit-strength probe coupling H_I).
PauliSentence build_uniform_field(std::size_t L);

/// Kinetic Σ_a Σ_n (−X_nY_{n+1} + Y_nX_{n+1}), mass m Σ (−1)^n (1 − Z_n),
/// interaction −(G²/2) Σ_n Σ_{a<b} (1 − Z_n(a))(1 − Z_n(b)), and chemical
/// potential (μ/2) Σ_a Σ_n (−1)^n (X_nY_{n+1} − Y_nX_{n+1}).
PauliSentence build_gross_neveu(const GrossNeveuSpec& spec);

/// Σ_i Z_i Z_0 over the sites of flavor 0 (the i = 0 term is the identity).
PauliSentence build_condensate_observable(const GrossNeveuSpec& spec);

}  // namespace carbm
