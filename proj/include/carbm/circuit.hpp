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
#include <variant>
#include <vector>

#include "carbm/dense.hpp"
#include "carbm/pauli.hpp"

namespace carbm {

/// exp(−iθP); P spans the whole register.
struct PauliRotation {
  PauliString pauli;
  double theta = 0.0;
};

/// P applied when `control` is |1⟩. `control` must be outside P's support.
struct ControlledPauli {
  std::size_t control = 0;
  PauliString pauli;
};

struct Hadamard {
  std::size_t qubit = 0;
};

/// S = diag(1, i), or S† when `dagger`.
struct PhaseGate {
  std::size_t qubit = 0;
  bool dagger = false;
};

struct CNot {
  std::size_t control = 0;
  std::size_t target = 0;
};

/// exp(−i(W·Z_target + b)·X_ancilla).
struct RbmBlock {
  std::size_t target = 0;
  std::size_t ancilla = 0;
  double W = 0.0;
  double b = 0.0;
};

using Gate = std::variant<PauliRotation, ControlledPauli, Hadamard, PhaseGate, CNot, RbmBlock>;

/// Every gate above is two-sparse: (U·ψ)_k = α_k ψ_k + β_k ψ_{k ⊕ mask}.
/// When mask = 0 only α is used.
struct TwoSparse {
  std::uint64_t mask = 0;
  std::vector<std::complex<double>> alpha;
  std::vector<std::complex<double>> beta;
};

TwoSparse two_sparse_form(const Gate& g, std::size_t num_qubits);

Gate inverse(const Gate& g);
std::vector<Gate> inverse(const std::vector<Gate>& circuit);

/// Highest qubit index the gate touches, checked against `num_qubits`.
void check_indices(const Gate& g, std::size_t num_qubits);

/// Dense matrix of the gate on a register of `num_qubits` (independent of
/// two_sparse_form; used as an oracle).
CMatrix gate_matrix(const Gate& g, std::size_t num_qubits);
/// Product of the gate matrices, first gate applied first.
CMatrix circuit_matrix(const std::vector<Gate>& circuit, std::size_t num_qubits);

}  // namespace carbm
