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
#include <optional>
#include <string>
#include <vector>

#include "carbm/circuit.hpp"
#include "carbm/density_matrix.hpp"
#include "carbm/pauli.hpp"

namespace carbm {

enum class Scheme { kStandard, kCorrectable };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

/// Constants of exp(−i(Wσ + b)⊗X_a), whose ancilla-|0⟩ block is e^{−κσ}/(2A).
struct RbmParams {
  Scheme scheme = Scheme::kStandard;
  double kappa = 0.0;
  double A = 0.5;
  double W = 0.0;
  double b = 0.0;
  int s = 1;
};

/// A = e^{|κ|}/2, W = ½·arccos(e^{−2|κ|}), b = sW, s = sign(κ) (+1 at 0).
RbmParams params_standard(double kappa);

/// A = sqrt(cosh(2κ)/2), W = arctan(e^{2κ}) − π/4, b = π/4. The failure
/// branch applies e^{+κσ}/(2A).
RbmParams params_correctable(double kappa);

RbmParams make_params(Scheme scheme, double kappa);

/// One imaginary-time factor e^{−κσ} on the system register.
struct ITELayer {
  PauliString sigma;
  double kappa = 0.0;
  RbmParams params;
  std::optional<PauliString> correction;
};

/// Validates the layer invariants (correction requires the correctable scheme
/// and must anticommute with sigma).
void validate(const ITELayer& layer);

struct ZReduction {
  /// Gates U with U σ U† = Z_target.
  std::vector<Gate> pre;
  std::size_t target = 0;
};

/// Clifford basis change onto the lowest-index qubit of the support:
/// H on X sites, S† then H on Y sites, then CX(site → target) for every other
/// site. Throws std::invalid_argument for the identity.
ZReduction reduce_to_z(const PauliString& sigma);

/// exp(−i(W·Z_target + b)⊗X_ancilla) on `num_qubits` qubits.
CMatrix block_unitary(const RbmParams& params, std::size_t target, std::size_t ancilla, std::size_t num_qubits);

/// Gates encoding the layer on the full register: reduce_to_z, RBM block,
/// inverse basis change. `sigma` is widened to the register.
std::vector<Gate> encode_layer(const RbmParams& params, const PauliString& sigma, std::size_t ancilla,
                               std::size_t num_qubits);

/// Closed-form probability of the ancilla-|0⟩ outcome. α = Pr(σ = s) for the
/// standard scheme and Pr(σ = +1) for the correctable one. Throws
/// std::invalid_argument if the trace of `state` is not 1 within 1e−10.
double success_probability(const RbmParams& params, const DensityMatrix& state, const PauliString& sigma);

/// Tr[cos²(Wσ + b)ρ] evaluated directly on the density matrix.
double success_probability_trace(const RbmParams& params, const DensityMatrix& state, const PauliString& sigma);

}  // namespace carbm
