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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "carbm/pauli.hpp"

namespace carbm {

/// Set of Pauli strings closed under products of anticommuting pairs.
struct LieClosure {
  std::vector<PauliString> generators;
  /// Generators first (in input order), then new elements in discovery order.
  std::vector<PauliString> elements;

  bool contains(const PauliString& p) const;
};

class DimensionExceeded : public std::runtime_error {
 public:
  DimensionExceeded(std::size_t partial_size, std::size_t limit);
  std::size_t partial_size() const { return partial_size_; }

 private:
  std::size_t partial_size_;
};

/// Closure of the non-identity terms of `h` (plus `extra` generators) under
/// unsigned products of anticommuting pairs. Throws DimensionExceeded once the
/// set grows beyond `max_dim`.
LieClosure lie_closure(const PauliSentence& h, std::size_t max_dim,
                       const std::vector<PauliString>& extra = {});

struct CartanSubalgebra {
  std::vector<PauliString> basis;
};

/// Maximal commuting subset of the closure.
///
/// With a hint, the hint strings come first and are extended greedily; without
/// one, the greedy pass visits Z-only strings first and then the remaining
/// elements in canonical order. Throws std::invalid_argument when the hint is
/// not mutually commuting or contains strings outside the closure.
CartanSubalgebra select_csa(const LieClosure& closure, const std::optional<std::vector<PauliString>>& hint);

/// Applies s ↦ e^{−i·sign·θk} s e^{+i·sign·θk} termwise.
PauliSentence conjugate_by_exponential(const PauliSentence& s, double theta, const PauliString& k, int sign = 1);

struct OptimizeOptions {
  std::uint64_t seed = 7;
  /// Stop when the off-subalgebra part of K†HK, relative to ‖H‖, is below this.
  double tol = 1e-12;
  std::size_t max_iter = 4000;
  /// Closed-form coordinate sweeps run before the gradient stage.
  std::size_t warmup_sweeps = 4;
  /// Maximum Levenberg-Marquardt iterations of the polishing stage.
  std::size_t polish_iter = 200;
};

struct OptimizeResult {
  std::vector<double> angles;
  bool converged = false;
  std::size_t iterations = 0;
  double cost = 0.0;
  /// ‖off-subalgebra part of K†HK‖ / ‖H‖ in Pauli-coefficient norm.
  double off_csa = 0.0;
};

/// Angles θ for K = ∏_j e^{iθ_j k_j} (j = 0 first) making K†HK Abelian.
///
/// Cost f(θ) = ⟨v, K†HK⟩ with v = Σ_i γ^i h_i, γ = (√5 − 1)/2, h_i the i-th
/// basis string (i from 1). Stages: closed-form coordinate sweeps, BFGS with
/// an exact adjoint gradient, then Levenberg-Marquardt on the off-subalgebra
/// coefficients. `k_sequence` is the ordered factor list; it may repeat
/// strings.
OptimizeResult optimize_angles(const PauliSentence& h, const CartanSubalgebra& csa,
                               const std::vector<PauliString>& k_sequence, const OptimizeOptions& options);

struct KFactor {
  double theta = 0.0;
  PauliString k;
};

struct KHKDecomposition {
  std::size_t num_qubits = 0;
  /// K = ∏ e^{iθ_j k_j}, leftmost factor first.
  std::vector<KFactor> factors;
  PauliSentence h;
  CartanSubalgebra csa;
  double residual = 0.0;
  bool converged = true;
  std::size_t closure_size = 0;
  bool cache_hit = false;
  std::string cache_key;
};

struct DecomposeOptions {
  std::optional<std::vector<PauliString>> csa_hint;
  std::uint64_t seed = 7;
  double tol = 1e-10;
  std::size_t max_dim = 4096;
  /// Number of passes of the ordered k-basis in K.
  std::size_t k_repetitions = 2;
  OptimizeOptions optimizer;
  /// Directory for cached decompositions; empty disables caching.
  std::filesystem::path cache_dir;
};

/// H = K h K† with h in a Cartan subalgebra of the closure of H.
KHKDecomposition decompose(const PauliSentence& h, const DecomposeOptions& options = {});

/// ‖K h K† − H‖_F / ‖H‖_F computed densely.
double dense_residual(const PauliSentence& h_full, const std::vector<KFactor>& factors, const PauliSentence& h);

/// The ordered k-basis: closure elements not in the CSA, canonical order.
std::vector<PauliString> k_basis(const LieClosure& closure, const CartanSubalgebra& csa);

/// Z-strings on n qubits except I…I and Z…Z, canonical order.
std::vector<PauliString> z_products_except_full(std::size_t n);

}  // namespace carbm
