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

#include <bit>
#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "carbm/gf2.hpp"

namespace carbm {

/// Unsigned Pauli word on up to 64 qubits.
///
/// Stored as two packed bit masks: `x` (the X-part, a⃗) and `z` (the Z-part,
/// b⃗). Per qubit: I=(0,0), X=(1,0), Z=(0,1), Y=(1,1). Text form uses one
/// uppercase letter per qubit with the leftmost character being qubit 0.
///
/// Matrix convention: qubit q is bit q of the computational basis index, and
/// P|k⟩ = i^{|x∧z|} (−1)^{|k∧z|} |k ⊕ x⟩.
class PauliString {
 public:
  static constexpr std::size_t kMaxQubits = 64;

  PauliString() = default;
  explicit PauliString(std::size_t num_qubits);
  PauliString(std::size_t num_qubits, std::uint64_t x, std::uint64_t z);

  static PauliString from_text(std::string_view text);
  static PauliString single(std::size_t num_qubits, std::size_t qubit, char letter);

  /// Symplectic vector (b⃗|a⃗): the Z-part in the first n bits, X-part after.
  Gf2Vector to_symplectic() const;
  static PauliString from_symplectic(const Gf2Vector& v);

  std::string to_text() const;
  char letter(std::size_t qubit) const;

  std::size_t num_qubits() const { return n_; }
  std::uint64_t x_bits() const { return x_; }
  std::uint64_t z_bits() const { return z_; }
  std::uint64_t support() const { return x_ | z_; }
  std::size_t weight() const { return static_cast<std::size_t>(std::popcount(x_ | z_)); }
  bool is_identity() const { return (x_ | z_) == 0; }
  /// True when the string contains only I and Z (diagonal in the Z basis).
  bool is_diagonal() const { return x_ == 0; }

  /// Amplitude of column `k` of the matrix: P|k⟩ = basis_phase(k) |k ⊕ x⟩.
  std::complex<double> basis_phase(std::uint64_t k) const;

  /// Same word padded with identities up to `num_qubits`.
  PauliString widened(std::size_t num_qubits) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  std::size_t n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Deterministic order used for basis listings, greedy selections and
/// minimum-weight tie-breaks: weight first, then letters compared from qubit 0
/// with X < Y < Z < I (supports packed towards low qubit indices win).
bool canonical_less(const PauliString& a, const PauliString& b);

struct CanonicalLess {
  bool operator()(const PauliString& a, const PauliString& b) const { return canonical_less(a, b); }
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const noexcept;
};

/// True iff a⃗₁·b⃗₂ + b⃗₁·a⃗₂ ≡ 0 (mod 2). Throws on length mismatch.
bool commutes(const PauliString& p, const PauliString& q);

/// Bitwise sum of the symplectic vectors (product up to phase).
PauliString unsigned_product(const PauliString& p, const PauliString& q);

/// Fourth root of unity i^k.
enum class Phase : std::uint8_t { kPlusOne = 0, kPlusI = 1, kMinusOne = 2, kMinusI = 3 };

std::complex<double> to_complex(Phase phase);
Phase phase_from_exponent(int k);
Phase operator*(Phase a, Phase b);

struct SignedPauli {
  Phase phase = Phase::kPlusOne;
  PauliString string;

  friend bool operator==(const SignedPauli&, const SignedPauli&) = default;
};

SignedPauli multiply(const SignedPauli& p, const SignedPauli& q);

/// Row r such that r · to_symplectic(o) ≡ 1 iff `sigma` and o anticommute.
/// With p⃗ = (b⃗|a⃗) this is (a⃗_σ|b⃗_σ).
Gf2Vector commutation_row(const PauliString& sigma);

/// True iff the symplectic vector of `p` is outside the span of `basis`.
bool is_independent(const PauliString& p, const std::vector<PauliString>& basis);

/// Real-weighted sum of Pauli strings (a Hermitian operator).
///
/// Zero coefficients are never stored. Iteration order is by the packed
/// (x, z) representation so that two equal sentences iterate identically.
class PauliSentence {
 public:
  using TermMap = std::map<PauliString, double>;

  PauliSentence() = default;
  explicit PauliSentence(std::size_t num_qubits) : n_(num_qubits) {}

  static PauliSentence from_terms(std::size_t num_qubits,
                                  const std::vector<std::pair<std::string, double>>& terms);

  std::size_t num_qubits() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Accumulates `coeff` onto `p`; the term is erased if the sum is exactly 0.
  void add(const PauliString& p, double coeff);
  void add(std::string_view text, double coeff) { add(PauliString::from_text(text), coeff); }
  double coefficient(const PauliString& p) const;
  double identity_coefficient() const;

  /// Drops terms with |coefficient| <= threshold.
  void prune(double threshold);

  /// Sqrt of sum of squared coefficients (Frobenius norm / sqrt(2^n)).
  double norm() const;

  /// Terms sorted by `canonical_less`.
  std::vector<std::pair<PauliString, double>> sorted_terms() const;

  PauliSentence& operator+=(const PauliSentence& other);
  PauliSentence& operator*=(double s);
  friend PauliSentence operator+(PauliSentence a, const PauliSentence& b) { return a += b; }
  friend PauliSentence operator*(PauliSentence a, double s) { return a *= s; }
  friend PauliSentence operator*(double s, PauliSentence a) { return a *= s; }

  std::string to_text() const;

  friend bool operator==(const PauliSentence&, const PauliSentence&) = default;

 private:
  std::size_t n_ = 0;
  TermMap terms_;
};

/// ‖[A, B]‖ in Pauli-coefficient norm (sqrt of summed squared magnitudes).
double commutator_norm(const PauliSentence& a, const PauliSentence& b);

}  // namespace carbm
