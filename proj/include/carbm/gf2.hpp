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
#include <optional>
#include <string>
#include <vector>

namespace carbm {

/// Fixed-length bit vector over GF(2), packed little-endian into 64-bit words.
class Gf2Vector {
 public:
  Gf2Vector() = default;
  explicit Gf2Vector(std::size_t size);

  static Gf2Vector from_string(const std::string& bits);

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool value);
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  bool is_zero() const;
  std::size_t popcount() const;
  /// Index of the lowest set bit, or size() when zero.
  std::size_t lowest_set() const;

  /// Parity of the bitwise AND (the GF(2) inner product).
  bool dot(const Gf2Vector& other) const;
  Gf2Vector& operator^=(const Gf2Vector& other);
  friend Gf2Vector operator^(Gf2Vector a, const Gf2Vector& b) { return a ^= b; }

  /// Bits printed in index order, e.g. "00111".
  std::string to_string() const;

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const Gf2Vector&, const Gf2Vector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct Gf2Solution {
  Gf2Vector particular;
  std::vector<Gf2Vector> null_space;
  std::size_t rank = 0;
};

/// Solves rows · x = rhs over GF(2) by Gaussian elimination.
///
/// Each entry of `rows` is one equation over `num_unknowns` variables. Returns
/// std::nullopt when the system is inconsistent. The particular solution has
/// all free variables set to zero; `null_space` spans the solutions of the
/// homogeneous system, so there are 2^(num_unknowns − rank) solutions in total.
std::optional<Gf2Solution> gf2_solve(const std::vector<Gf2Vector>& rows, const Gf2Vector& rhs,
                                     std::size_t num_unknowns);

/// Rank of the span of `vectors`.
std::size_t gf2_rank(const std::vector<Gf2Vector>& vectors);

/// True iff `v` lies in the span of `basis`.
bool gf2_in_span(const Gf2Vector& v, const std::vector<Gf2Vector>& basis);

}  // namespace carbm
