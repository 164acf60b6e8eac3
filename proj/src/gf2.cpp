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

#include "carbm/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace carbm {

Gf2Vector::Gf2Vector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

Gf2Vector Gf2Vector::from_string(const std::string& bits) {
  Gf2Vector v;
  std::size_t n = 0;
  for (char c : bits) {
    if (c == '0' || c == '1') ++n;
  }
  v = Gf2Vector(n);
  std::size_t i = 0;
  for (char c : bits) {
    if (c == '0' || c == '1') {
      v.set(i++, c == '1');
    } else if (c != '|' && c != ' ') {
      throw std::invalid_argument("Gf2Vector: unexpected character in bit string");
    }
  }
  return v;
}

void Gf2Vector::set(std::size_t i, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (value) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

bool Gf2Vector::is_zero() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t Gf2Vector::popcount() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t Gf2Vector::lowest_set() const {
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if (words_[k] != 0) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
  }
  return size_;
}

bool Gf2Vector::dot(const Gf2Vector& other) const {
  if (other.size_ != size_) throw std::invalid_argument("Gf2Vector::dot: length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & other.words_[k];
  return (std::popcount(acc) & 1) != 0;
}

Gf2Vector& Gf2Vector::operator^=(const Gf2Vector& other) {
  if (other.size_ != size_) throw std::invalid_argument("Gf2Vector::xor: length mismatch");
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
  return *this;
}

std::string Gf2Vector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

std::optional<Gf2Solution> gf2_solve(const std::vector<Gf2Vector>& rows, const Gf2Vector& rhs,
                                     std::size_t num_unknowns) {
  if (rhs.size() != rows.size()) throw std::invalid_argument("gf2_solve: rhs length != row count");
  // Augmented rows: unknown bits followed by the rhs bit.
  std::vector<Gf2Vector> aug;
  aug.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != num_unknowns) throw std::invalid_argument("gf2_solve: row length mismatch");
    Gf2Vector a(num_unknowns + 1);
    for (std::size_t c = 0; c < num_unknowns; ++c) a.set(c, rows[r].get(c));
    a.set(num_unknowns, rhs.get(r));
    aug.push_back(std::move(a));
  }

  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < num_unknowns && rank < aug.size(); ++col) {
    std::size_t piv = rank;
    while (piv < aug.size() && !aug[piv].get(col)) ++piv;
    if (piv == aug.size()) continue;
    std::swap(aug[rank], aug[piv]);
    for (std::size_t r = 0; r < aug.size(); ++r) {
      if (r != rank && aug[r].get(col)) aug[r] ^= aug[rank];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < aug.size(); ++r) {
    if (aug[r].get(num_unknowns)) return std::nullopt;
  }

  Gf2Solution sol;
  sol.rank = rank;
  sol.particular = Gf2Vector(num_unknowns);
  for (std::size_t r = 0; r < rank; ++r) sol.particular.set(pivot_cols[r], aug[r].get(num_unknowns));

  std::vector<bool> is_pivot(num_unknowns, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < num_unknowns; ++free) {
    if (is_pivot[free]) continue;
    Gf2Vector v(num_unknowns);
    v.set(free, true);
    for (std::size_t r = 0; r < rank; ++r) {
      if (aug[r].get(free)) v.set(pivot_cols[r], true);
    }
    sol.null_space.push_back(std::move(v));
  }
  return sol;
}

namespace {

// Reduced echelon basis: every row is zero at the pivots of the other rows.
struct EchelonBasis {
  std::vector<Gf2Vector> rows;
  std::vector<std::size_t> pivots;

  Gf2Vector reduce(Gf2Vector v) const {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (v.get(pivots[k])) v ^= rows[k];
    }
    return v;
  }
  bool insert(const Gf2Vector& v) {
    Gf2Vector red = reduce(v);
    if (red.is_zero()) return false;
    const std::size_t lead = red.lowest_set();
    for (auto& r : rows) {
      if (r.get(lead)) r ^= red;
    }
    rows.push_back(std::move(red));
    pivots.push_back(lead);
    return true;
  }
};

}  // namespace

std::size_t gf2_rank(const std::vector<Gf2Vector>& vectors) {
  EchelonBasis basis;
  std::size_t rank = 0;
  for (const auto& v : vectors) rank += basis.insert(v) ? 1 : 0;
  return rank;
}

bool gf2_in_span(const Gf2Vector& v, const std::vector<Gf2Vector>& basis) {
  EchelonBasis eb;
  for (const auto& b : basis) {
    if (b.size() != v.size()) throw std::invalid_argument("gf2_in_span: length mismatch");
    eb.insert(b);
  }
  return eb.reduce(v).is_zero();
}

}  // namespace carbm
