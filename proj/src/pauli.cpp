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

#include "carbm/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace carbm {

namespace {

std::uint64_t low_mask(std::size_t n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

// Rank of a single-site letter in the canonical order X < Y < Z < I.
int letter_rank(bool x, bool z) {
  if (x && !z) return 0;
  if (x && z) return 1;
  if (z) return 2;
  return 3;
}

void require_same_length(const PauliString& p, const PauliString& q, const char* what) {
  if (p.num_qubits() != q.num_qubits()) {
    throw std::invalid_argument(std::string(what) + ": Pauli length mismatch (" +
                                std::to_string(p.num_qubits()) + " vs " + std::to_string(q.num_qubits()) + ")");
  }
}

}  // namespace

PauliString::PauliString(std::size_t num_qubits) : PauliString(num_qubits, 0, 0) {}

PauliString::PauliString(std::size_t num_qubits, std::uint64_t x, std::uint64_t z) : n_(num_qubits), x_(x), z_(z) {
  if (num_qubits > kMaxQubits) throw std::invalid_argument("PauliString: more than 64 qubits");
  if (((x | z) & ~low_mask(num_qubits)) != 0) throw std::invalid_argument("PauliString: bits beyond qubit count");
}

PauliString PauliString::from_text(std::string_view text) {
  if (text.size() > kMaxQubits) throw std::invalid_argument("PauliString: more than 64 qubits");
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << i;
    switch (text[i]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument("PauliString: invalid letter '" + std::string(1, text[i]) + "' in \"" +
                                    std::string(text) + "\"");
    }
  }
  return PauliString(text.size(), x, z);
}

PauliString PauliString::single(std::size_t num_qubits, std::size_t qubit, char letter) {
  if (qubit >= num_qubits) throw std::out_of_range("PauliString::single: qubit out of range");
  std::string s(num_qubits, 'I');
  s[qubit] = letter;
  return from_text(s);
}

Gf2Vector PauliString::to_symplectic() const {
  Gf2Vector v(2 * n_);
  for (std::size_t q = 0; q < n_; ++q) {
    v.set(q, (z_ >> q) & 1u);
    v.set(n_ + q, (x_ >> q) & 1u);
  }
  return v;
}

PauliString PauliString::from_symplectic(const Gf2Vector& v) {
  if (v.size() % 2 != 0) throw std::invalid_argument("from_symplectic: odd vector length");
  const std::size_t n = v.size() / 2;
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (std::size_t q = 0; q < n; ++q) {
    if (v.get(q)) z |= std::uint64_t{1} << q;
    if (v.get(n + q)) x |= std::uint64_t{1} << q;
  }
  return PauliString(n, x, z);
}

char PauliString::letter(std::size_t qubit) const {
  const bool x = (x_ >> qubit) & 1u;
  const bool z = (z_ >> qubit) & 1u;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::string PauliString::to_text() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = letter(q);
  return s;
}

std::complex<double> PauliString::basis_phase(std::uint64_t k) const {
  static const std::complex<double> kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const int e = std::popcount(x_ & z_) + 2 * std::popcount(k & z_);
  return kPowers[e & 3];
}

PauliString PauliString::widened(std::size_t num_qubits) const {
  if (num_qubits < n_) throw std::invalid_argument("PauliString::widened: cannot shrink");
  return PauliString(num_qubits, x_, z_);
}

bool canonical_less(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) return a.num_qubits() < b.num_qubits();
  if (a.weight() != b.weight()) return a.weight() < b.weight();
  for (std::size_t q = 0; q < a.num_qubits(); ++q) {
    const int ra = letter_rank((a.x_bits() >> q) & 1u, (a.z_bits() >> q) & 1u);
    const int rb = letter_rank((b.x_bits() >> q) & 1u, (b.z_bits() >> q) & 1u);
    if (ra != rb) return ra < rb;
  }
  return false;
}

std::size_t PauliStringHash::operator()(const PauliString& p) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ p.num_qubits();
  h ^= p.x_bits() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= p.z_bits() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

bool commutes(const PauliString& p, const PauliString& q) {
  require_same_length(p, q, "commutes");
  return (std::popcount((p.x_bits() & q.z_bits()) ^ (p.z_bits() & q.x_bits())) & 1) == 0;
}

PauliString unsigned_product(const PauliString& p, const PauliString& q) {
  require_same_length(p, q, "unsigned_product");
  return PauliString(p.num_qubits(), p.x_bits() ^ q.x_bits(), p.z_bits() ^ q.z_bits());
}

std::complex<double> to_complex(Phase phase) {
  switch (phase) {
    case Phase::kPlusOne: return {1, 0};
    case Phase::kPlusI: return {0, 1};
    case Phase::kMinusOne: return {-1, 0};
    case Phase::kMinusI: return {0, -1};
  }
  return {1, 0};
}

Phase phase_from_exponent(int k) { return static_cast<Phase>(((k % 4) + 4) % 4); }

Phase operator*(Phase a, Phase b) { return phase_from_exponent(static_cast<int>(a) + static_cast<int>(b)); }

SignedPauli multiply(const SignedPauli& p, const SignedPauli& q) {
  require_same_length(p.string, q.string, "multiply");
  const auto& a = p.string;
  const auto& b = q.string;
  const PauliString c = unsigned_product(a, b);
  const int e = std::popcount(a.x_bits() & a.z_bits()) + std::popcount(b.x_bits() & b.z_bits()) -
                std::popcount(c.x_bits() & c.z_bits()) + 2 * std::popcount(a.z_bits() & b.x_bits());
  return {p.phase * q.phase * phase_from_exponent(e), c};
}

Gf2Vector commutation_row(const PauliString& sigma) {
  const std::size_t n = sigma.num_qubits();
  Gf2Vector row(2 * n);
  for (std::size_t q = 0; q < n; ++q) {
    row.set(q, (sigma.x_bits() >> q) & 1u);
    row.set(n + q, (sigma.z_bits() >> q) & 1u);
  }
  return row;
}

bool is_independent(const PauliString& p, const std::vector<PauliString>& basis) {
  std::vector<Gf2Vector> vecs;
  vecs.reserve(basis.size());
  for (const auto& b : basis) {
    require_same_length(p, b, "is_independent");
    vecs.push_back(b.to_symplectic());
  }
  return !gf2_in_span(p.to_symplectic(), vecs);
}

PauliSentence PauliSentence::from_terms(std::size_t num_qubits,
                                        const std::vector<std::pair<std::string, double>>& terms) {
  PauliSentence s(num_qubits);
  for (const auto& [text, c] : terms) s.add(text, c);
  return s;
}

void PauliSentence::add(const PauliString& p, double coeff) {
  if (p.num_qubits() != n_) throw std::invalid_argument("PauliSentence::add: qubit count mismatch");
  if (!std::isfinite(coeff)) throw std::invalid_argument("PauliSentence::add: non-finite coefficient");
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(p, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double PauliSentence::coefficient(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0.0 : it->second;
}

double PauliSentence::identity_coefficient() const { return coefficient(PauliString(n_)); }

void PauliSentence::prune(double threshold) {
  std::erase_if(terms_, [threshold](const auto& kv) { return std::abs(kv.second) <= threshold; });
}

double PauliSentence::norm() const {
  double s = 0;
  for (const auto& [p, c] : terms_) s += c * c;
  return std::sqrt(s);
}

std::vector<std::pair<PauliString, double>> PauliSentence::sorted_terms() const {
  std::vector<std::pair<PauliString, double>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
  return out;
}

PauliSentence& PauliSentence::operator+=(const PauliSentence& other) {
  if (other.n_ != n_) throw std::invalid_argument("PauliSentence: qubit count mismatch");
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

PauliSentence& PauliSentence::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, c] : terms_) c *= s;
  return *this;
}

std::string PauliSentence::to_text() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& [p, c] : sorted_terms()) {
    if (!first) os << " + ";
    os << c << "*" << p.to_text();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

double commutator_norm(const PauliSentence& a, const PauliSentence& b) {
  if (a.num_qubits() != b.num_qubits()) throw std::invalid_argument("commutator_norm: qubit count mismatch");
  std::map<PauliString, std::complex<double>> acc;
  for (const auto& [p, cp] : a.terms()) {
    for (const auto& [q, cq] : b.terms()) {
      if (commutes(p, q)) continue;
      const SignedPauli pq = multiply({Phase::kPlusOne, p}, {Phase::kPlusOne, q});
      acc[pq.string] += 2.0 * cp * cq * to_complex(pq.phase);
    }
  }
  double s = 0;
  for (const auto& [p, c] : acc) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace carbm
