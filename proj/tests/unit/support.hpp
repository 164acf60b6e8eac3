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
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "carbm/dense.hpp"
#include "carbm/pauli.hpp"

namespace carbm::test {

// Kronecker-product Pauli matrices built letter by letter; qubit 0 is the
// least significant index bit. Independent of dense_matrix.
inline CMatrix kron_pauli(const std::string& text) {
  using C = std::complex<double>;
  CMatrix out = CMatrix::Identity(1, 1);
  for (auto it = text.rbegin(); it != text.rend(); ++it) {
    CMatrix m(2, 2);
    switch (*it) {
      case 'I': m << 1, 0, 0, 1; break;
      case 'X': m << 0, 1, 1, 0; break;
      case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
      case 'Z': m << 1, 0, 0, -1; break;
      default: throw std::invalid_argument("bad letter");
    }
    CMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * m;
    out = next;
  }
  return out;
}

inline CMatrix kron_sentence(const PauliSentence& s) {
  const auto dim = Eigen::Index{1} << s.num_qubits();
  CMatrix out = CMatrix::Zero(dim, dim);
  for (const auto& [p, c] : s.terms()) out += c * kron_pauli(p.to_text());
  return out;
}

inline PauliString random_pauli(std::size_t n, std::mt19937_64& rng) {
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return PauliString(n, rng() & mask, rng() & mask);
}

inline PauliSentence random_sentence(std::size_t n, std::size_t terms, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  PauliSentence s(n);
  for (std::size_t t = 0; t < terms; ++t) s.add(random_pauli(n, rng), gauss(rng));
  return s;
}

inline CVector random_ket(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  CVector v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = {gauss(rng), gauss(rng)};
  return v.normalized();
}

// Ginibre ensemble: G G† / Tr.
inline CMatrix random_density(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  const auto dim = Eigen::Index{1} << n;
  CMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = {gauss(rng), gauss(rng)};
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline CMatrix gibbs(const CMatrix& h, double beta) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const Eigen::VectorXd w = (-beta * (es.eigenvalues().array() - es.eigenvalues().minCoeff())).exp();
  CMatrix rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  return rho / rho.trace().real();
}

}  // namespace carbm::test
