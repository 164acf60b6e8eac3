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

#include "carbm/dense.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace carbm {

CMatrix dense_matrix(const PauliString& p) {
  const std::size_t n = p.num_qubits();
  if (n > 14) throw std::invalid_argument("dense_matrix: too many qubits for a dense matrix");
  const std::size_t dim = std::size_t{1} << n;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (std::uint64_t k = 0; k < dim; ++k) m(k ^ p.x_bits(), k) = p.basis_phase(k);
  return m;
}

CMatrix dense_matrix(const PauliSentence& s) {
  const std::size_t dim = std::size_t{1} << s.num_qubits();
  CMatrix m = CMatrix::Zero(dim, dim);
  for (const auto& [p, c] : s.terms()) {
    for (std::uint64_t k = 0; k < dim; ++k) m(k ^ p.x_bits(), k) += c * p.basis_phase(k);
  }
  return m;
}

CMatrix hermitian_exp(const CMatrix& h, std::complex<double> t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_exp: eigensolver failed");
  const Eigen::VectorXd& w = es.eigenvalues();
  CVector d(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) d(i) = std::exp(t * w(i));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix general_exp(const CMatrix& m) { return m.exp(); }

double trace_distance(const CMatrix& a, const CMatrix& b) {
  const CMatrix d = a - b;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

void conjugate_dense(CMatrix& m, const PauliString& p, double theta) {
  const Eigen::Index dim = m.rows();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const std::complex<double> is(0, s);
  // Left multiply by (c + i s P): row k of P·M is phase(k^x)·row(k^x).
  CMatrix left(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const std::uint64_t src = static_cast<std::uint64_t>(k) ^ p.x_bits();
    left.row(k) = c * m.row(k) + is * p.basis_phase(src) * m.row(static_cast<Eigen::Index>(src));
  }
  // Right multiply by (c − i s P): column l of M·P is phase(l)·column(l^x).
  for (Eigen::Index l = 0; l < dim; ++l) {
    const auto src = static_cast<Eigen::Index>(static_cast<std::uint64_t>(l) ^ p.x_bits());
    m.col(l) = c * left.col(l) - is * p.basis_phase(static_cast<std::uint64_t>(l)) * left.col(src);
  }
}

}  // namespace carbm
