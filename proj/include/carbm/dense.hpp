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

#include <Eigen/Dense>

#include "carbm/pauli.hpp"

namespace carbm {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Dense 2^n × 2^n matrix of a Pauli string (qubit q = bit q of the index).
CMatrix dense_matrix(const PauliString& p);
CMatrix dense_matrix(const PauliSentence& s);

/// exp(t·H) for Hermitian H and complex t, via the eigendecomposition of H.
CMatrix hermitian_exp(const CMatrix& h, std::complex<double> t);

/// General matrix exponential (Padé with scaling and squaring).
CMatrix general_exp(const CMatrix& m);

/// ½‖a − b‖₁ for Hermitian a, b.
double trace_distance(const CMatrix& a, const CMatrix& b);

/// In-place M ← e^{iθP} M e^{−iθP} using the permutation structure of P.
void conjugate_dense(CMatrix& m, const PauliString& p, double theta);

}  // namespace carbm
