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
#include <vector>

#include "carbm/dense.hpp"
#include "carbm/pauli.hpp"

namespace carbm {

/// Qubit order: [system | copy | rbm-ancilla | probe-ancilla].
struct RegisterLayout {
  std::size_t system = 0;
  std::size_t copy = 0;
  bool rbm_ancilla = true;
  bool probe = false;

  std::size_t total() const { return system + copy + (rbm_ancilla ? 1 : 0) + (probe ? 1 : 0); }
  std::size_t ancilla_qubit() const;
  std::size_t probe_qubit() const;

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;
};

/// Dense 2^m × 2^m operator stored row-major.
class DensityMatrix {
 public:
  using cplx = std::complex<double>;

  static constexpr std::size_t kMaxQubits = 12;

  DensityMatrix() = default;
  /// |0…0⟩⟨0…0| on the given layout.
  explicit DensityMatrix(const RegisterLayout& layout);
  static DensityMatrix from_matrix(const CMatrix& m, const RegisterLayout& layout);

  const RegisterLayout& layout() const { return layout_; }
  std::size_t num_qubits() const { return layout_.total(); }
  std::size_t dim() const { return dim_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  cplx* row(std::size_t i) { return data_.data() + i * dim_; }
  const cplx* row(std::size_t i) const { return data_.data() + i * dim_; }
  std::vector<cplx>& data() { return data_; }
  const std::vector<cplx>& data() const { return data_; }

  double trace() const;
  void scale(double s);
  /// Replaces the matrix by its conjugate transpose.
  void adjoint_in_place();

  CMatrix to_matrix() const;
  /// Reduced state on the first `keep` qubits (tracing out the rest).
  CMatrix reduced_leading(std::size_t keep) const;
  /// Reduced state of the system register.
  CMatrix system_state() const { return reduced_leading(layout_.system); }

  /// Hermiticity and trace to `tol`, eigenvalues ≥ −psd_tol. Throws
  /// std::runtime_error describing the first violation.
  void check_valid(double tol = 1e-10, double psd_tol = 1e-10) const;

 private:
  RegisterLayout layout_;
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

}  // namespace carbm
