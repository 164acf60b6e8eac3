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

#include "carbm/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "carbm/kernels.hpp"

namespace carbm {

using cplx = std::complex<double>;

std::size_t RegisterLayout::ancilla_qubit() const {
  if (!rbm_ancilla) throw std::logic_error("RegisterLayout: no RBM ancilla");
  return system + copy;
}

std::size_t RegisterLayout::probe_qubit() const {
  if (!probe) throw std::logic_error("RegisterLayout: no probe ancilla");
  return system + copy + (rbm_ancilla ? 1 : 0);
}

DensityMatrix::DensityMatrix(const RegisterLayout& layout) : layout_(layout) {
  if (layout.total() > kMaxQubits) {
    throw std::invalid_argument("DensityMatrix: " + std::to_string(layout.total()) + " qubits exceeds the limit of " +
                                std::to_string(kMaxQubits));
  }
  dim_ = std::size_t{1} << layout.total();
  data_.assign(dim_ * dim_, cplx(0));
  data_[0] = 1;
}

DensityMatrix DensityMatrix::from_matrix(const CMatrix& m, const RegisterLayout& layout) {
  DensityMatrix d(layout);
  if (static_cast<std::size_t>(m.rows()) != d.dim_ || static_cast<std::size_t>(m.cols()) != d.dim_) {
    throw std::invalid_argument("DensityMatrix::from_matrix: dimension mismatch");
  }
  for (std::size_t i = 0; i < d.dim_; ++i) {
    for (std::size_t j = 0; j < d.dim_; ++j) d(i, j) = m(i, j);
  }
  return d;
}

double DensityMatrix::trace() const {
  double t = 0;
  for (std::size_t i = 0; i < dim_; ++i) t += data_[i * dim_ + i].real();
  return t;
}

void DensityMatrix::scale(double s) {
  for (auto& v : data_) v *= s;
}

void DensityMatrix::adjoint_in_place() {
  for (std::size_t i = 0; i < dim_; ++i) {
    data_[i * dim_ + i] = std::conj(data_[i * dim_ + i]);
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const cplx a = data_[i * dim_ + j];
      data_[i * dim_ + j] = std::conj(data_[j * dim_ + i]);
      data_[j * dim_ + i] = std::conj(a);
    }
  }
}

CMatrix DensityMatrix::to_matrix() const {
  CMatrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = data_[i * dim_ + j];
  }
  return m;
}

CMatrix DensityMatrix::reduced_leading(std::size_t keep) const {
  const std::size_t kd = std::size_t{1} << keep;
  const std::size_t rest = dim_ / kd;
  CMatrix m = CMatrix::Zero(kd, kd);
  for (std::size_t r = 0; r < rest; ++r) {
    for (std::size_t i = 0; i < kd; ++i) {
      for (std::size_t j = 0; j < kd; ++j) m(i, j) += (*this)(r * kd + i, r * kd + j);
    }
  }
  return m;
}

void DensityMatrix::check_valid(double tol, double psd_tol) const {
  double herm = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) herm = std::max(herm, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  }
  if (herm > tol) throw std::runtime_error("DensityMatrix: not Hermitian (deviation " + std::to_string(herm) + ")");
  if (std::abs(trace() - 1.0) > tol) throw std::runtime_error("DensityMatrix: trace " + std::to_string(trace()));
  Eigen::SelfAdjointEigenSolver<CMatrix> es(to_matrix(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -psd_tol) {
    throw std::runtime_error("DensityMatrix: negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  }
}

namespace {

void apply_rows(DensityMatrix& state, const TwoSparse& t) {
  const kernels::KernelTable& k = kernels::active();
  const std::size_t dim = state.dim();
  if (t.mask == 0) {
    for (std::size_t r = 0; r < dim; ++r) {
      const cplx a = t.alpha[r] + t.beta[r];
      if (a != cplx(1)) k.scale_row(state.row(r), dim, a);
    }
    return;
  }
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t q = r ^ t.mask;
    if (q < r) continue;
    k.mix_rows(state.row(r), state.row(q), dim, t.alpha[r], t.beta[r], t.beta[q], t.alpha[q]);
  }
}

void apply_two_sparse(DensityMatrix& state, const TwoSparse& t) {
  // U(Uρ)† = UρU† for Hermitian ρ.
  apply_rows(state, t);
  state.adjoint_in_place();
  apply_rows(state, t);
}

bool bit(std::uint64_t k, std::size_t q) { return (k >> q) & 1u; }

}  // namespace

DensityMatrix prepare_initial(std::size_t n, InitMode mode, bool with_probe) {
  RegisterLayout layout;
  layout.system = n;
  layout.copy = mode == InitMode::kTfdPurified ? n : 0;
  layout.rbm_ancilla = true;
  layout.probe = with_probe;
  DensityMatrix rho(layout);
  if (mode == InitMode::kMixedDensity) {
    rho(0, 0) = 0;
    const std::size_t sd = std::size_t{1} << n;
    for (std::size_t k = 0; k < sd; ++k) rho(k, k) = 1.0 / static_cast<double>(sd);
    return rho;
  }
  for (std::size_t i = 0; i < n; ++i) {
    apply_gate(rho, Hadamard{i});
    apply_gate(rho, CNot{i, n + i});
  }
  return rho;
}

void apply_gate(DensityMatrix& state, const Gate& gate) { apply_two_sparse(state, two_sparse_form(gate, state.num_qubits())); }

void apply_circuit(DensityMatrix& state, const std::vector<Gate>& circuit) {
  for (const auto& g : circuit) apply_gate(state, g);
}

void apply_unitary(DensityMatrix& state, const CMatrix& u) {
  if (static_cast<std::size_t>(u.rows()) != state.dim()) throw std::invalid_argument("apply_unitary: dimension mismatch");
  const CMatrix r = u * state.to_matrix() * u.adjoint();
  state = DensityMatrix::from_matrix(0.5 * (r + r.adjoint()), state.layout());
}

double postselect_zero(DensityMatrix& state, std::size_t qubit) {
  if (qubit >= state.num_qubits()) throw std::out_of_range("postselect_zero: qubit out of range");
  const std::size_t dim = state.dim();
  double p = 0;
  for (std::size_t k = 0; k < dim; ++k) {
    if (!bit(k, qubit)) p += state(k, k).real();
  }
  if (!(p > 0)) throw std::runtime_error("postselect_zero: outcome |0> has zero probability");
  const double inv = 1.0 / p;
  for (std::size_t i = 0; i < dim; ++i) {
    cplx* row = state.row(i);
    if (bit(i, qubit)) {
      std::fill(row, row + dim, cplx(0));
      continue;
    }
    for (std::size_t j = 0; j < dim; ++j) row[j] = bit(j, qubit) ? cplx(0) : row[j] * inv;
  }
  return p;
}

void reset_qubit(DensityMatrix& state, std::size_t qubit) {
  if (qubit >= state.num_qubits()) throw std::out_of_range("reset_qubit: qubit out of range");
  const std::size_t dim = state.dim();
  const std::size_t b = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < dim; ++i) {
    if (bit(i, qubit)) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (bit(j, qubit)) continue;
      state(i, j) += state(i | b, j | b);
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (bit(i, qubit) || bit(j, qubit)) state(i, j) = 0;
    }
  }
}

void prepare_probe_plus(DensityMatrix& state) {
  const std::size_t p = state.layout().probe_qubit();
  reset_qubit(state, p);
  apply_gate(state, Hadamard{p});
}

namespace {

void require_ancilla_reset(const DensityMatrix& state, std::size_t anc) {
  double excited = 0;
  for (std::size_t k = 0; k < state.dim(); ++k) {
    if (bit(k, anc)) excited += std::abs(state(k, k));
  }
  if (excited > 1e-12) throw std::runtime_error("apply_rbm_layer: ancilla not reset to |0>");
}

}  // namespace

LayerOutcome apply_rbm_layer(DensityMatrix& state, const ITELayer& layer) {
  validate(layer);
  const RegisterLayout& lay = state.layout();
  if (layer.sigma.num_qubits() != lay.system) throw std::invalid_argument("apply_rbm_layer: sigma width mismatch");
  const std::size_t anc = lay.ancilla_qubit();
  const std::size_t m = state.num_qubits();
  require_ancilla_reset(state, anc);

  apply_circuit(state, encode_layer(layer.params, layer.sigma, anc, m));
  LayerOutcome out;
  out.log_2a = std::log(2 * layer.params.A);
  if (!layer.correction) {
    out.probability = postselect_zero(state, anc);
    return out;
  }
  apply_gate(state, ControlledPauli{anc, layer.correction->widened(m)});
  reset_qubit(state, anc);
  out.probability = 1.0;
  return out;
}

RunResult run_ite(const DensityMatrix& state, const PauliSentence& h, double beta, const CorrectionPlan& plan) {
  std::unordered_map<PauliString, double, PauliStringHash> expected;
  for (const auto& [p, c] : h.terms()) {
    if (!p.is_identity()) expected.emplace(p, beta * c / 2);
  }
  if (plan.layers.size() != expected.size()) {
    throw std::invalid_argument("run_ite: plan has " + std::to_string(plan.layers.size()) + " layers, h has " +
                                std::to_string(expected.size()) + " non-identity terms");
  }
  for (const auto& l : plan.layers) {
    auto it = expected.find(l.sigma);
    if (it == expected.end()) throw std::invalid_argument("run_ite: layer " + l.sigma.to_text() + " not in h");
    if (std::abs(it->second - l.kappa) > 1e-12 * (1 + std::abs(l.kappa))) {
      throw std::invalid_argument("run_ite: layer " + l.sigma.to_text() + " has kappa inconsistent with beta*c/2");
    }
  }
  RunResult r;
  r.state = state;
  for (const auto& l : plan.layers) {
    const LayerOutcome o = apply_rbm_layer(r.state, l);
    r.success_probability *= o.probability;
    r.log_norm += o.log_2a;
    r.layer_probabilities.push_back(o.probability);
    if (l.correction) ++r.corrected_layers;
  }
  return r;
}

double reconstruct_partition_function(const RunResult& run, std::size_t n_system, double beta,
                                      double identity_coefficient) {
  return std::exp(static_cast<double>(n_system) * std::log(2.0) + std::log(run.success_probability) +
                  2 * run.log_norm - static_cast<double>(run.corrected_layers) * std::log(2.0) -
                  beta * identity_coefficient);
}

cplx expectation_complex(const DensityMatrix& state, const PauliString& p) {
  if (p.num_qubits() != state.num_qubits()) throw std::invalid_argument("expectation: width mismatch");
  cplx acc = 0;
  const std::uint64_t x = p.x_bits();
  for (std::uint64_t k = 0; k < state.dim(); ++k) acc += p.basis_phase(k ^ x) * state(k ^ x, k);
  return acc;
}

double expectation(const DensityMatrix& state, const PauliSentence& obs) {
  if (obs.num_qubits() != state.layout().system && obs.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("expectation: observable width " + std::to_string(obs.num_qubits()) +
                                " matches neither system nor register");
  }
  cplx acc = 0;
  double scale = 0;
  for (const auto& [p, c] : obs.terms()) {
    acc += c * expectation_complex(state, p.widened(state.num_qubits()));
    scale += std::abs(c);
  }
  if (std::abs(acc.imag()) > 1e-10 * std::max(1.0, scale)) {
    throw std::logic_error("expectation: imaginary part " + std::to_string(acc.imag()));
  }
  return acc.real();
}

cplx ancilla_coherence(const DensityMatrix& state, std::size_t qubit) {
  if (qubit >= state.num_qubits()) throw std::out_of_range("ancilla_coherence: qubit out of range");
  const std::size_t b = std::size_t{1} << qubit;
  cplx acc = 0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    if (!bit(i, qubit)) acc += state(i, i | b);
  }
  return 2.0 * acc;
}

std::map<std::string, std::size_t> sample_shots(const DensityMatrix& state, const PauliString& basis,
                                                std::size_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("sample_shots: shots must be positive");
  if (basis.num_qubits() != state.layout().system) throw std::invalid_argument("sample_shots: basis width mismatch");
  DensityMatrix rotated = state;
  std::vector<std::size_t> measured;
  for (std::size_t q = 0; q < basis.num_qubits(); ++q) {
    const char c = basis.letter(q);
    if (c == 'I') continue;
    measured.push_back(q);
    if (c == 'Y') apply_gate(rotated, PhaseGate{q, true});
    if (c == 'X' || c == 'Y') apply_gate(rotated, Hadamard{q});
  }
  const std::size_t outcomes = std::size_t{1} << measured.size();
  std::vector<double> prob(outcomes, 0.0);
  for (std::uint64_t k = 0; k < rotated.dim(); ++k) {
    std::size_t o = 0;
    for (std::size_t i = 0; i < measured.size(); ++i) o |= static_cast<std::size_t>(bit(k, measured[i])) << i;
    prob[o] += std::max(0.0, rotated(k, k).real());
  }
  std::vector<double> cdf(outcomes);
  double acc = 0;
  for (std::size_t o = 0; o < outcomes; ++o) cdf[o] = (acc += prob[o]);

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> counts(outcomes, 0);
  for (std::size_t s = 0; s < shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
    std::size_t o = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (o >= outcomes) {
      o = outcomes - 1;
      while (o > 0 && prob[o] == 0.0) --o;
    }
    ++counts[o];
  }
  std::map<std::string, std::size_t> out;
  for (std::size_t o = 0; o < outcomes; ++o) {
    if (counts[o] == 0) continue;
    std::string key(measured.size(), '0');
    for (std::size_t i = 0; i < measured.size(); ++i) key[i] = ((o >> i) & 1u) ? '1' : '0';
    out[key] = counts[o];
  }
  return out;
}

}  // namespace carbm
