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

#include "carbm/rbm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace carbm {

std::string to_string(Scheme s) { return s == Scheme::kStandard ? "standard" : "correctable"; }

Scheme scheme_from_string(const std::string& s) {
  if (s == "standard") return Scheme::kStandard;
  if (s == "correctable") return Scheme::kCorrectable;
  throw std::invalid_argument("unknown scheme \"" + s + "\" (expected standard or correctable)");
}

RbmParams params_standard(double kappa) {
  RbmParams p;
  p.scheme = Scheme::kStandard;
  p.kappa = kappa;
  p.s = kappa < 0 ? -1 : 1;
  const double a = std::abs(kappa);
  p.A = std::exp(a) / 2;
  p.W = 0.5 * std::acos(std::exp(-2 * a));
  p.b = p.s * p.W;
  return p;
}

RbmParams params_correctable(double kappa) {
  RbmParams p;
  p.scheme = Scheme::kCorrectable;
  p.kappa = kappa;
  p.s = kappa < 0 ? -1 : 1;
  p.A = std::sqrt(std::cosh(2 * kappa) / 2);
  p.W = std::atan(std::exp(2 * kappa)) - std::numbers::pi / 4;
  p.b = std::numbers::pi / 4;
  return p;
}

RbmParams make_params(Scheme scheme, double kappa) {
  return scheme == Scheme::kStandard ? params_standard(kappa) : params_correctable(kappa);
}

void validate(const ITELayer& layer) {
  if (layer.sigma.is_identity()) throw std::invalid_argument("ITELayer: sigma is the identity");
  if (layer.params.kappa != layer.kappa) throw std::invalid_argument("ITELayer: params built for a different kappa");
  if (layer.correction) {
    if (layer.params.scheme != Scheme::kCorrectable) {
      throw std::invalid_argument("ITELayer: corrected layer must use the correctable scheme");
    }
    if (commutes(*layer.correction, layer.sigma)) {
      throw std::invalid_argument("ITELayer: correction " + layer.correction->to_text() + " commutes with " +
                                  layer.sigma.to_text());
    }
  }
}

ZReduction reduce_to_z(const PauliString& sigma) {
  if (sigma.is_identity()) throw std::invalid_argument("reduce_to_z: identity string has no target");
  ZReduction r;
  const std::uint64_t support = sigma.support();
  r.target = static_cast<std::size_t>(std::countr_zero(support));
  for (std::size_t q = 0; q < sigma.num_qubits(); ++q) {
    const char c = sigma.letter(q);
    if (c == 'Y') r.pre.push_back(PhaseGate{q, true});
    if (c == 'X' || c == 'Y') r.pre.push_back(Hadamard{q});
  }
  for (std::size_t q = r.target + 1; q < sigma.num_qubits(); ++q) {
    if ((support >> q) & 1u) r.pre.push_back(CNot{q, r.target});
  }
  return r;
}

CMatrix block_unitary(const RbmParams& params, std::size_t target, std::size_t ancilla, std::size_t num_qubits) {
  if (target == ancilla) throw std::invalid_argument("block_unitary: target and ancilla coincide");
  return gate_matrix(RbmBlock{target, ancilla, params.W, params.b}, num_qubits);
}

std::vector<Gate> encode_layer(const RbmParams& params, const PauliString& sigma, std::size_t ancilla,
                               std::size_t num_qubits) {
  const PauliString wide = sigma.widened(num_qubits);
  if ((wide.support() >> ancilla) & 1u) throw std::invalid_argument("encode_layer: sigma acts on the ancilla");
  ZReduction red = reduce_to_z(wide);
  std::vector<Gate> out = red.pre;
  out.push_back(RbmBlock{red.target, ancilla, params.W, params.b});
  for (auto& g : inverse(red.pre)) out.push_back(g);
  return out;
}

namespace {

double sigma_expectation(const DensityMatrix& state, const PauliString& sigma) {
  const PauliString p = sigma.widened(state.num_qubits());
  std::complex<double> acc = 0;
  for (std::uint64_t k = 0; k < state.dim(); ++k) acc += p.basis_phase(k ^ p.x_bits()) * state(k ^ p.x_bits(), k);
  return acc.real();
}

void require_normalized(const DensityMatrix& state) {
  if (std::abs(state.trace() - 1.0) > 1e-10) {
    throw std::invalid_argument("success_probability: state trace " + std::to_string(state.trace()) + " != 1");
  }
}

}  // namespace

double success_probability(const RbmParams& params, const DensityMatrix& state, const PauliString& sigma) {
  require_normalized(state);
  const double ev = sigma_expectation(state, sigma);
  if (params.scheme == Scheme::kStandard) {
    const double alpha = 0.5 * (1.0 + params.s * ev);
    return 1.0 - (1.0 - std::exp(-4 * std::abs(params.kappa))) * alpha;
  }
  // 1 − 1/(1+e^{4κ}) − tanh(2κ)·α with α = (1 + ⟨σ⟩)/2, using
  // 1 − 1/(1+e^{4κ}) = (1 + tanh 2κ)/2.
  return 0.5 - 0.5 * std::tanh(2 * params.kappa) * ev;
}

double success_probability_trace(const RbmParams& params, const DensityMatrix& state, const PauliString& sigma) {
  require_normalized(state);
  const std::size_t m = state.num_qubits();
  const std::size_t dim = state.dim();
  PauliSentence gen(m);
  gen.add(sigma.widened(m), params.W);
  gen.add(PauliString(m), params.b);
  const CMatrix x = dense_matrix(gen);
  // cos²(X) = (1 + cos 2X)/2 = (2 + e^{2iX} + e^{−2iX})/4.
  const CMatrix c2 = 0.25 * (2.0 * CMatrix::Identity(dim, dim) + hermitian_exp(x, {0, 2}) + hermitian_exp(x, {0, -2}));
  return (c2 * state.to_matrix()).trace().real();
}

}  // namespace carbm
