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

#include "carbm/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace carbm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using cplx = std::complex<double>;

bool bit(std::uint64_t k, std::size_t q) { return (k >> q) & 1u; }

void require_qubit(std::size_t q, std::size_t n, const char* what) {
  if (q >= n) {
    throw std::out_of_range(std::string(what) + ": qubit " + std::to_string(q) + " out of range for " +
                            std::to_string(n) + "-qubit register");
  }
}

void require_width(const PauliString& p, std::size_t n, const char* what) {
  if (p.num_qubits() != n) throw std::out_of_range(std::string(what) + ": Pauli width does not match register");
}

CMatrix embed_single(const Eigen::Matrix2cd& u, std::size_t q, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  CMatrix m = CMatrix::Zero(dim, dim);
  const std::uint64_t qb = std::uint64_t{1} << q;
  for (std::uint64_t k = 0; k < dim; ++k) {
    const std::uint64_t k0 = k & ~qb;
    m(k0, k) = u(0, bit(k, q));
    m(k0 | qb, k) = u(1, bit(k, q));
  }
  return m;
}

}  // namespace

void check_indices(const Gate& g, std::size_t n) {
  std::visit(Overloaded{
                 [&](const PauliRotation& r) { require_width(r.pauli, n, "PauliRotation"); },
                 [&](const ControlledPauli& c) {
                   require_width(c.pauli, n, "ControlledPauli");
                   require_qubit(c.control, n, "ControlledPauli");
                   if (bit(c.pauli.support(), c.control)) {
                     throw std::invalid_argument("ControlledPauli: control inside Pauli support");
                   }
                 },
                 [&](const Hadamard& h) { require_qubit(h.qubit, n, "Hadamard"); },
                 [&](const PhaseGate& s) { require_qubit(s.qubit, n, "PhaseGate"); },
                 [&](const CNot& c) {
                   require_qubit(c.control, n, "CNot");
                   require_qubit(c.target, n, "CNot");
                   if (c.control == c.target) throw std::invalid_argument("CNot: control equals target");
                 },
                 [&](const RbmBlock& b) {
                   require_qubit(b.target, n, "RbmBlock");
                   require_qubit(b.ancilla, n, "RbmBlock");
                   if (b.target == b.ancilla) throw std::invalid_argument("RbmBlock: target equals ancilla");
                 },
             },
             g);
}

TwoSparse two_sparse_form(const Gate& g, std::size_t n) {
  check_indices(g, n);
  const std::size_t dim = std::size_t{1} << n;
  TwoSparse t;
  t.alpha.assign(dim, cplx(0));
  t.beta.assign(dim, cplx(0));
  std::visit(Overloaded{
                 [&](const PauliRotation& r) {
                   const double c = std::cos(r.theta), s = std::sin(r.theta);
                   const std::uint64_t x = r.pauli.x_bits();
                   t.mask = x;
                   for (std::uint64_t k = 0; k < dim; ++k) {
                     if (x == 0) {
                       t.alpha[k] = c - cplx(0, s) * r.pauli.basis_phase(k);
                     } else {
                       t.alpha[k] = c;
                       t.beta[k] = -cplx(0, s) * r.pauli.basis_phase(k ^ x);
                     }
                   }
                 },
                 [&](const ControlledPauli& cp) {
                   const std::uint64_t x = cp.pauli.x_bits();
                   t.mask = x;
                   for (std::uint64_t k = 0; k < dim; ++k) {
                     if (!bit(k, cp.control)) {
                       t.alpha[k] = 1;
                     } else if (x == 0) {
                       t.alpha[k] = cp.pauli.basis_phase(k);
                     } else {
                       t.beta[k] = cp.pauli.basis_phase(k ^ x);
                     }
                   }
                 },
                 [&](const Hadamard& h) {
                   const double r = std::numbers::sqrt2 / 2;
                   t.mask = std::uint64_t{1} << h.qubit;
                   for (std::uint64_t k = 0; k < dim; ++k) {
                     t.alpha[k] = bit(k, h.qubit) ? -r : r;
                     t.beta[k] = r;
                   }
                 },
                 [&](const PhaseGate& s) {
                   for (std::uint64_t k = 0; k < dim; ++k) {
                     t.alpha[k] = bit(k, s.qubit) ? cplx(0, s.dagger ? -1 : 1) : cplx(1);
                   }
                 },
                 [&](const CNot& c) {
                   t.mask = std::uint64_t{1} << c.target;
                   for (std::uint64_t k = 0; k < dim; ++k) {
                     if (bit(k, c.control)) {
                       t.beta[k] = 1;
                     } else {
                       t.alpha[k] = 1;
                     }
                   }
                 },
                 [&](const RbmBlock& b) {
                   t.mask = std::uint64_t{1} << b.ancilla;
                   for (std::uint64_t k = 0; k < dim; ++k) {
                     const double phi = b.W * (bit(k, b.target) ? -1.0 : 1.0) + b.b;
                     t.alpha[k] = std::cos(phi);
                     t.beta[k] = cplx(0, -std::sin(phi));
                   }
                 },
             },
             g);
  return t;
}

Gate inverse(const Gate& g) {
  return std::visit(Overloaded{
                        [](const PauliRotation& r) -> Gate { return PauliRotation{r.pauli, -r.theta}; },
                        [](const ControlledPauli& c) -> Gate { return c; },
                        [](const Hadamard& h) -> Gate { return h; },
                        [](const PhaseGate& s) -> Gate { return PhaseGate{s.qubit, !s.dagger}; },
                        [](const CNot& c) -> Gate { return c; },
                        [](const RbmBlock& b) -> Gate { return RbmBlock{b.target, b.ancilla, -b.W, -b.b}; },
                    },
                    g);
}

std::vector<Gate> inverse(const std::vector<Gate>& circuit) {
  std::vector<Gate> out;
  out.reserve(circuit.size());
  for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

CMatrix gate_matrix(const Gate& g, std::size_t n) {
  check_indices(g, n);
  const std::size_t dim = std::size_t{1} << n;
  return std::visit(
      Overloaded{
          [&](const PauliRotation& r) -> CMatrix {
            return std::cos(r.theta) * CMatrix::Identity(dim, dim) - cplx(0, std::sin(r.theta)) * dense_matrix(r.pauli);
          },
          [&](const ControlledPauli& c) -> CMatrix {
            const CMatrix z = dense_matrix(PauliString::single(n, c.control, 'Z'));
            const CMatrix id = CMatrix::Identity(dim, dim);
            return 0.5 * (id + z) + 0.5 * (id - z) * dense_matrix(c.pauli);
          },
          [&](const Hadamard& h) -> CMatrix {
            Eigen::Matrix2cd u;
            u << 1, 1, 1, -1;
            return embed_single(u / std::sqrt(2.0), h.qubit, n);
          },
          [&](const PhaseGate& s) -> CMatrix {
            Eigen::Matrix2cd u;
            u << 1, 0, 0, cplx(0, s.dagger ? -1 : 1);
            return embed_single(u, s.qubit, n);
          },
          [&](const CNot& c) -> CMatrix {
            CMatrix m = CMatrix::Zero(dim, dim);
            for (std::uint64_t k = 0; k < dim; ++k) {
              m(bit(k, c.control) ? (k ^ (std::uint64_t{1} << c.target)) : k, k) = 1;
            }
            return m;
          },
          [&](const RbmBlock& b) -> CMatrix {
            std::string zx(n, 'I');
            zx[b.target] = 'Z';
            zx[b.ancilla] = 'X';
            PauliSentence gen(n);
            gen.add(zx, b.W);
            gen.add(PauliString::single(n, b.ancilla, 'X'), b.b);
            return hermitian_exp(dense_matrix(gen), cplx(0, -1));
          },
      },
      g);
}

CMatrix circuit_matrix(const std::vector<Gate>& circuit, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  CMatrix u = CMatrix::Identity(dim, dim);
  for (const auto& g : circuit) u = gate_matrix(g, n) * u;
  return u;
}

}  // namespace carbm
