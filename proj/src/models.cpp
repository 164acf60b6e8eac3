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

#include "carbm/models.hpp"

#include <stdexcept>
#include <string>

namespace carbm {

namespace {

PauliString two_site(std::size_t n, std::size_t i, char a, std::size_t j, char b) {
  std::string s(n, 'I');
  s[i] = a;
  s[j] = b;
  return PauliString::from_text(s);
}

}  // namespace

void validate(const XXZSpec& spec) {
  if (spec.L < 2) throw std::invalid_argument("XXZ: L must be at least 2");
  if (spec.L > 12) throw std::invalid_argument("XXZ: L above 12 is beyond the dense simulator");
}

void validate(const GrossNeveuSpec& spec) {
  if (spec.N < 1) throw std::invalid_argument("Gross-Neveu: N must be at least 1");
  if (spec.L < 1) throw std::invalid_argument("Gross-Neveu: L must be at least 1");
  if (spec.N * spec.L > 12) throw std::invalid_argument("Gross-Neveu: N·L above 12 is beyond the dense simulator");
}

PauliSentence build_xxz(const XXZSpec& spec) {
  validate(spec);
  PauliSentence h(spec.L);
  for (std::size_t i = 0; i + 1 < spec.L; ++i) {
    h.add(two_site(spec.L, i, 'X', i + 1, 'X'), -spec.J);
    h.add(two_site(spec.L, i, 'Y', i + 1, 'Y'), -spec.J);
    h.add(two_site(spec.L, i, 'Z', i + 1, 'Z'), -spec.Jz);
  }
  h += build_probe(spec.L, spec.g_r);
  return h;
}

PauliSentence build_probe(std::size_t L, double g_r) { return build_uniform_field(L) * g_r; }

PauliSentence build_uniform_field(std::size_t L) {
  PauliSentence h(L);
  for (std::size_t i = 0; i < L; ++i) h.add(PauliString::single(L, i, 'Z'), 1.0);
  return h;
}

PauliSentence build_gross_neveu(const GrossNeveuSpec& spec) {
  validate(spec);
  const std::size_t n = spec.N * spec.L;
  const PauliString id(n);
  PauliSentence h(n);
  auto q = [&](std::size_t a, std::size_t site) { return a * spec.L + (site - 1); };
  for (std::size_t a = 0; a < spec.N; ++a) {
    for (std::size_t s = 1; s < spec.L; ++s) {
      const double stagger = (s % 2 == 0) ? 1.0 : -1.0;
      const PauliString xy = two_site(n, q(a, s), 'X', q(a, s + 1), 'Y');
      const PauliString yx = two_site(n, q(a, s), 'Y', q(a, s + 1), 'X');
      h.add(xy, -1.0 + 0.5 * spec.mu * stagger);
      h.add(yx, 1.0 - 0.5 * spec.mu * stagger);
    }
    for (std::size_t s = 1; s <= spec.L; ++s) {
      const double stagger = (s % 2 == 0) ? 1.0 : -1.0;
      h.add(id, spec.m * stagger);
      h.add(PauliString::single(n, q(a, s), 'Z'), -spec.m * stagger);
    }
  }
  const double g2 = -0.5 * spec.G * spec.G;
  for (std::size_t s = 1; s <= spec.L; ++s) {
    for (std::size_t a = 0; a < spec.N; ++a) {
      for (std::size_t b = a + 1; b < spec.N; ++b) {
        h.add(id, g2);
        h.add(PauliString::single(n, q(a, s), 'Z'), -g2);
        h.add(PauliString::single(n, q(b, s), 'Z'), -g2);
        h.add(two_site(n, q(a, s), 'Z', q(b, s), 'Z'), g2);
      }
    }
  }
  return h;
}

PauliSentence build_condensate_observable(const GrossNeveuSpec& spec) {
  validate(spec);
  const std::size_t n = spec.N * spec.L;
  PauliSentence o(n);
  o.add(PauliString(n), 1.0);
  for (std::size_t i = 1; i < spec.L; ++i) o.add(two_site(n, 0, 'Z', i, 'Z'), 1.0);
  return o;
}

}  // namespace carbm
