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

#include "carbm/correction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "carbm/gf2.hpp"

namespace carbm {

std::optional<PauliString> find_correction(const std::vector<PauliString>& previous, const PauliString& target,
                                           const CorrectionFilter& filter) {
  const std::size_t n = target.num_qubits();
  std::vector<Gf2Vector> rows;
  Gf2Vector rhs(previous.size() + 1);
  for (const auto& p : previous) {
    if (p.num_qubits() != n) throw std::invalid_argument("find_correction: Pauli length mismatch");
    rows.push_back(commutation_row(p));
  }
  rows.push_back(commutation_row(target));
  rhs.set(previous.size(), true);
  if (!gf2_solve(rows, rhs, 2 * n)) return std::nullopt;

  auto admissible = [&](const PauliString& o) {
    if (commutes(o, target)) return false;
    for (const auto& p : previous) {
      if (!commutes(o, p)) return false;
    }
    return !filter || filter(o);
  };

  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::size_t w = 1; w <= n; ++w) {
    std::optional<PauliString> best;
    for (std::uint64_t support = 1; support < limit; ++support) {
      if (static_cast<std::size_t>(std::popcount(support)) != w) continue;
      std::vector<std::size_t> sites;
      for (std::size_t q = 0; q < n; ++q) {
        if ((support >> q) & 1u) sites.push_back(q);
      }
      // Letters per site: 0 = X, 1 = Y, 2 = Z.
      std::vector<int> letter(w, 0);
      while (true) {
        std::uint64_t x = 0, z = 0;
        for (std::size_t i = 0; i < w; ++i) {
          const std::uint64_t b = std::uint64_t{1} << sites[i];
          if (letter[i] <= 1) x |= b;
          if (letter[i] >= 1) z |= b;
        }
        const PauliString o(n, x, z);
        if (admissible(o) && (!best || canonical_less(o, *best))) best = o;
        std::size_t i = 0;
        while (i < w && ++letter[i] == 3) letter[i++] = 0;
        if (i == w) break;
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

nlohmann::json CorrectionPlan::to_json() const {
  nlohmann::json j;
  nlohmann::json ls = nlohmann::json::array();
  for (const auto& l : layers) {
    nlohmann::json e{{"sigma", l.sigma.to_text()}, {"kappa", l.kappa}, {"scheme", to_string(l.params.scheme)}};
    e["correction"] = l.correction ? nlohmann::json(l.correction->to_text()) : nlohmann::json(nullptr);
    ls.push_back(e);
  }
  j["layers"] = ls;
  j["corrected_indices"] = corrected_indices;
  return j;
}

CorrectionPlan plan_corrections(std::vector<ITELayer> layers, std::size_t max_corrections,
                                InitialStateKind initial_state_kind, const CorrectionFilter& stabilizes_initial) {
  for (std::size_t i = 0; i < layers.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!commutes(layers[i].sigma, layers[j].sigma)) {
        throw std::invalid_argument("plan_corrections: layers " + layers[j].sigma.to_text() + " and " +
                                    layers[i].sigma.to_text() + " do not commute");
      }
    }
  }
  std::stable_sort(layers.begin(), layers.end(),
                   [](const ITELayer& a, const ITELayer& b) { return std::abs(a.kappa) > std::abs(b.kappa); });

  CorrectionPlan plan;
  const std::size_t n = layers.empty() ? 0 : layers.front().sigma.num_qubits();
  const std::size_t budget = std::min(max_corrections, n);
  const bool allowed = initial_state_kind == InitialStateKind::kMaximallyMixed || bool(stabilizes_initial);
  const CorrectionFilter filter =
      initial_state_kind == InitialStateKind::kGeneral ? stabilizes_initial : CorrectionFilter{};

  std::vector<PauliString> previous;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    ITELayer& layer = layers[i];
    layer.correction.reset();
    if (allowed && plan.corrected_indices.size() < budget) {
      if (auto o = find_correction(previous, layer.sigma, filter)) {
        layer.correction = *o;
        layer.params = params_correctable(layer.kappa);
        plan.corrected_indices.push_back(i);
        plan.operators.emplace(i, *o);
      }
    }
    previous.push_back(layer.sigma);
  }
  plan.layers = std::move(layers);
  return plan;
}

std::vector<ITELayer> layers_from_h(const PauliSentence& h, double beta, Scheme scheme) {
  std::vector<ITELayer> out;
  for (const auto& [p, c] : h.terms()) {
    if (p.is_identity()) continue;
    const double kappa = beta * c / 2;
    out.push_back({p, kappa, make_params(scheme, kappa), std::nullopt});
  }
  return out;
}

}  // namespace carbm
