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

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "carbm/pauli.hpp"
#include "carbm/rbm.hpp"

namespace carbm {

/// Extra admissibility test for a candidate correction operator.
using CorrectionFilter = std::function<bool(const PauliString&)>;

/// Minimum-weight O (canonical tie-break) that anticommutes with `target` and
/// commutes with every string in `previous`, or nullopt when none exists
/// (i.e. `target` is a product of previous strings). When `filter` is given,
/// only operators passing it are returned.
std::optional<PauliString> find_correction(const std::vector<PauliString>& previous, const PauliString& target,
                                           const CorrectionFilter& filter = {});

enum class InitialStateKind { kMaximallyMixed, kGeneral };

struct CorrectionPlan {
  /// Layers in application order.
  std::vector<ITELayer> layers;
  std::vector<std::size_t> corrected_indices;
  std::map<std::size_t, PauliString> operators;

  nlohmann::json to_json() const;
};

/// Sorts layers by |κ| (descending, stable) and corrects, greedily in
/// application order, each layer whose σ is independent of all earlier σ's,
/// up to min(max_corrections, n) layers. Corrected layers switch to the
/// correctable scheme. For InitialStateKind::kGeneral a correction is only
/// accepted if `stabilizes_initial` returns true for it. Throws
/// std::invalid_argument if the layer strings do not mutually commute.
CorrectionPlan plan_corrections(std::vector<ITELayer> layers, std::size_t max_corrections,
                                InitialStateKind initial_state_kind,
                                const CorrectionFilter& stabilizes_initial = {});

/// Uncorrected layers e^{−κ_l σ_l} with κ_l = β c_l / 2 for every non-identity
/// term c_l σ_l of h, in the order of `h`'s terms.
std::vector<ITELayer> layers_from_h(const PauliSentence& h, double beta, Scheme scheme);

}  // namespace carbm
