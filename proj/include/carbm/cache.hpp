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

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "carbm/cartan.hpp"

namespace carbm {

/// Hex FNV-1a digest of H (coefficients rounded to 1e−12) and the CSA basis.
std::string decomposition_key(const PauliSentence& h, const CartanSubalgebra& csa);

nlohmann::json decomposition_to_json(const KHKDecomposition& d);
/// Throws std::runtime_error on malformed input.
KHKDecomposition decomposition_from_json(const nlohmann::json& j);

/// One JSON file per key in a directory. Writes go through a temporary file
/// and an atomic rename, so concurrent readers never see partial files and the
/// last writer wins.
class DecompositionCache {
 public:
  explicit DecompositionCache(std::filesystem::path dir);

  /// Cache directory from CARBM_CACHE_DIR, else `fallback`.
  static std::filesystem::path resolve_dir(const std::filesystem::path& fallback);

  std::filesystem::path path_for(const std::string& key) const;

  /// Returns the entry if present, well-formed, and its residual re-verifies
  /// against `h` (recomputed residual ≤ tol and matching the stored value).
  /// Corrupt or stale entries produce a warning on stderr and nullopt.
  std::optional<KHKDecomposition> load(const std::string& key, const PauliSentence& h, double tol) const;
  void store(const KHKDecomposition& d) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace carbm
