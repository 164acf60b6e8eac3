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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "carbm/experiments.hpp"
#include "carbm/rbm.hpp"

namespace carbm::cli {

/// Invalid configuration; `key()` names the offending entry ("" if none).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

enum class Command { kDecompose, kThermalState, kLeeYang, kFisher, kGnScan, kValidate };

std::string to_string(Command c);
Command command_from_string(const std::string& s);

enum class ModelKind { kXXZ, kGrossNeveu };

struct ModelConfig {
  ModelKind kind = ModelKind::kXXZ;
  XXZSpec xxz;
  GrossNeveuSpec gn;
  /// Explicit Hamiltonian terms; when non-empty they replace the model.
  std::vector<std::pair<std::string, double>> h_terms;
};

struct RunConfig {
  Command command = Command::kValidate;
  ModelConfig model;
  /// Two axes; empty means the command's default grid.
  std::vector<Axis> grid;
  double beta = 1.0;
  /// 0 = correction off.
  std::size_t max_corrections = 0;
  Scheme scheme = Scheme::kStandard;
  std::uint64_t seed = 7;
  std::size_t threads = 1;
  double tolerance = 1e-10;
  double zero_threshold = 0.1;
  bool compare_oracle = true;
  std::filesystem::path out = "out";
  std::filesystem::path cache_dir;

  /// Canonical JSON of every field (the merged configuration).
  nlohmann::json to_json() const;
};

/// Built-in defaults as JSON (the bottom layer of the merge).
nlohmann::json default_config();

/// Merges defaults < `file` < `flags` and validates the result. Both layers
/// are JSON objects with the keys documented in docs/config.md.
RunConfig parse_config(const nlohmann::json& file, const nlohmann::json& flags);

/// Reads `path` (empty file or "{}" allowed) and merges it with `flags`.
RunConfig parse_config_file(const std::filesystem::path& path, const nlohmann::json& flags);

/// "a1:lo:hi:steps,a2:lo:hi:steps".
std::vector<Axis> parse_grid(const std::string& text);

/// Hex digest of the result-affecting fields (threads, out and cache_dir excluded).
std::string config_hash(const RunConfig& config);

/// Per-component seed derived from the master seed (splitmix64 of seed ⊕ tag hash).
std::uint64_t component_seed(std::uint64_t master, const std::string& component);

struct DispatchResult {
  int exit_code = 0;
  std::string summary;
  std::vector<std::filesystem::path> outputs;
  nlohmann::json report;
};

/// Runs the configured command and writes its outputs under `config.out`.
DispatchResult dispatch(const RunConfig& config);

}  // namespace carbm::cli
