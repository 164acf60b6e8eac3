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
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "carbm/cartan.hpp"
#include "carbm/models.hpp"
#include "carbm/pauli.hpp"
#include "carbm/rbm.hpp"
#include "carbm/simulator.hpp"

namespace carbm {

/// Evenly spaced axis: `steps` points from lo to hi inclusive (one point → lo).
struct Axis {
  std::string label;
  double lo = 0.0;
  double hi = 1.0;
  std::size_t steps = 2;

  double at(std::size_t i) const;
  double spacing() const;
};

/// Row-major grid: index = i1 · axis2.steps + i2.
struct ScanGrid {
  Axis axis1;
  Axis axis2;
  std::vector<std::complex<double>> values;
  std::vector<double> success;

  ScanGrid() = default;
  ScanGrid(Axis a1, Axis a2);
  std::size_t index(std::size_t i1, std::size_t i2) const { return i1 * axis2.steps + i2; }
  std::size_t size() const { return axis1.steps * axis2.steps; }
  void check() const;
};

/// Tr exp(−βH0 − iβ g_i H_I), dense. Throws std::invalid_argument beyond 12 qubits.
std::complex<double> ed_partition_oracle(const PauliSentence& h0, const PauliSentence& h_i, double beta, double g_i);

/// Tr(ρ_Gibbs · O) with ρ_Gibbs = e^{−βH}/Tr e^{−βH}, dense.
double ed_thermal_expectation(const PauliSentence& h, const PauliSentence& obs, double beta);

/// Correction settings shared by the drivers.
struct CorrectionSettings {
  Scheme scheme = Scheme::kStandard;
  /// 0 disables correction.
  std::size_t max_corrections = 0;
};

/// ρ ← K ρ K† for the decomposition's K.
void apply_k(DensityMatrix& state, const KHKDecomposition& dec);

/// Thermal state of H = K h K†: imaginary-time layers of h applied to the
/// infinite-temperature state, followed by K. Success probability and
/// normalization are those of the h layers.
RunResult prepare_thermal_state(const KHKDecomposition& dec, double beta, const CorrectionSettings& cs,
                                InitMode mode = InitMode::kMixedDensity);

struct ScanDiagnostics {
  std::vector<double> residuals;
  std::vector<std::string> cache_keys;
  std::vector<bool> cache_hits;
  /// ED comparison, filled when requested: max |circuit − oracle| over the grid.
  double max_oracle_error = -1.0;
  /// Fisher only: max |K-free − full-K| coherence over the grid.
  double max_cyclicity_error = -1.0;
};

struct LeeYangOptions {
  XXZSpec model;  // g_r is taken from the grid
  double beta = 1.0;
  Axis g_r{"g_r", -1.0, 1.0, 41};
  Axis g_i{"g_i", 0.0, 3.141592653589793, 41};
  CorrectionSettings correction;
  DecomposeOptions decompose;
  std::size_t threads = 1;
  bool compare_oracle = true;
};

/// Coherence grid (axis1 = g_r, axis2 = g_i) of Z(β, g)/Z0(β, g_r).
ScanGrid lee_yang_scan(const LeeYangOptions& options, ScanDiagnostics* diag = nullptr);

struct FisherOptions {
  XXZSpec model;
  Axis beta_r{"beta_r", 0.05, 2.0, 40};
  Axis beta_i{"beta_i", 0.0, 3.141592653589793, 41};
  CorrectionSettings correction;
  DecomposeOptions decompose;
  std::size_t threads = 1;
  bool compare_oracle = true;
  /// Also run the full-K circuit and record the largest discrepancy.
  bool compare_full_k = false;
};

/// Coherence grid (axis1 = β_r, axis2 = β_i) of Tr e^{−(β_r + iβ_i)H0}/Tr e^{−β_r H0}.
ScanGrid fisher_scan(const FisherOptions& options, ScanDiagnostics* diag = nullptr);

struct GrossNeveuScanOptions {
  GrossNeveuSpec model;  // mu is taken from the grid
  Axis beta{"beta", 0.2, 2.0, 10};
  Axis mu{"mu", 0.0, 2.0, 11};
  CorrectionSettings correction;
  DecomposeOptions decompose;
  std::size_t threads = 1;
  bool compare_oracle = true;
};

struct GrossNeveuScan {
  /// Σ_i⟨Z_i Z_0⟩ (real part populated), axis1 = β, axis2 = μ.
  ScanGrid observable;
  /// Success probability in both value and success slots.
  ScanGrid success;
};

GrossNeveuScan gn_phase_scan(const GrossNeveuScanOptions& options, ScanDiagnostics* diag = nullptr);

struct GridPoint {
  std::size_t i1 = 0;
  std::size_t i2 = 0;
  double a1 = 0.0;
  double a2 = 0.0;
  double abs_value = 0.0;
};

/// Points whose |value| is below `threshold` and strictly smaller than every
/// existing 8-neighbor (edge points compare against the neighbors they have).
std::vector<GridPoint> locate_zeros(const ScanGrid& grid, double threshold);

/// CSV with columns axis1, axis2, re_value, im_value, abs_value, log_abs,
/// success_prob, preceded by a "# config_hash=…" line.
void write_csv(const ScanGrid& grid, const std::filesystem::path& path, const std::string& config_hash);
std::string grid_csv(const ScanGrid& grid, const std::string& config_hash);

}  // namespace carbm
