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
#include <map>
#include <string>
#include <vector>

#include "carbm/circuit.hpp"
#include "carbm/correction.hpp"
#include "carbm/density_matrix.hpp"
#include "carbm/pauli.hpp"
#include "carbm/rbm.hpp"

namespace carbm {

enum class InitMode { kMixedDensity, kTfdPurified };

/// Initial infinite-temperature state on `n` system qubits. kTfdPurified adds
/// an n-qubit copy register holding Bell pairs (H then CX per pair).
DensityMatrix prepare_initial(std::size_t n, InitMode mode, bool with_probe = false);

/// ρ ← UρU†.
void apply_gate(DensityMatrix& state, const Gate& gate);
void apply_circuit(DensityMatrix& state, const std::vector<Gate>& circuit);
/// ρ ← UρU† for a dense unitary on the whole register.
void apply_unitary(DensityMatrix& state, const CMatrix& u);

/// Keeps the |0⟩ outcome of `qubit`; returns its probability and renormalizes.
double postselect_zero(DensityMatrix& state, std::size_t qubit);
/// Traces out `qubit` and re-prepares it in |0⟩.
void reset_qubit(DensityMatrix& state, std::size_t qubit);

/// Attaches or re-prepares the probe ancilla in |+⟩ (the layout must have a probe).
void prepare_probe_plus(DensityMatrix& state);

struct LayerOutcome {
  double probability = 1.0;
  /// log(2A) of the layer's encoding constants.
  double log_2a = 0.0;
};

/// Applies e^{−κσ}·e^{−κσ} through the RBM gadget on the layout's ancilla.
/// Uncorrected layers post-select the ancilla on |0⟩; corrected layers apply
/// controlled-O on ancilla |1⟩ and reset it, with probability 1. Throws
/// std::runtime_error if the ancilla is not in |0⟩ on entry.
LayerOutcome apply_rbm_layer(DensityMatrix& state, const ITELayer& layer);

struct RunResult {
  DensityMatrix state;
  double success_probability = 1.0;
  /// Σ_l log(2A_l).
  double log_norm = 0.0;
  std::size_t corrected_layers = 0;
  std::vector<double> layer_probabilities;
};

/// Applies every plan layer in order. The plan layers must match h's terms at
/// κ = βc/2 (checked to 1e−12).
RunResult run_ite(const DensityMatrix& state, const PauliSentence& h, double beta, const CorrectionPlan& plan);

/// Tr e^{−βh} recovered from a run started at I/2ⁿ:
/// 2ⁿ · p · ∏(2A_l)² / 2^{#corrected} · e^{−β c_I}.
double reconstruct_partition_function(const RunResult& run, std::size_t n_system, double beta,
                                      double identity_coefficient);

/// Tr(ρ·O) for an observable on the system register (widened to the full
/// register). Throws std::logic_error if the imaginary part exceeds 1e−10.
double expectation(const DensityMatrix& state, const PauliSentence& obs);
std::complex<double> expectation_complex(const DensityMatrix& state, const PauliString& p);

/// 2·⟨0|ρ_q|1⟩ of the reduced single-qubit state of `qubit`.
std::complex<double> ancilla_coherence(const DensityMatrix& state, std::size_t qubit);

/// Samples computational-basis outcomes of the system qubits after rotating
/// each into the basis named by the corresponding letter of `basis` (X, Y, Z,
/// or I for unmeasured). Keys are the measured bits, qubit 0 first.
std::map<std::string, std::size_t> sample_shots(const DensityMatrix& state, const PauliString& basis,
                                                std::size_t shots, std::uint64_t seed);

}  // namespace carbm
