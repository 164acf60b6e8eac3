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

#include "carbm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "carbm/correction.hpp"
#include "carbm/dense.hpp"
#include "carbm/simulator.hpp"

namespace carbm {

using cplx = std::complex<double>;

double Axis::at(std::size_t i) const {
  if (steps <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

double Axis::spacing() const { return steps <= 1 ? 0.0 : (hi - lo) / static_cast<double>(steps - 1); }

ScanGrid::ScanGrid(Axis a1, Axis a2) : axis1(std::move(a1)), axis2(std::move(a2)) {
  values.assign(size(), cplx(0));
  success.assign(size(), 0.0);
}

void ScanGrid::check() const {
  if (values.size() != size() || success.size() != size()) throw std::logic_error("ScanGrid: inconsistent sizes");
  for (double s : success) {
    if (!(s >= 0.0 && s <= 1.0 + 1e-12)) throw std::logic_error("ScanGrid: success probability outside [0,1]");
  }
}

namespace {

// Runs body(i) for i in [0, count) on up to `threads` workers. Rethrows the
// exception of the lowest failing index.
template <class F>
void parallel_for(std::size_t count, std::size_t threads, F&& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  std::vector<std::exception_ptr> errors(count);
  auto run = [&](std::atomic<std::size_t>& next) {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::atomic<std::size_t> next{0};
  if (threads == 1) {
    run(next);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back([&] { run(next); });
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void require_dense_size(std::size_t n) {
  if (n > 12) throw std::invalid_argument("dense oracle limited to 12 qubits, got " + std::to_string(n));
}

PauliString with_probe_z(const PauliString& sys, std::size_t m, std::size_t probe) {
  return PauliString(m, sys.x_bits(), sys.z_bits() | (std::uint64_t{1} << probe));
}

// Prepared ρ_h on the register (system + rbm ancilla + probe in |0⟩).
RunResult thermal_state_of_h(const KHKDecomposition& dec, double beta, const CorrectionSettings& cs) {
  const std::size_t n = dec.num_qubits;
  CorrectionPlan plan = plan_corrections(layers_from_h(dec.h, beta, cs.scheme), cs.max_corrections,
                                         InitialStateKind::kMaximallyMixed);
  DensityMatrix rho = prepare_initial(n, InitMode::kMixedDensity, true);
  return run_ite(rho, dec.h, beta, plan);
}

void record(ScanDiagnostics* diag, std::mutex& mu, std::size_t row, const KHKDecomposition& dec) {
  if (diag == nullptr) return;
  std::lock_guard<std::mutex> lock(mu);
  diag->residuals[row] = dec.residual;
  diag->cache_keys[row] = dec.cache_key;
  diag->cache_hits[row] = dec.cache_hit;
}

void init_diag(ScanDiagnostics* diag, std::size_t rows) {
  if (diag == nullptr) return;
  diag->residuals.assign(rows, 0.0);
  diag->cache_keys.assign(rows, "");
  diag->cache_hits.assign(rows, false);
}

}  // namespace

void apply_k(DensityMatrix& state, const KHKDecomposition& dec) {
  const std::size_t m = state.num_qubits();
  // The last factor of K acts first.
  for (auto it = dec.factors.rbegin(); it != dec.factors.rend(); ++it) {
    apply_gate(state, PauliRotation{it->k.widened(m), -it->theta});
  }
}

RunResult prepare_thermal_state(const KHKDecomposition& dec, double beta, const CorrectionSettings& cs,
                                InitMode mode) {
  CorrectionPlan plan = plan_corrections(layers_from_h(dec.h, beta, cs.scheme), cs.max_corrections,
                                         InitialStateKind::kMaximallyMixed);
  RunResult r = run_ite(prepare_initial(dec.num_qubits, mode), dec.h, beta, plan);
  apply_k(r.state, dec);
  return r;
}

cplx ed_partition_oracle(const PauliSentence& h0, const PauliSentence& h_i, double beta, double g_i) {
  require_dense_size(h0.num_qubits());
  if (h0.num_qubits() != h_i.num_qubits()) throw std::invalid_argument("ed_partition_oracle: qubit count mismatch");
  const CMatrix gen = -beta * dense_matrix(h0) - cplx(0, beta * g_i) * dense_matrix(h_i);
  return general_exp(gen).trace();
}

double ed_thermal_expectation(const PauliSentence& h, const PauliSentence& obs, double beta) {
  require_dense_size(h.num_qubits());
  const CMatrix hm = dense_matrix(h);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hm);
  const Eigen::VectorXd& w = es.eigenvalues();
  const double shift = w.minCoeff();
  CVector d(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) d(i) = std::exp(-beta * (w(i) - shift));
  const CMatrix rho = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
  return ((rho * dense_matrix(obs)).trace() / rho.trace()).real();
}

ScanGrid lee_yang_scan(const LeeYangOptions& opt, ScanDiagnostics* diag) {
  validate(opt.model);
  if (!(opt.beta >= 0)) throw std::invalid_argument("lee_yang_scan: beta must be non-negative");
  ScanGrid grid(opt.g_r, opt.g_i);
  const std::size_t L = opt.model.L;
  const PauliSentence h_int = build_uniform_field(L);
  init_diag(diag, opt.g_r.steps);
  std::mutex mu;
  std::vector<double> row_err(opt.g_r.steps, 0.0);

  parallel_for(opt.g_r.steps, opt.threads, [&](std::size_t r) {
    XXZSpec spec = opt.model;
    spec.g_r = opt.g_r.at(r);
    const PauliSentence h0 = build_xxz(spec);
    if (commutator_norm(build_xxz({spec.L, spec.J, spec.Jz, 0.0}), h_int) > 1e-12) {
      throw std::invalid_argument("lee_yang_scan: system Hamiltonian does not commute with the probe coupling");
    }
    DecomposeOptions dopt = opt.decompose;
    dopt.csa_hint = z_products_except_full(L);
    const KHKDecomposition dec = decompose(h0, dopt);
    record(diag, mu, r, dec);

    RunResult run = thermal_state_of_h(dec, opt.beta, opt.correction);
    apply_k(run.state, dec);
    const std::size_t m = run.state.num_qubits();
    const std::size_t probe = run.state.layout().probe_qubit();
    const cplx z0 = opt.compare_oracle ? ed_partition_oracle(h0, h_int, opt.beta, 0.0) : cplx(1);
    for (std::size_t c = 0; c < opt.g_i.steps; ++c) {
      const double gi = opt.g_i.at(c);
      DensityMatrix st = run.state;
      prepare_probe_plus(st);
      for (std::size_t q = 0; q < L; ++q) {
        apply_gate(st, PauliRotation{with_probe_z(PauliString::single(L, q, 'Z'), m, probe), opt.beta * gi / 2});
      }
      const cplx coh = ancilla_coherence(st, probe);
      grid.values[grid.index(r, c)] = coh;
      grid.success[grid.index(r, c)] = run.success_probability;
      if (opt.compare_oracle) {
        const cplx ref = ed_partition_oracle(h0, h_int, opt.beta, gi) / z0;
        row_err[r] = std::max(row_err[r], std::abs(coh - ref));
      }
    }
  });
  if (diag != nullptr && opt.compare_oracle) diag->max_oracle_error = *std::max_element(row_err.begin(), row_err.end());
  grid.check();
  return grid;
}

ScanGrid fisher_scan(const FisherOptions& opt, ScanDiagnostics* diag) {
  validate(opt.model);
  ScanGrid grid(opt.beta_r, opt.beta_i);
  const std::size_t L = opt.model.L;
  const PauliSentence h0 = build_xxz(opt.model);
  DecomposeOptions dopt = opt.decompose;
  if (!dopt.csa_hint) dopt.csa_hint = z_products_except_full(L);
  const KHKDecomposition dec = decompose(h0, dopt);
  init_diag(diag, 1);
  std::mutex mu;
  record(diag, mu, 0, dec);

  std::vector<double> row_err(opt.beta_r.steps, 0.0);
  std::vector<double> row_cyc(opt.beta_r.steps, 0.0);

  parallel_for(opt.beta_r.steps, opt.threads, [&](std::size_t r) {
    const double br = opt.beta_r.at(r);
    if (!(br > 0)) throw std::invalid_argument("fisher_scan: beta_r must be positive");
    const RunResult run = thermal_state_of_h(dec, br, opt.correction);
    const std::size_t m = run.state.num_qubits();
    const std::size_t probe = run.state.layout().probe_qubit();
    DensityMatrix with_k;
    CMatrix h0_probe;
    if (opt.compare_full_k) {
      with_k = run.state;
      apply_k(with_k, dec);
      PauliSentence coupling(m);
      for (const auto& [p, c] : h0.terms()) coupling.add(with_probe_z(p.widened(m), m, probe), 0.5 * c);
      h0_probe = dense_matrix(coupling);
    }
    const cplx z0 = opt.compare_oracle ? ed_partition_oracle(h0, h0, br, 0.0) : cplx(1);
    for (std::size_t c = 0; c < opt.beta_i.steps; ++c) {
      const double bi = opt.beta_i.at(c);
      DensityMatrix st = run.state;
      prepare_probe_plus(st);
      for (const auto& [p, coeff] : dec.h.terms()) {
        apply_gate(st, PauliRotation{with_probe_z(p.widened(m), m, probe), bi * coeff / 2});
      }
      const cplx coh = ancilla_coherence(st, probe);
      grid.values[grid.index(r, c)] = coh;
      grid.success[grid.index(r, c)] = run.success_probability;
      if (opt.compare_oracle) {
        const cplx ref = ed_partition_oracle(h0, h0, br, bi / br) / z0;
        row_err[r] = std::max(row_err[r], std::abs(coh - ref));
      }
      if (opt.compare_full_k) {
        DensityMatrix sk = with_k;
        prepare_probe_plus(sk);
        apply_unitary(sk, hermitian_exp(h0_probe, cplx(0, -bi)));
        row_cyc[r] = std::max(row_cyc[r], std::abs(ancilla_coherence(sk, probe) - coh));
      }
    }
  });
  if (diag != nullptr) {
    if (opt.compare_oracle) diag->max_oracle_error = *std::max_element(row_err.begin(), row_err.end());
    if (opt.compare_full_k) diag->max_cyclicity_error = *std::max_element(row_cyc.begin(), row_cyc.end());
  }
  grid.check();
  return grid;
}

GrossNeveuScan gn_phase_scan(const GrossNeveuScanOptions& opt, ScanDiagnostics* diag) {
  validate(opt.model);
  GrossNeveuScan out{ScanGrid(opt.beta, opt.mu), ScanGrid(opt.beta, opt.mu)};
  const PauliSentence obs = build_condensate_observable(opt.model);
  init_diag(diag, opt.mu.steps);
  std::mutex mu;
  std::vector<double> col_err(opt.mu.steps, 0.0);

  parallel_for(opt.mu.steps, opt.threads, [&](std::size_t c) {
    GrossNeveuSpec spec = opt.model;
    spec.mu = opt.mu.at(c);
    const PauliSentence h = build_gross_neveu(spec);
    const KHKDecomposition dec = decompose(h, opt.decompose);
    record(diag, mu, c, dec);
    for (std::size_t r = 0; r < opt.beta.steps; ++r) {
      const double beta = opt.beta.at(r);
      if (beta < 0) throw std::invalid_argument("gn_phase_scan: beta must be non-negative");
      RunResult run = thermal_state_of_h(dec, beta, opt.correction);
      apply_k(run.state, dec);
      const double value = expectation(run.state, obs);
      const std::size_t idx = out.observable.index(r, c);
      out.observable.values[idx] = value;
      out.observable.success[idx] = run.success_probability;
      out.success.values[idx] = run.success_probability;
      out.success.success[idx] = run.success_probability;
      if (opt.compare_oracle) {
        col_err[c] = std::max(col_err[c], std::abs(value - ed_thermal_expectation(h, obs, beta)));
      }
    }
  });
  if (diag != nullptr && opt.compare_oracle) diag->max_oracle_error = *std::max_element(col_err.begin(), col_err.end());
  out.observable.check();
  out.success.check();
  return out;
}

std::vector<GridPoint> locate_zeros(const ScanGrid& grid, double threshold) {
  std::vector<GridPoint> out;
  const std::size_t n1 = grid.axis1.steps;
  const std::size_t n2 = grid.axis2.steps;
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const double v = std::abs(grid.values[grid.index(i, j)]);
      if (!(v < threshold)) continue;
      bool strict_min = true;
      for (int di = -1; di <= 1 && strict_min; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const long ii = static_cast<long>(i) + di;
          const long jj = static_cast<long>(j) + dj;
          if (ii < 0 || jj < 0 || ii >= static_cast<long>(n1) || jj >= static_cast<long>(n2)) continue;
          if (!(v < std::abs(grid.values[grid.index(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj))]))) {
            strict_min = false;
            break;
          }
        }
      }
      if (strict_min) out.push_back({i, j, grid.axis1.at(i), grid.axis2.at(j), v});
    }
  }
  return out;
}

std::string grid_csv(const ScanGrid& grid, const std::string& config_hash) {
  std::ostringstream os;
  os << "# config_hash=" << config_hash << "\n";
  os << "axis1,axis2,re_value,im_value,abs_value,log_abs,success_prob\n";
  char buf[256];
  for (std::size_t i = 0; i < grid.axis1.steps; ++i) {
    for (std::size_t j = 0; j < grid.axis2.steps; ++j) {
      const cplx v = grid.values[grid.index(i, j)];
      const double a = std::abs(v);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", grid.axis1.at(i), grid.axis2.at(j),
                    v.real(), v.imag(), a, std::log(a), grid.success[grid.index(i, j)]);
      os << buf;
    }
  }
  return os.str();
}

void write_csv(const ScanGrid& grid, const std::filesystem::path& path, const std::string& config_hash) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << grid_csv(grid, config_hash);
}

}  // namespace carbm
