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

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "carbm/cache.hpp"
#include "carbm/cartan.hpp"
#include "carbm/correction.hpp"
#include "carbm/dense.hpp"
#include "carbm/experiments.hpp"
#include "carbm/models.hpp"
#include "carbm/rbm.hpp"
#include "carbm/simulator.hpp"
#include "run_config.hpp"

namespace carbm::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Problem {
  PauliSentence h;
  std::optional<std::vector<PauliString>> hint;
  std::string label;
};

Problem problem_for(const RunConfig& c) {
  if (!c.model.h_terms.empty()) {
    return {PauliSentence::from_terms(c.model.h_terms.front().first.size(), c.model.h_terms), std::nullopt, "h_terms"};
  }
  if (c.model.kind == ModelKind::kGrossNeveu) return {build_gross_neveu(c.model.gn), std::nullopt, "gross_neveu"};
  return {build_xxz(c.model.xxz), z_products_except_full(c.model.xxz.L), "xxz"};
}

DecomposeOptions decompose_options(const RunConfig& c, std::optional<std::vector<PauliString>> hint) {
  DecomposeOptions d;
  d.csa_hint = std::move(hint);
  d.seed = component_seed(c.seed, "decompose");
  d.tol = c.tolerance;
  d.cache_dir = DecompositionCache::resolve_dir(c.cache_dir.empty() ? c.out / "cache" : c.cache_dir);
  return d;
}

CorrectionSettings correction_settings(const RunConfig& c) { return {c.scheme, c.max_corrections}; }

Axis pick_axis(const RunConfig& c, std::size_t i, const Axis& fallback) {
  if (c.grid.empty()) return fallback;
  Axis a = c.grid[i];
  if (a.label != fallback.label) {
    throw ConfigError("grid", "grid axis " + std::to_string(i + 1) + " of " + to_string(c.command) + " must be \"" +
                                  fallback.label + "\", got \"" + a.label + "\"");
  }
  return a;
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

json seeds_json(const RunConfig& c) {
  return json{{"master", c.seed}, {"decompose", component_seed(c.seed, "decompose")}};
}

json sidecar(const RunConfig& c, const std::string& hash, const ScanDiagnostics& diag, double wall) {
  return json{{"config_hash", hash},
              {"config", c.to_json()},
              {"seeds", seeds_json(c)},
              {"decomposition_residuals", diag.residuals},
              {"cache_keys", diag.cache_keys},
              {"cache_hits", diag.cache_hits},
              {"max_oracle_error", diag.max_oracle_error},
              {"max_cyclicity_error", diag.max_cyclicity_error},
              {"wall_time_s", wall}};
}

double max_of(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

double mean_success(const ScanGrid& g) {
  double s = 0;
  for (double v : g.success) s += v;
  return g.success.empty() ? 1.0 : s / static_cast<double>(g.success.size());
}

DispatchResult run_decompose(const RunConfig& c, const std::string& hash) {
  const auto t0 = Clock::now();
  const Problem p = problem_for(c);
  const KHKDecomposition d = decompose(p.h, decompose_options(c, p.hint));
  DispatchResult r;
  r.report = {{"config_hash", hash},
              {"config", c.to_json()},
              {"seeds", seeds_json(c)},
              {"decomposition", decomposition_to_json(d)},
              {"closure_size", d.closure_size},
              {"cache_hit", d.cache_hit},
              {"cache_key", d.cache_key},
              {"wall_time_s", seconds_since(t0)}};
  const auto path = c.out / "decomposition.json";
  write_json(path, r.report);
  r.outputs.push_back(path);
  r.exit_code = d.residual <= c.tolerance ? 0 : 1;
  r.summary = "decompose: residual=" + sci(d.residual) + " factors=" + std::to_string(d.factors.size()) +
              " cache_hit=" + (d.cache_hit ? "true" : "false") + " success_probability=1 output=" + path.string();
  return r;
}

DispatchResult run_thermal_state(const RunConfig& c, const std::string& hash) {
  const auto t0 = Clock::now();
  const Problem p = problem_for(c);
  const KHKDecomposition d = decompose(p.h, decompose_options(c, p.hint));
  const RunResult run = prepare_thermal_state(d, c.beta, correction_settings(c));
  const CMatrix rho = run.state.system_state();
  const CMatrix hd = dense_matrix(p.h);
  const CMatrix gibbs_num = hermitian_exp(hd, -c.beta);
  const double z_exact = gibbs_num.trace().real();
  const double dist = trace_distance(rho, gibbs_num / z_exact);
  const double z_circuit = reconstruct_partition_function(run, d.num_qubits, c.beta, d.h.identity_coefficient());
  json probs = run.layer_probabilities;
  DispatchResult r;
  r.report = {{"config_hash", hash},
              {"config", c.to_json()},
              {"seeds", seeds_json(c)},
              {"residual", d.residual},
              {"success_probability", run.success_probability},
              {"layer_probabilities", probs},
              {"corrected_layers", run.corrected_layers},
              {"trace_distance_to_gibbs", dist},
              {"partition_function", z_circuit},
              {"partition_function_ed", z_exact},
              {"energy", expectation(run.state, p.h)},
              {"cache_hit", d.cache_hit},
              {"wall_time_s", seconds_since(t0)}};
  const auto path = c.out / "thermal_state.json";
  write_json(path, r.report);
  r.outputs.push_back(path);
  r.exit_code = 0;
  r.summary = "thermal-state: residual=" + sci(d.residual) + " success_probability=" + sci(run.success_probability) +
              " trace_distance=" + sci(dist) + " output=" + path.string();
  return r;
}

DispatchResult run_lee_yang(const RunConfig& c, const std::string& hash) {
  const auto t0 = Clock::now();
  LeeYangOptions o;
  o.model = c.model.xxz;
  o.beta = c.beta;
  o.g_r = pick_axis(c, 0, o.g_r);
  o.g_i = pick_axis(c, 1, o.g_i);
  o.correction = correction_settings(c);
  o.decompose = decompose_options(c, z_products_except_full(c.model.xxz.L));
  o.threads = c.threads;
  o.compare_oracle = c.compare_oracle;
  ScanDiagnostics diag;
  const ScanGrid g = lee_yang_scan(o, &diag);
  const auto csv = c.out / "lee_yang.csv";
  write_csv(g, csv, hash);
  DispatchResult r;
  r.report = sidecar(c, hash, diag, seconds_since(t0));
  json zeros = json::array();
  for (const auto& z : locate_zeros(g, c.zero_threshold)) zeros.push_back({{"g_r", z.a1}, {"g_i", z.a2}, {"abs", z.abs_value}});
  r.report["zeros"] = zeros;
  r.report["zero_threshold"] = c.zero_threshold;
  const auto side = c.out / "lee_yang.json";
  write_json(side, r.report);
  r.outputs = {csv, side};
  r.summary = "lee-yang: residual=" + sci(max_of(diag.residuals)) + " success_probability(mean)=" + sci(mean_success(g)) +
              " zeros=" + std::to_string(zeros.size()) + " output=" + csv.string();
  return r;
}

DispatchResult run_fisher(const RunConfig& c, const std::string& hash) {
  const auto t0 = Clock::now();
  FisherOptions o;
  o.model = c.model.xxz;
  o.beta_r = pick_axis(c, 0, o.beta_r);
  o.beta_i = pick_axis(c, 1, o.beta_i);
  o.correction = correction_settings(c);
  o.decompose = decompose_options(c, z_products_except_full(c.model.xxz.L));
  o.threads = c.threads;
  o.compare_oracle = c.compare_oracle;
  ScanDiagnostics diag;
  const ScanGrid g = fisher_scan(o, &diag);
  const auto csv = c.out / "fisher.csv";
  write_csv(g, csv, hash);
  DispatchResult r;
  r.report = sidecar(c, hash, diag, seconds_since(t0));
  const auto side = c.out / "fisher.json";
  write_json(side, r.report);
  r.outputs = {csv, side};
  r.summary = "fisher: residual=" + sci(max_of(diag.residuals)) + " success_probability(mean)=" + sci(mean_success(g)) +
              " output=" + csv.string();
  return r;
}

DispatchResult run_gn_scan(const RunConfig& c, const std::string& hash) {
  const auto t0 = Clock::now();
  GrossNeveuScanOptions o;
  o.model = c.model.gn;
  o.beta = pick_axis(c, 0, o.beta);
  o.mu = pick_axis(c, 1, o.mu);
  o.correction = correction_settings(c);
  o.decompose = decompose_options(c, std::nullopt);
  o.threads = c.threads;
  o.compare_oracle = c.compare_oracle;
  ScanDiagnostics diag;
  const GrossNeveuScan s = gn_phase_scan(o, &diag);
  const auto csv = c.out / "gn_condensate.csv";
  const auto csv_s = c.out / "gn_success.csv";
  write_csv(s.observable, csv, hash);
  write_csv(s.success, csv_s, hash);
  DispatchResult r;
  r.report = sidecar(c, hash, diag, seconds_since(t0));
  const auto side = c.out / "gn_scan.json";
  write_json(side, r.report);
  r.outputs = {csv, csv_s, side};
  r.summary = "gn-scan: residual=" + sci(max_of(diag.residuals)) +
              " success_probability(mean)=" + sci(mean_success(s.observable)) + " output=" + csv.string();
  return r;
}

// Invariant checks on the built-in model; each returns its worst error.
DispatchResult run_validate(const RunConfig& c, const std::string& hash) {
  const auto t0 = Clock::now();
  json checks = json::array();
  bool all_ok = true;
  auto add = [&](const std::string& name, double value, double tol) {
    const bool ok = value <= tol;
    all_ok = all_ok && ok;
    checks.push_back({{"name", name}, {"value", value}, {"tolerance", tol}, {"pass", ok}});
  };

  const Problem p = problem_for(c);
  const KHKDecomposition d = decompose(p.h, decompose_options(c, p.hint));
  add("decomposition_residual", d.residual, std::max(c.tolerance, 1e-6));

  const std::size_t n = d.num_qubits;
  const CMatrix hd = dense_matrix(p.h);
  CMatrix k = CMatrix::Identity(hd.rows(), hd.cols());
  for (const auto& f : d.factors) k = k * hermitian_exp(dense_matrix(f.k), {0.0, f.theta});
  const CMatrix lhs = hermitian_exp(hd, -c.beta);
  const CMatrix rhs = k * hermitian_exp(dense_matrix(d.h), -c.beta) * k.adjoint();
  add("propagator_error", (lhs - rhs).norm() / lhs.norm(), 1e-6);

  const RunResult run = prepare_thermal_state(d, c.beta, correction_settings(c));
  add("thermal_trace_distance", trace_distance(run.state.system_state(), lhs / lhs.trace().real()),
      std::max(1e-8, 10 * d.residual));
  const double z = reconstruct_partition_function(run, n, c.beta, d.h.identity_coefficient());
  const double z_h = hermitian_exp(dense_matrix(d.h), -c.beta).trace().real();
  add("partition_function_relative_error", std::abs(z - z_h) / z_h, 1e-8);
  add("state_hermiticity", (run.state.to_matrix() - run.state.to_matrix().adjoint()).norm(), 1e-12);

  std::mt19937_64 rng(component_seed(c.seed, "validate"));
  std::uniform_real_distribution<double> u(-3, 3);
  double eq5 = 0;
  for (int t = 0; t < 20; ++t) {
    const double kappa = u(rng);
    for (Scheme s : {Scheme::kStandard, Scheme::kCorrectable}) {
      const RbmParams prm = make_params(s, kappa);
      const CMatrix blk = block_unitary(prm, 0, 1, 2).block(0, 0, 2, 2) * (2 * prm.A);
      eq5 = std::max(eq5, (blk - hermitian_exp(dense_matrix(PauliString::from_text("Z")), -kappa)).norm());
    }
  }
  add("block_encoding_error", eq5, 1e-10);

  DispatchResult r;
  r.report = {{"config_hash", hash}, {"config", c.to_json()}, {"checks", checks}, {"pass", all_ok},
              {"wall_time_s", seconds_since(t0)}};
  const auto path = c.out / "validate.json";
  write_json(path, r.report);
  r.outputs.push_back(path);
  r.exit_code = all_ok ? 0 : 1;
  r.summary = std::string("validate: ") + (all_ok ? "pass" : "FAIL") + " residual=" + sci(d.residual) +
              " success_probability=" + sci(run.success_probability) + " output=" + path.string();
  return r;
}

}  // namespace

DispatchResult dispatch(const RunConfig& config) {
  std::filesystem::create_directories(config.out);
  const std::string hash = config_hash(config);
  switch (config.command) {
    case Command::kDecompose: return run_decompose(config, hash);
    case Command::kThermalState: return run_thermal_state(config, hash);
    case Command::kLeeYang: return run_lee_yang(config, hash);
    case Command::kFisher: return run_fisher(config, hash);
    case Command::kGnScan: return run_gn_scan(config, hash);
    case Command::kValidate: return run_validate(config, hash);
  }
  throw std::logic_error("unreachable command");
}

}  // namespace carbm::cli
