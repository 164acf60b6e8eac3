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

#include "carbm/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include <ceres/ceres.h>

#include "carbm/cache.hpp"
#include "carbm/dense.hpp"
#include "carbm/kernels.hpp"

namespace carbm {

bool LieClosure::contains(const PauliString& p) const {
  return std::find(elements.begin(), elements.end(), p) != elements.end();
}

DimensionExceeded::DimensionExceeded(std::size_t partial_size, std::size_t limit)
    : std::runtime_error("Lie closure exceeded max_dim=" + std::to_string(limit) + " (partial size " +
                         std::to_string(partial_size) + ")"),
      partial_size_(partial_size) {}

LieClosure lie_closure(const PauliSentence& h, std::size_t max_dim, const std::vector<PauliString>& extra) {
  LieClosure out;
  std::unordered_set<PauliString, PauliStringHash> seen;
  auto push = [&](const PauliString& p) {
    if (p.is_identity() || !seen.insert(p).second) return;
    out.elements.push_back(p);
    if (out.elements.size() > max_dim) throw DimensionExceeded(out.elements.size(), max_dim);
  };
  for (const auto& [p, c] : h.terms()) {
    if (!p.is_identity()) out.generators.push_back(p);
  }
  for (const auto& p : extra) {
    if (p.num_qubits() != h.num_qubits()) throw std::invalid_argument("lie_closure: generator length mismatch");
    if (!p.is_identity() && std::find(out.generators.begin(), out.generators.end(), p) == out.generators.end()) {
      out.generators.push_back(p);
    }
  }
  if (out.generators.empty()) throw std::invalid_argument("lie_closure: Hamiltonian has no non-identity terms");
  for (const auto& g : out.generators) push(g);
  for (std::size_t i = 0; i < out.elements.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (!commutes(out.elements[i], out.elements[j])) push(unsigned_product(out.elements[i], out.elements[j]));
    }
  }
  return out;
}

CartanSubalgebra select_csa(const LieClosure& closure, const std::optional<std::vector<PauliString>>& hint) {
  CartanSubalgebra csa;
  std::unordered_set<PauliString, PauliStringHash> chosen;
  if (hint) {
    const std::unordered_set<PauliString, PauliStringHash> members(closure.elements.begin(), closure.elements.end());
    for (std::size_t i = 0; i < hint->size(); ++i) {
      const auto& p = (*hint)[i];
      for (std::size_t j = 0; j < i; ++j) {
        if (!commutes(p, (*hint)[j])) {
          throw std::invalid_argument("select_csa: hint strings " + p.to_text() + " and " + (*hint)[j].to_text() +
                                      " do not commute");
        }
      }
      if (!members.contains(p)) {
        throw std::invalid_argument("select_csa: hint string " + p.to_text() + " is outside the closure");
      }
      if (chosen.insert(p).second) csa.basis.push_back(p);
    }
  }
  std::vector<PauliString> order = closure.elements;
  std::stable_sort(order.begin(), order.end(), [](const PauliString& a, const PauliString& b) {
    if (a.is_diagonal() != b.is_diagonal()) return a.is_diagonal();
    return canonical_less(a, b);
  });
  for (const auto& e : order) {
    if (chosen.contains(e)) continue;
    bool ok = true;
    for (const auto& b : csa.basis) {
      if (!commutes(e, b)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    csa.basis.push_back(e);
    chosen.insert(e);
  }
  return csa;
}

namespace {

// Real sign r with i·(p·k) = r·(unsigned product), for anticommuting p, k.
double anticommutator_sign(const PauliString& p, const PauliString& k) {
  const SignedPauli prod = multiply({Phase::kPlusOne, p}, {Phase::kPlusOne, k});
  const Phase ph = Phase::kPlusI * prod.phase;
  if (ph == Phase::kPlusOne) return 1.0;
  if (ph == Phase::kMinusOne) return -1.0;
  throw std::logic_error("anticommutator_sign: commuting operands");
}

}  // namespace

PauliSentence conjugate_by_exponential(const PauliSentence& s, double theta, const PauliString& k, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("conjugate_by_exponential: sign must be ±1");
  PauliSentence out(s.num_qubits());
  const double c = std::cos(2 * theta);
  const double sn = sign * std::sin(2 * theta);
  for (const auto& [p, coeff] : s.terms()) {
    if (commutes(p, k)) {
      out.add(p, coeff);
      continue;
    }
    out.add(p, coeff * c);
    out.add(unsigned_product(p, k), coeff * sn * anticommutator_sign(p, k));
  }
  return out;
}

namespace {

struct PairTable {
  std::vector<std::uint32_t> e;
  std::vector<std::uint32_t> f;
  std::vector<double> sign;
};

// Coefficient-space form of θ ↦ K(θ)†HK(θ) on the set of strings reachable
// from H by the factors. Each factor acts as independent 2×2 rotations.
class RotationProgram {
 public:
  RotationProgram(const PauliSentence& h, const CartanSubalgebra& csa, const std::vector<PauliString>& ks) {
    auto add = [&](const PauliString& p) {
      if (p.is_identity()) return;
      if (index_.emplace(p, elements_.size()).second) elements_.push_back(p);
    };
    for (const auto& [p, c] : h.terms()) add(p);
    for (const auto& p : csa.basis) add(p);
    std::vector<PauliString> unique_k;
    for (const auto& k : ks) {
      if (std::find(unique_k.begin(), unique_k.end(), k) == unique_k.end()) unique_k.push_back(k);
    }
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      for (const auto& k : unique_k) {
        if (!commutes(elements_[i], k)) add(unsigned_product(elements_[i], k));
      }
    }
    std::unordered_map<PauliString, std::size_t, PauliStringHash> table_of;
    std::vector<PairTable> unique_tables;
    for (const auto& k : unique_k) {
      PairTable t;
      std::vector<bool> used(elements_.size(), false);
      for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (used[i] || commutes(elements_[i], k)) continue;
        const std::size_t j = index_.at(unsigned_product(elements_[i], k));
        used[i] = used[j] = true;
        t.e.push_back(static_cast<std::uint32_t>(i));
        t.f.push_back(static_cast<std::uint32_t>(j));
        t.sign.push_back(anticommutator_sign(elements_[i], k));
      }
      table_of.emplace(k, unique_tables.size());
      unique_tables.push_back(std::move(t));
    }
    tables_ = std::move(unique_tables);
    for (const auto& k : ks) factor_table_.push_back(table_of.at(k));

    x0_.assign(elements_.size(), 0.0);
    for (const auto& [p, c] : h.terms()) {
      if (!p.is_identity()) x0_[index_.at(p)] = c;
    }
    v_.assign(elements_.size(), 0.0);
    in_csa_.assign(elements_.size(), false);
    const double gamma = (std::sqrt(5.0) - 1.0) / 2.0;
    double w = 1.0;
    for (const auto& b : csa.basis) {
      w *= gamma;
      const std::size_t i = index_.at(b);
      v_[i] = w;
      in_csa_[i] = true;
    }
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (!in_csa_[i]) off_.push_back(i);
    }
    norm_h_ = 0;
    for (double c : x0_) norm_h_ += c * c;
    norm_h_ = std::sqrt(norm_h_);
  }

  std::size_t num_factors() const { return factor_table_.size(); }
  std::size_t dim() const { return elements_.size(); }
  const std::vector<std::size_t>& off() const { return off_; }
  const std::vector<double>& v() const { return v_; }
  const std::vector<double>& x0() const { return x0_; }
  double norm_h() const { return norm_h_; }
  const PairTable& table(std::size_t j) const { return tables_[factor_table_[j]]; }

  void rotate(std::vector<double>& x, std::size_t j, double theta) const {
    const PairTable& t = table(j);
    kernels::active().rotate_pairs(x.data(), t.e.data(), t.f.data(), t.sign.data(), t.e.size(), std::cos(2 * theta),
                                   std::sin(2 * theta));
  }

  std::vector<double> forward(const double* theta) const {
    std::vector<double> x = x0_;
    for (std::size_t j = 0; j < num_factors(); ++j) rotate(x, j, theta[j]);
    return x;
  }

  double cost(const std::vector<double>& x) const {
    double f = 0;
    for (std::size_t i = 0; i < x.size(); ++i) f += v_[i] * x[i];
    return f;
  }

  double off_norm(const std::vector<double>& x) const {
    double s = 0;
    for (auto i : off_) s += x[i] * x[i];
    return std::sqrt(s) / norm_h_;
  }

  // Cost and adjoint gradient in O(factors × pairs).
  double cost_and_gradient(const double* theta, double* grad) const {
    std::vector<double> x = forward(theta);
    const double f = cost(x);
    if (grad == nullptr) return f;
    std::vector<double> lam = v_;
    for (std::size_t jj = num_factors(); jj-- > 0;) {
      const PairTable& t = table(jj);
      double g = 0;
      for (std::size_t p = 0; p < t.e.size(); ++p) {
        const std::uint32_t e = t.e[p], q = t.f[p];
        g += 2.0 * t.sign[p] * (lam[q] * x[e] - lam[e] * x[q]);
      }
      grad[jj] = g;
      rotate(x, jj, -theta[jj]);
      rotate(lam, jj, -theta[jj]);
    }
    return f;
  }

  // Closed-form minimizing sweep over all coordinates in order.
  void coordinate_sweep(std::vector<double>& theta) const {
    const std::size_t m = num_factors();
    std::vector<std::vector<double>> lams(m);
    std::vector<double> lam = v_;
    for (std::size_t jj = m; jj-- > 0;) {
      lams[jj] = lam;
      rotate(lam, jj, -theta[jj]);
    }
    std::vector<double> x = x0_;
    for (std::size_t j = 0; j < m; ++j) {
      const PairTable& t = table(j);
      const std::vector<double>& l = lams[j];
      // f(θ) = const + a·cos2θ + b·sin2θ.
      double a = 0, b = 0;
      for (std::size_t p = 0; p < t.e.size(); ++p) {
        const std::uint32_t e = t.e[p], q = t.f[p];
        a += l[e] * x[e] + l[q] * x[q];
        b += t.sign[p] * (l[q] * x[e] - l[e] * x[q]);
      }
      if (a != 0.0 || b != 0.0) theta[j] = 0.5 * std::atan2(-b, -a);
      rotate(x, j, theta[j]);
    }
  }

  // Off-subalgebra residuals and their Jacobian (row-major, off × factors).
  void residuals(const double* theta, double* r, double* jac) const {
    const std::size_t m = num_factors();
    std::vector<std::vector<double>> xs;
    std::vector<double> x = x0_;
    if (jac != nullptr) xs.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      rotate(x, j, theta[j]);
      if (jac != nullptr) xs.push_back(x);
    }
    for (std::size_t i = 0; i < off_.size(); ++i) r[i] = x[off_[i]];
    if (jac == nullptr) return;
    std::vector<double> y(dim());
    for (std::size_t j = 0; j < m; ++j) {
      std::fill(y.begin(), y.end(), 0.0);
      const PairTable& t = table(j);
      const std::vector<double>& xa = xs[j];
      for (std::size_t p = 0; p < t.e.size(); ++p) {
        y[t.e[p]] = -2.0 * t.sign[p] * xa[t.f[p]];
        y[t.f[p]] = 2.0 * t.sign[p] * xa[t.e[p]];
      }
      for (std::size_t k = j + 1; k < m; ++k) rotate(y, k, theta[k]);
      for (std::size_t i = 0; i < off_.size(); ++i) jac[i * m + j] = y[off_[i]];
    }
  }

 private:
  std::vector<PauliString> elements_;
  std::unordered_map<PauliString, std::size_t, PauliStringHash> index_;
  std::vector<PairTable> tables_;
  std::vector<std::size_t> factor_table_;
  std::vector<double> x0_;
  std::vector<double> v_;
  std::vector<bool> in_csa_;
  std::vector<std::size_t> off_;
  double norm_h_ = 1.0;
};

class CostFunction final : public ceres::FirstOrderFunction {
 public:
  explicit CostFunction(const RotationProgram& prog) : prog_(prog) {}
  bool Evaluate(const double* parameters, double* cost, double* gradient) const override {
    *cost = prog_.cost_and_gradient(parameters, gradient);
    return true;
  }
  int NumParameters() const override { return static_cast<int>(prog_.num_factors()); }

 private:
  const RotationProgram& prog_;
};

class OffCsaResidual final : public ceres::CostFunction {
 public:
  explicit OffCsaResidual(const RotationProgram& prog) : prog_(prog) {
    set_num_residuals(static_cast<int>(prog.off().size()));
    mutable_parameter_block_sizes()->push_back(static_cast<std::int32_t>(prog.num_factors()));
  }
  bool Evaluate(double const* const* parameters, double* residuals, double** jacobians) const override {
    prog_.residuals(parameters[0], residuals, jacobians != nullptr ? jacobians[0] : nullptr);
    return true;
  }

 private:
  const RotationProgram& prog_;
};

struct StageResult {
  std::vector<double> theta;
  double off = 0;
  std::size_t iterations = 0;
};

StageResult run_stages(const RotationProgram& prog, std::vector<double> theta, const OptimizeOptions& opt) {
  StageResult out;
  for (std::size_t s = 0; s < opt.warmup_sweeps; ++s) prog.coordinate_sweep(theta);
  out.iterations += opt.warmup_sweeps;

  if (opt.max_iter > 0) {
    ceres::GradientProblem problem(new CostFunction(prog));
    ceres::GradientProblemSolver::Options o;
    o.line_search_direction_type = prog.num_factors() > 2000 ? ceres::LBFGS : ceres::BFGS;
    o.max_num_iterations = static_cast<int>(opt.max_iter);
    o.function_tolerance = 1e-16;
    o.gradient_tolerance = 1e-14;
    o.parameter_tolerance = 1e-16;
    o.logging_type = ceres::SILENT;
    ceres::GradientProblemSolver::Summary summary;
    ceres::Solve(o, problem, theta.data(), &summary);
    out.iterations += summary.iterations.size();
  }

  double off = prog.off_norm(prog.forward(theta.data()));
  const double work = static_cast<double>(prog.off().size()) * static_cast<double>(prog.num_factors());
  if (off > opt.tol && opt.polish_iter > 0 && !prog.off().empty() && work < 5e7) {
    ceres::Problem problem;
    problem.AddResidualBlock(new OffCsaResidual(prog), nullptr, theta.data());
    ceres::Solver::Options o;
    o.minimizer_type = ceres::TRUST_REGION;
    o.trust_region_strategy_type = ceres::LEVENBERG_MARQUARDT;
    o.linear_solver_type = ceres::DENSE_QR;
    o.max_num_iterations = static_cast<int>(opt.polish_iter);
    o.function_tolerance = 1e-32;
    o.gradient_tolerance = 1e-32;
    o.parameter_tolerance = 1e-20;
    o.logging_type = ceres::SILENT;
    o.num_threads = 1;
    ceres::Solver::Summary summary;
    ceres::Solve(o, &problem, &summary);
    out.iterations += summary.iterations.size();
    off = prog.off_norm(prog.forward(theta.data()));
  }
  out.theta = std::move(theta);
  out.off = off;
  return out;
}

}  // namespace

OptimizeResult optimize_angles(const PauliSentence& h, const CartanSubalgebra& csa,
                               const std::vector<PauliString>& k_sequence, const OptimizeOptions& options) {
  if (k_sequence.empty()) throw std::invalid_argument("optimize_angles: empty k-basis");
  const RotationProgram prog(h, csa, k_sequence);
  const std::size_t m = prog.num_factors();

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uni(-std::numbers::pi, std::numbers::pi);
  std::vector<double> init(m);
  for (auto& t : init) t = uni(rng);

  StageResult best = run_stages(prog, init, options);
  if (best.off > options.tol) {
    StageResult retry = run_stages(prog, std::vector<double>(m, 0.0), options);
    retry.iterations += best.iterations;
    if (retry.off < best.off) {
      best = std::move(retry);
    } else {
      best.iterations = retry.iterations;
    }
  }
  OptimizeResult r;
  r.angles = std::move(best.theta);
  r.off_csa = best.off;
  r.converged = best.off <= options.tol;
  r.iterations = best.iterations;
  r.cost = prog.cost(prog.forward(r.angles.data()));
  return r;
}

std::vector<PauliString> k_basis(const LieClosure& closure, const CartanSubalgebra& csa) {
  const std::unordered_set<PauliString, PauliStringHash> in_csa(csa.basis.begin(), csa.basis.end());
  std::vector<PauliString> out;
  for (const auto& e : closure.elements) {
    if (!in_csa.contains(e)) out.push_back(e);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<PauliString> z_products_except_full(std::size_t n) {
  std::vector<PauliString> out;
  const std::uint64_t full = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  for (std::uint64_t z = 1; z < full; ++z) out.emplace_back(n, 0, z);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

double dense_residual(const PauliSentence& h_full, const std::vector<KFactor>& factors, const PauliSentence& h) {
  CMatrix m = dense_matrix(h);
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) conjugate_dense(m, it->k, it->theta);
  const CMatrix target = dense_matrix(h_full);
  const double denom = target.norm();
  return denom == 0.0 ? (m - target).norm() : (m - target).norm() / denom;
}

namespace {

bool all_terms_commute(const PauliSentence& h) {
  const auto& t = h.terms();
  for (auto i = t.begin(); i != t.end(); ++i) {
    for (auto j = std::next(i); j != t.end(); ++j) {
      if (!commutes(i->first, j->first)) return false;
    }
  }
  return true;
}

}  // namespace

KHKDecomposition decompose(const PauliSentence& h, const DecomposeOptions& options) {
  KHKDecomposition out;
  out.num_qubits = h.num_qubits();

  PauliSentence body = h;
  body.add(PauliString(h.num_qubits()), -h.identity_coefficient());
  if (body.empty()) {
    out.h = h;
    return out;
  }
  if (all_terms_commute(body) && !options.csa_hint) {
    out.h = h;
    for (const auto& [p, c] : body.terms()) out.csa.basis.push_back(p);
    out.closure_size = body.size();
    return out;
  }

  const std::vector<PauliString> extra = options.csa_hint.value_or(std::vector<PauliString>{});
  const LieClosure closure = lie_closure(body, options.max_dim, extra);
  out.closure_size = closure.elements.size();
  out.csa = select_csa(closure, options.csa_hint);
  const std::vector<PauliString> kb = k_basis(closure, out.csa);

  std::optional<DecompositionCache> cache;
  if (!options.cache_dir.empty()) {
    cache.emplace(options.cache_dir);
    out.cache_key = decomposition_key(h, out.csa);
    if (auto hit = cache->load(out.cache_key, h, options.tol)) {
      hit->cache_hit = true;
      hit->closure_size = out.closure_size;
      return *hit;
    }
  }

  if (kb.empty()) {
    out.h = h;
    out.residual = dense_residual(h, {}, h);
    return out;
  }

  std::vector<PauliString> sequence;
  for (std::size_t r = 0; r < std::max<std::size_t>(1, options.k_repetitions); ++r) {
    sequence.insert(sequence.end(), kb.begin(), kb.end());
  }
  OptimizeOptions opt = options.optimizer;
  opt.seed = options.seed;
  const OptimizeResult res = optimize_angles(body, out.csa, sequence, opt);

  for (std::size_t j = 0; j < sequence.size(); ++j) out.factors.push_back({res.angles[j], sequence[j]});
  PauliSentence hk = body;
  for (const auto& f : out.factors) hk = conjugate_by_exponential(hk, f.theta, f.k, 1);
  PauliSentence projected(h.num_qubits());
  for (const auto& b : out.csa.basis) projected.add(b, hk.coefficient(b));
  projected.add(PauliString(h.num_qubits()), h.identity_coefficient());
  out.h = std::move(projected);
  out.residual = dense_residual(h, out.factors, out.h);
  out.converged = res.converged && out.residual <= options.tol;
  if (cache) cache->store(out);
  return out;
}

}  // namespace carbm
