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

#include "carbm/cache.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace carbm {

namespace {

constexpr int kFormatVersion = 1;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::string decomposition_key(const PauliSentence& h, const CartanSubalgebra& csa) {
  std::ostringstream os;
  os << "v" << kFormatVersion << ";n=" << h.num_qubits() << ";";
  for (const auto& [p, c] : h.sorted_terms()) {
    const long long q = std::llround(c * 1e12);
    if (q != 0) os << p.to_text() << ":" << q << ";";
  }
  os << "|";
  for (const auto& b : csa.basis) os << b.to_text() << ";";
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(os.str())));
  return buf;
}

nlohmann::json decomposition_to_json(const KHKDecomposition& d) {
  nlohmann::json j;
  j["format"] = kFormatVersion;
  j["hamiltonian_hash"] = d.cache_key;
  j["num_qubits"] = d.num_qubits;
  nlohmann::json kf = nlohmann::json::array();
  for (const auto& f : d.factors) kf.push_back({f.theta, f.k.to_text()});
  j["k_factors"] = kf;
  nlohmann::json ht = nlohmann::json::array();
  for (const auto& [p, c] : d.h.sorted_terms()) ht.push_back({p.to_text(), c});
  j["h_terms"] = ht;
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& b : d.csa.basis) cs.push_back(b.to_text());
  j["csa"] = cs;
  j["residual"] = d.residual;
  j["converged"] = d.converged;
  return j;
}

KHKDecomposition decomposition_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<int>() != kFormatVersion) throw std::runtime_error("unsupported cache format");
    KHKDecomposition d;
    d.cache_key = j.at("hamiltonian_hash").get<std::string>();
    d.num_qubits = j.at("num_qubits").get<std::size_t>();
    for (const auto& f : j.at("k_factors")) {
      d.factors.push_back({f.at(0).get<double>(), PauliString::from_text(f.at(1).get<std::string>())});
    }
    d.h = PauliSentence(d.num_qubits);
    for (const auto& t : j.at("h_terms")) d.h.add(t.at(0).get<std::string>(), t.at(1).get<double>());
    for (const auto& b : j.at("csa")) d.csa.basis.push_back(PauliString::from_text(b.get<std::string>()));
    d.residual = j.at("residual").get<double>();
    d.converged = j.at("converged").get<bool>();
    for (const auto& f : d.factors) {
      if (f.k.num_qubits() != d.num_qubits) throw std::runtime_error("factor length mismatch");
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed decomposition JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("malformed decomposition JSON: ") + e.what());
  }
}

DecompositionCache::DecompositionCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path DecompositionCache::resolve_dir(const std::filesystem::path& fallback) {
  if (const char* env = std::getenv("CARBM_CACHE_DIR"); env != nullptr && *env != '\0') return env;
  return fallback;
}

std::filesystem::path DecompositionCache::path_for(const std::string& key) const {
  return dir_ / ("khk-" + key + ".json");
}

std::optional<KHKDecomposition> DecompositionCache::load(const std::string& key, const PauliSentence& h,
                                                         double tol) const {
  const auto path = path_for(key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    KHKDecomposition d = decomposition_from_json(j);
    if (d.cache_key != key || d.num_qubits != h.num_qubits()) throw std::runtime_error("key mismatch");
    const double r = dense_residual(h, d.factors, d.h);
    if (!(r <= std::max(tol, d.residual * 1.5 + 1e-14))) throw std::runtime_error("residual does not re-verify");
    d.residual = r;
    d.cache_key = key;
    return d;
  } catch (const std::exception& e) {
    std::cerr << "warning: ignoring cache entry " << path.string() << ": " << e.what() << "; recomputing\n";
    return std::nullopt;
  }
}

void DecompositionCache::store(const KHKDecomposition& d) const {
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  const auto final_path = path_for(d.cache_key);
  std::ostringstream tmp_name;
  tmp_name << final_path.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id())
           << "." << counter++;
  const auto tmp_path = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp_path);
    if (!out) {
      std::cerr << "warning: cannot write cache entry " << tmp_path.string() << "\n";
      return;
    }
    out << decomposition_to_json(d).dump(1) << "\n";
  }
  std::filesystem::rename(tmp_path, final_path, ec);
  if (ec) {
    std::cerr << "warning: cannot publish cache entry " << final_path.string() << ": " << ec.message() << "\n";
    std::filesystem::remove(tmp_path, ec);
  }
}

}  // namespace carbm
