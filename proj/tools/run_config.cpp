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

#include "run_config.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace carbm::cli {

using nlohmann::json;

namespace {

constexpr const char* kCommands[] = {"decompose", "thermal-state", "lee-yang", "fisher", "gn-scan", "validate"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

std::string type_name(const json& j) {
  if (j.is_number_unsigned()) return "non-negative integer";
  if (j.is_number_integer()) return "integer";
  if (j.is_number()) return "number";
  return j.type_name();
}

// Overlays `patch` onto `base`, rejecting keys that `base` lacks and values
// whose JSON kind differs.
void overlay(json& base, const json& patch, const std::string& prefix) {
  if (!patch.is_object()) throw ConfigError(prefix, "configuration " + (prefix.empty() ? "root" : prefix) + " must be an object");
  for (const auto& [key, value] : patch.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!base.contains(key)) throw ConfigError(path, "unknown configuration key \"" + path + "\"");
    json& slot = base[key];
    if (path == "correction") {
      if (!(value.is_string() || (value.is_number_integer() && value.get<std::int64_t>() >= 0)))
        throw ConfigError(path, "\"correction\" must be \"off\" or a non-negative integer, got " + type_name(value));
      slot = value;
      continue;
    }
    if (slot.is_object()) {
      overlay(slot, value, path);
      continue;
    }
    if (slot.is_number_unsigned() && (value.is_number_unsigned() || (value.is_number_integer() && value.get<std::int64_t>() >= 0))) {
      slot = value.get<std::uint64_t>();
      continue;
    }
    const bool ok =
                    (slot.is_number_float() && value.is_number()) || (slot.is_string() && value.is_string()) ||
                    (slot.is_boolean() && value.is_boolean()) || (slot.is_array() && value.is_array());
    if (!ok) {
      throw ConfigError(path, "\"" + path + "\" expects " + type_name(slot) + ", got " + type_name(value));
    }
    slot = value;
  }
}

double positive(const json& j, const std::string& key) {
  const double v = j.get<double>();
  if (!(v > 0)) throw ConfigError(key, "\"" + key + "\" must be positive, got " + fmt(v));
  return v;
}

std::size_t at_least(const json& j, const std::string& key, std::size_t lo) {
  const auto v = j.get<std::uint64_t>();
  if (v < lo) throw ConfigError(key, "\"" + key + "\" must be at least " + std::to_string(lo) + ", got " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

std::string axis_text(const Axis& a) {
  return a.label + ":" + fmt(a.lo) + ":" + fmt(a.hi) + ":" + std::to_string(a.steps);
}

}  // namespace

std::string to_string(Command c) { return kCommands[static_cast<int>(c)]; }

Command command_from_string(const std::string& s) {
  for (int i = 0; i < 6; ++i)
    if (s == kCommands[i]) return static_cast<Command>(i);
  throw ConfigError("command", "unknown command \"" + s +
                                   "\" (expected decompose, thermal-state, lee-yang, fisher, gn-scan or validate)");
}

json default_config() {
  return json{
      {"command", "validate"},
      {"model",
       {{"type", "xxz"},
        {"xxz", {{"L", 4u}, {"J", 1.0}, {"Jz", 1.0}, {"g_r", 0.0}}},
        {"gross_neveu", {{"N", 2u}, {"L", 2u}, {"G", 1.0}, {"mu", 0.0}, {"m", 0.0}}},
        {"h_terms", json::array()}}},
      {"grid", ""},
      {"beta", 1.0},
      {"correction", "off"},
      {"scheme", "standard"},
      {"seed", 7u},
      {"threads", 0u},
      {"tolerance", 1e-10},
      {"zero_threshold", 0.1},
      {"compare_oracle", true},
      {"out", "out"},
      {"cache_dir", ""},
  };
}

std::vector<Axis> parse_grid(const std::string& text) {
  std::vector<Axis> axes;
  if (text.empty()) return axes;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::vector<std::string> f;
    std::stringstream ps(part);
    std::string tok;
    while (std::getline(ps, tok, ':')) f.push_back(tok);
    if (f.size() != 4) throw ConfigError("grid", "grid axis \"" + part + "\" is not label:lo:hi:steps");
    Axis a;
    a.label = f[0];
    try {
      std::size_t used = 0;
      a.lo = std::stod(f[1], &used);
      if (used != f[1].size()) throw std::invalid_argument(f[1]);
      a.hi = std::stod(f[2], &used);
      if (used != f[2].size()) throw std::invalid_argument(f[2]);
      const long steps = std::stol(f[3], &used);
      if (used != f[3].size() || steps < 1) throw std::invalid_argument(f[3]);
      a.steps = static_cast<std::size_t>(steps);
    } catch (const std::exception&) {
      throw ConfigError("grid", "grid axis \"" + part + "\" has a malformed number");
    }
    if (a.hi < a.lo) throw ConfigError("grid", "grid axis \"" + a.label + "\" has hi < lo");
    axes.push_back(a);
  }
  if (axes.size() != 2) throw ConfigError("grid", "grid must have exactly two axes, got " + std::to_string(axes.size()));
  return axes;
}

RunConfig parse_config(const json& file, const json& flags) {
  json merged = default_config();
  if (!file.is_null()) overlay(merged, file, "");
  if (!flags.is_null()) overlay(merged, flags, "");

  RunConfig c;
  c.command = command_from_string(merged["command"].get<std::string>());
  const json& m = merged["model"];
  const auto type = m["type"].get<std::string>();
  if (type == "xxz") {
    c.model.kind = ModelKind::kXXZ;
  } else if (type == "gross_neveu") {
    c.model.kind = ModelKind::kGrossNeveu;
  } else {
    throw ConfigError("model.type", "\"model.type\" must be \"xxz\" or \"gross_neveu\", got \"" + type + "\"");
  }
  c.model.xxz.L = at_least(m["xxz"]["L"], "model.xxz.L", 2);
  c.model.xxz.J = m["xxz"]["J"].get<double>();
  c.model.xxz.Jz = m["xxz"]["Jz"].get<double>();
  c.model.xxz.g_r = m["xxz"]["g_r"].get<double>();
  c.model.gn.N = at_least(m["gross_neveu"]["N"], "model.gross_neveu.N", 1);
  c.model.gn.L = at_least(m["gross_neveu"]["L"], "model.gross_neveu.L", 1);
  c.model.gn.G = m["gross_neveu"]["G"].get<double>();
  c.model.gn.mu = m["gross_neveu"]["mu"].get<double>();
  c.model.gn.m = m["gross_neveu"]["m"].get<double>();
  if (c.model.xxz.L > 12) throw ConfigError("model.xxz.L", "\"model.xxz.L\" exceeds the 12-qubit limit");
  if (c.model.gn.N * c.model.gn.L > 12)
    throw ConfigError("model.gross_neveu", "gross_neveu N*L exceeds the 12-qubit limit");
  for (const auto& t : m["h_terms"]) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_string() || !t[1].is_number())
      throw ConfigError("model.h_terms", "\"model.h_terms\" entries must be [pauli-text, coefficient]");
    const auto text = t[0].get<std::string>();
    try {
      PauliString::from_text(text);
    } catch (const std::exception& e) {
      throw ConfigError("model.h_terms", std::string("\"model.h_terms\": ") + e.what());
    }
    if (!c.model.h_terms.empty() && c.model.h_terms.front().first.size() != text.size())
      throw ConfigError("model.h_terms", "\"model.h_terms\" strings must share one length");
    c.model.h_terms.emplace_back(text, t[1].get<double>());
  }

  c.grid = parse_grid(merged["grid"].get<std::string>());
  c.beta = merged["beta"].get<double>();
  if (!(c.beta >= 0)) throw ConfigError("beta", "\"beta\" must be non-negative, got " + fmt(c.beta));

  const json& corr = merged["correction"];
  if (corr.is_string()) {
    const auto s = corr.get<std::string>();
    if (s == "off") {
      c.max_corrections = 0;
    } else {
      std::size_t used = 0;
      long k = -1;
      try {
        k = std::stol(s, &used);
      } catch (const std::exception&) {
      }
      if (k < 0 || used != s.size()) throw ConfigError("correction", "\"correction\" must be \"off\" or k >= 0, got \"" + s + "\"");
      c.max_corrections = static_cast<std::size_t>(k);
    }
  } else {
    c.max_corrections = corr.get<std::size_t>();
  }
  try {
    c.scheme = scheme_from_string(merged["scheme"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError("scheme", e.what());
  }
  c.seed = merged["seed"].get<std::uint64_t>();
  c.threads = merged["threads"].get<std::size_t>();
  if (c.threads == 0) c.threads = std::max(1u, std::thread::hardware_concurrency());
  c.tolerance = positive(merged["tolerance"], "tolerance");
  c.zero_threshold = positive(merged["zero_threshold"], "zero_threshold");
  c.compare_oracle = merged["compare_oracle"].get<bool>();
  c.out = merged["out"].get<std::string>();
  if (c.out.empty()) throw ConfigError("out", "\"out\" must not be empty");
  c.cache_dir = merged["cache_dir"].get<std::string>();
  return c;
}

RunConfig parse_config_file(const std::filesystem::path& path, const json& flags) {
  json file;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
      try {
        file = json::parse(text);
      } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("config file is not valid JSON: ") + e.what());
      }
    }
  }
  return parse_config(file, flags);
}

json RunConfig::to_json() const {
  json terms = json::array();
  for (const auto& [t, v] : model.h_terms) terms.push_back({t, v});
  std::string grid_text;
  for (std::size_t i = 0; i < grid.size(); ++i) grid_text += (i ? "," : "") + axis_text(grid[i]);
  return json{
      {"command", to_string(command)},
      {"model",
       {{"type", model.kind == ModelKind::kXXZ ? "xxz" : "gross_neveu"},
        {"xxz", {{"L", model.xxz.L}, {"J", model.xxz.J}, {"Jz", model.xxz.Jz}, {"g_r", model.xxz.g_r}}},
        {"gross_neveu",
         {{"N", model.gn.N}, {"L", model.gn.L}, {"G", model.gn.G}, {"mu", model.gn.mu}, {"m", model.gn.m}}},
        {"h_terms", terms}}},
      {"grid", grid_text},
      {"beta", beta},
      {"correction", max_corrections == 0 ? json("off") : json(max_corrections)},
      {"scheme", carbm::to_string(scheme)},
      {"seed", seed},
      {"threads", threads},
      {"tolerance", tolerance},
      {"zero_threshold", zero_threshold},
      {"compare_oracle", compare_oracle},
      {"out", out.string()},
      {"cache_dir", cache_dir.string()},
  };
}

std::string config_hash(const RunConfig& config) {
  json j = config.to_json();
  j.erase("threads");
  j.erase("out");
  j.erase("cache_dir");
  return hex(fnv1a(j.dump()));
}

std::uint64_t component_seed(std::uint64_t master, const std::string& component) {
  std::uint64_t z = master ^ fnv1a(component);
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace carbm::cli
