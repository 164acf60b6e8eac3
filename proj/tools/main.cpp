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

#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "carbm/cartan.hpp"
#include "run_config.hpp"

namespace {

int fail(const std::string& kind, const std::string& key, const std::string& message, int code) {
  nlohmann::json err{{"error", {{"kind", kind}, {"key", key}, {"message", message}}}};
  std::cerr << err.dump() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-depth thermal state preparation: decompositions, state preparation and scans."};
  app.require_subcommand(1, 1);

  std::string config_path, out, correction, scheme, grid;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  double beta = 0;
  for (const char* name : {"decompose", "thermal-state", "lee-yang", "fisher", "gn-scan", "validate"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--out", out, "Output directory");
    sub->add_option("--seed", seed, "Master seed");
    sub->add_option("--threads", threads, "Worker threads (0 = all cores)");
    sub->add_option("--correction", correction, "off, or the maximum number of corrected layers");
    sub->add_option("--scheme", scheme, "standard or correctable")->check(CLI::IsMember({"standard", "correctable"}));
    sub->add_option("--grid", grid, "a1:lo:hi:steps,a2:lo:hi:steps");
    sub->add_option("--beta", beta, "Inverse temperature");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", "", e.what(), 2);
  }

  CLI::App* sub = app.get_subcommands().front();
  nlohmann::json flags{{"command", sub->get_name()}};
  if (sub->count("--out")) flags["out"] = out;
  if (sub->count("--seed")) flags["seed"] = seed;
  if (sub->count("--threads")) flags["threads"] = threads;
  if (sub->count("--correction")) flags["correction"] = correction;
  if (sub->count("--scheme")) flags["scheme"] = scheme;
  if (sub->count("--grid")) flags["grid"] = grid;
  if (sub->count("--beta")) flags["beta"] = beta;

  try {
    const auto config = carbm::cli::parse_config_file(config_path, flags);
    const auto result = carbm::cli::dispatch(config);
    std::cout << result.summary << std::endl;
    return result.exit_code;
  } catch (const carbm::cli::ConfigError& e) {
    return fail("config", e.key(), e.what(), 2);
  } catch (const carbm::DimensionExceeded& e) {
    return fail("dimension_exceeded", "", e.what(), 1);
  } catch (const std::exception& e) {
    return fail("runtime", "", e.what(), 1);
  }
}
