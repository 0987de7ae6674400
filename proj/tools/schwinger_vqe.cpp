// Copyright 2026 The schwinger-vqe Authors
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

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "schwinger/cli.hpp"
#include "schwinger/errors.hpp"

namespace {

namespace sc = schwinger::cli;

struct Flags {
  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool qasm = false;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_path, "JSON run configuration");
  sub->add_option("--preset", f.preset, "Benchmark preset (x = 16, massless, K = -14, 0 or 10)")
      ->check(CLI::IsMember({"Km14", "K0", "K10"}));
  sub->add_option("--seed", f.seed, "Master seed (overrides the config)");
  sub->add_option("--out", f.out, "Output directory (overrides the config)");
}

sc::RunConfig resolve(const Flags& f) {
  if (f.config_path.empty() && f.preset.empty()) {
    throw schwinger::UsageError("one of --config or --preset is required");
  }
  nlohmann::json j = f.preset.empty() ? nlohmann::json::object() : sc::preset_json(f.preset);
  if (!f.config_path.empty()) j.merge_patch(sc::load_json_file(f.config_path));
  if (f.seed) j["seed"] = *f.seed;
  if (!f.out.empty()) j["output_dir"] = f.out;
  return sc::parse_config(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-flavor lattice Schwinger model VQE toolkit"};
  app.require_subcommand(1);
  Flags flags;

  auto* ham = app.add_subcommand("hamiltonian", "Write W as Pauli text and its exact spectrum");
  auto* vqe = app.add_subcommand("vqe", "Run SPSA-driven VQE");
  auto* scan = app.add_subcommand("scan", "Phase diagram and critical points over K");
  auto* tomo = app.add_subcommand("tomography", "State tomography of the ansatz state");
  for (auto* s : {ham, vqe, scan, tomo}) add_common(s, flags);
  vqe->add_flag("--qasm", flags.qasm, "Also export the native circuit at theta_opt as OpenQASM 3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return sc::kExitConfigError;
  }

  try {
    const auto config = resolve(flags);
    std::vector<std::filesystem::path> written;
    if (ham->parsed()) {
      written = sc::cmd_hamiltonian(config);
    } else if (vqe->parsed()) {
      written = sc::cmd_vqe(config, {flags.qasm});
    } else if (scan->parsed()) {
      written = sc::cmd_scan(config);
    } else {
      written = sc::cmd_tomography(config);
    }
    for (const auto& p : written) std::cout << p.string() << '\n';
    return sc::kExitOk;
  } catch (const schwinger::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << '\n';
    return sc::kExitResourceError;
  } catch (const schwinger::UsageError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return sc::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return sc::kExitFailure;
  }
}
