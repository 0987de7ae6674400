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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "schwinger/model.hpp"
#include "schwinger/simulator.hpp"
#include "schwinger/vqe.hpp"

namespace schwinger::cli {

inline constexpr int kSchemaVersion = 1;

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitResourceError = 3;

struct ModelConfig {
  int num_sites = 2;
  int num_flavors = 2;
  double x = 16.0;
  std::vector<double> m_over_g{0.0, 0.0};
  std::vector<double> kappa_over_g{0.0, 0.0};
  /// kappa_0/g - kappa_1/g; overrides kappa_0 when set.
  std::optional<double> K;
};

struct BackendConfig {
  std::string kind = "exact";  ///< exact | sampled | noisy
  NoiseModel noise{0.01, 0.005};
};

struct ScanConfig {
  std::vector<double> K_values{-14.0, 0.0, 10.0};
  std::string mode = "exact";  ///< exact | vqe
  int particle_shots = 100;
};

struct TomographyConfig {
  int shots = 400;
  int bootstrap_resamples = 200;
  bool exact_probabilities = false;
  std::string source = "pure";  ///< pure | noisy
  /// Ansatz angles; the optimum of an exact-backend VQE run when unset.
  std::optional<std::vector<double>> theta;
};

struct RunConfig {
  ModelConfig model;
  BackendConfig backend;
  SpsaConfig spsa;
  ScanConfig scan;
  TomographyConfig tomography;
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  /// Dimensionless parameters, with K applied when present.
  ModelParams model_params() const;
  /// Parameters before K is applied (for scans).
  ModelParams base_params() const;
  /// Backend with its seed derived from the master seed.
  Backend make_backend() const;
  /// SPSA settings with the seed derived from the master seed.
  SpsaConfig spsa_config() const;
};

/// Benchmark settings: x = 16, m/g = 0, kappa_1/g = 0 and the given K.
/// Names: Km14, K0, K10. Throws UsageError for anything else.
nlohmann::json preset_json(const std::string& name);

/// Strict parse: unknown keys, wrong types and out-of-range values throw
/// UsageError. Missing keys keep their defaults.
RunConfig parse_config(const nlohmann::json& j);
nlohmann::json config_json(const RunConfig& c);

/// Reads JSON from `path`; throws UsageError when unreadable or malformed.
nlohmann::json load_json_file(const std::filesystem::path& path);

struct CommandOptions {
  bool export_qasm = false;
};

/// Each command writes into config.output_dir and returns the files written.
std::vector<std::filesystem::path> cmd_hamiltonian(const RunConfig& config);
std::vector<std::filesystem::path> cmd_vqe(const RunConfig& config,
                                           const CommandOptions& options = {});
std::vector<std::filesystem::path> cmd_scan(const RunConfig& config);
std::vector<std::filesystem::path> cmd_tomography(const RunConfig& config);

}  // namespace schwinger::cli
