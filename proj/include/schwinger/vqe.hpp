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
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <variant>
#include <vector>

#include "json.hpp"

#include "schwinger/model.hpp"
#include "schwinger/pauli.hpp"
#include "schwinger/simulator.hpp"

namespace schwinger {

struct ExactBackend {};
/// Noiseless shot sampling.
struct SampledBackend {
  std::uint64_t seed = 0;
};
/// Exact density-matrix evolution of the native circuit under `noise`,
/// followed by shot sampling.
struct NoisyBackend {
  NoiseModel noise;
  std::uint64_t seed = 0;
};
using Backend = std::variant<ExactBackend, SampledBackend, NoisyBackend>;

std::string backend_name(const Backend& b);

struct EnergyEstimate {
  double energy = 0.0;
  double std_error = 0.0;
};

enum class MeasurementScheme {
  Grouped,     ///< one basis per qubitwise-commuting group
  Individual,  ///< one basis per Pauli string
};

/// Energy of the ansatz state for one Hamiltonian. Bases and their members
/// are fixed at construction; each estimate draws `shots` samples per basis.
class EnergyEstimator {
 public:
  EnergyEstimator(ModelParams params, int layers = 1,
                  MeasurementScheme scheme = MeasurementScheme::Grouped);

  const ModelParams& params() const { return params_; }
  const PauliSum& hamiltonian() const { return hamiltonian_; }
  const std::vector<MeasurementGroup>& groups() const { return groups_; }
  int layers() const { return layers_; }

  /// Exact ⟨W⟩ at theta.
  double exact(std::span<const double> theta) const;

  /// Estimate on `backend`. `seed` selects the sample stream and overrides
  /// the backend's own seed; shots must be >= 1 unless the backend is exact.
  /// The standard error is sqrt(Σ_g var_g / shots) where var_g is the sample
  /// variance of the per-shot value Σ_{P in g} c_P (±1).
  EnergyEstimate estimate(std::span<const double> theta, int shots, const Backend& backend,
                          std::uint64_t seed) const;

 private:
  ModelParams params_;
  int layers_;
  PauliSum hamiltonian_;
  std::vector<MeasurementGroup> groups_;
};

/// One-shot convenience wrapper using the backend's seed.
EnergyEstimate estimate_energy(std::span<const double> theta, const ModelParams& params,
                               int shots, const Backend& backend);

enum class SpsaMode {
  TwoSided,  ///< gradient_resamplings pairs E(θ+cΔ), E(θ-cΔ)
  OneSided,  ///< gradient_resamplings probes E(θ+cΔ) against the shared record E(θ)
};

struct SpsaConfig {
  int iterations = 150;
  double c0 = 0.1;
  /// Step constant; calibrated from the first evaluations when unset.
  std::optional<double> a0;
  double alpha = 0.602;
  double gamma = 0.101;
  /// Stability constant A; iterations / 10 when unset.
  std::optional<double> stability;
  int gradient_resamplings = 3;
  int eval_shots = 100;
  int calibration_probes = 10;
  SpsaMode mode = SpsaMode::TwoSided;
  std::uint64_t seed = 0;
  int layers = 1;

  /// Three one-sided probes plus the record evaluation per iteration, i.e.
  /// four parameter vectors times five bases.
  static SpsaConfig paper_faithful();

  void validate() const;
  double stability_constant() const;
  double gain_a(double a0, int k) const;
  double gain_c(int k) const;
};

struct SpsaCalibration {
  double a0 = 0.0;
  double mean_abs_delta = 0.0;
  bool fallback = false;
};

/// Used when every calibration probe returns the same energy.
inline constexpr double kSpsaFallbackA0 = 0.1;
/// Target size of the first update, radians per parameter.
inline constexpr double kSpsaTargetStep = 0.1;

using CostFunction = std::function<double(std::span<const double>)>;

/// Estimates mean |f(θ0 + c0 Δ) - f(θ0 - c0 Δ)| over `probes` Rademacher Δ
/// and picks a0 so the first update a0/(1+A)^alpha * |ΔE|/(2 c0) equals
/// kSpsaTargetStep. Requires probes >= 10.
SpsaCalibration spsa_calibrate(const CostFunction& f, std::span<const double> theta0,
                               double c0, int probes, std::uint64_t seed, double stability,
                               double alpha);

struct IterationRecord {
  int iteration = 0;
  std::vector<double> theta;
  double energy_measured = 0.0;
  double std_error = 0.0;
  double energy_simulated = 0.0;
};

struct ConvergenceStats {
  double delta_w = 0.0;      ///< mean(measured) - E_exact
  double spread_w = 0.0;     ///< sample std of measured
  double delta_w_sim = 0.0;  ///< mean(simulated) - E_exact
  double spread_w_sim = 0.0;
  double mean_std_error = 0.0;
  int window = 0;
};

inline constexpr double kDefaultConvergenceWindow = 0.25;

/// Statistics over the trailing ceil(window_fraction * n) records. Throws
/// UsageError when that window holds fewer than two records or the fraction
/// lies outside (0, 1].
ConvergenceStats convergence_stats(std::span<const IterationRecord> records,
                                   double window_fraction, double exact_energy);

struct VqeResult {
  std::vector<IterationRecord> records;
  std::vector<double> theta_opt;
  double energy_min_measured = 0.0;
  double energy_min_simulated = 0.0;
  double energy_exact = 0.0;
  ConvergenceStats stats;
  SpsaCalibration calibration;
  /// False when fewer than two records were available for statistics.
  bool has_stats = false;
};

/// Generic SPSA loop. Records the initial point and one measurement after
/// each update. `measure` returns (energy, stderr); `simulate` the exact
/// value. The k-th call to `measure` receives task id k.
using MeasureFunction = std::function<EnergyEstimate(std::span<const double>, std::uint64_t)>;
std::vector<IterationRecord> spsa_minimize(const SpsaConfig& config,
                                           std::span<const double> theta0,
                                           const MeasureFunction& measure,
                                           const CostFunction& simulate,
                                           SpsaCalibration* calibration = nullptr);

/// VQE on the ansatz for `params`: θ0 uniform in [0, 2π), SPSA with the
/// backend providing the measured energies. θ_opt is the record with the
/// lowest measured energy; E_min_simulated is the lowest simulated energy.
VqeResult spsa_run(const SpsaConfig& config, const ModelParams& params, const Backend& backend);

/// Columns: iteration, theta_0..theta_{P-1}, E_measured, stderr, E_simulated.
void write_iterations_csv(std::ostream& os, const VqeResult& result);
nlohmann::json summary_json(const VqeResult& result);

}  // namespace schwinger
