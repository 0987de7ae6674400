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

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "json.hpp"

#include "schwinger/model.hpp"
#include "schwinger/pauli.hpp"
#include "schwinger/simulator.hpp"
#include "schwinger/vqe.hpp"

namespace schwinger {

/// Restricts diagonalization to the eigenspace op = eigenvalue of a diagonal
/// operator.
struct SectorConstraint {
  PauliSum op;
  double eigenvalue = 0.0;
};

/// Q_tot = 0.
SectorConstraint charge_neutral_sector(const ModelParams& params);

struct GroundState {
  double energy = 0.0;
  StateVector state{1};
  /// E1 - E0 inside the sector; 0 for a one-dimensional sector.
  double gap = 0.0;
};

/// Dense diagonalization of `h`. Throws ResourceError beyond `cap` qubits and
/// UsageError for a non-diagonal sector operator or an empty sector.
GroundState exact_ground_state(const PauliSum& h,
                               const std::optional<SectorConstraint>& sector = std::nullopt,
                               int cap = kDenseQubitCap);

/// All eigenvalues in ascending order, optionally restricted to a sector.
std::vector<double> exact_spectrum(const PauliSum& h,
                                   const std::optional<SectorConstraint>& sector = std::nullopt,
                                   int cap = kDenseQubitCap);

struct PhasePoint {
  double K = 0.0;
  std::vector<double> nu;
  double energy = 0.0;
  double energy_std_error = 0.0;
  double energy_exact = 0.0;
  std::vector<double> particle_numbers;
  std::vector<int> rounded_numbers;
};

/// E - nu . N.
double phase_offset(double energy, std::span<const double> nu, std::span<const int> n_rounded);

/// (E_min(p1) - E_min(p2)) / (N0(p2) - N0(p1)) / (2 sqrt(x)). Symmetric in
/// its arguments. Throws DegeneratePhasesError when the rounded N0 agree.
double critical_point(const PhasePoint& p1, const PhasePoint& p2, double x);

/// Standard error of critical_point from the two energy standard errors.
double critical_point_uncertainty(const PhasePoint& p1, const PhasePoint& p2, double x);

struct CriticalPoint {
  double K_left = 0.0;
  double K_right = 0.0;
  int n0_left = 0;
  int n0_right = 0;
  double K_crit = 0.0;
  double uncertainty = 0.0;
};

/// One entry per adjacent pair (sorted by K) whose rounded N0 differ.
std::vector<CriticalPoint> critical_points(std::span<const PhasePoint> points, double x);

/// Nearest integers, then repaired one unit at a time on the entry with the
/// largest rounding residual until the total equals neutral_particle_count.
std::vector<int> round_particle_numbers(std::span<const double> measured,
                                        const ModelParams& params);

struct ExactScan {};
struct VqeScan {
  SpsaConfig spsa;
  Backend backend;
  /// Shots for the all-Z readout of the particle numbers; ignored on the
  /// exact backend.
  int particle_shots = 100;
};
using ScanMode = std::variant<ExactScan, VqeScan>;

/// For each K (sorted ascending): nu_0 = nu_1 + 2 sqrt(x) K, energy and
/// particle numbers from the oracle or from VQE at θ_opt.
std::vector<PhasePoint> scan(const ModelParams& base, std::span<const double> K_values,
                             const ScanMode& mode);

nlohmann::json to_json(const CriticalPoint& c);

}  // namespace schwinger
