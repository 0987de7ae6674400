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
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "schwinger/circuit.hpp"
#include "schwinger/simulator.hpp"

namespace schwinger {

/// Reconstruction handles at most this many qubits (4^q Pauli moments).
inline constexpr int kTomographyQubitCap = 6;

/// The 3^q labels over {X, Y, Z}, lexicographic with X < Y < Z.
std::vector<std::string> tomography_bases(int num_qubits);

struct TomographyDataset {
  int num_qubits = 0;
  int shots = 0;
  std::uint64_t seed = 0;
  std::vector<Counts> counts;  ///< ordered as tomography_bases

  /// Throws UsageError unless all 3^q bases are present with uniform shots.
  void validate() const;
};

/// Basis b (index in tomography_bases) is sampled with derive_seed(seed, b).
TomographyDataset tomography_measure(const StateVector& psi, int shots, std::uint64_t seed);
TomographyDataset tomography_measure(const DensityMatrix& rho, int shots, std::uint64_t seed);
TomographyDataset tomography_measure(const Circuit& circuit, const NoiseModel& noise, int shots,
                                     std::uint64_t seed);

/// ρ = 2^-q Σ_P ⟨P⟩ P with ⟨P⟩ averaged over every basis that reads P.
Eigen::MatrixXcd linear_inversion(const TomographyDataset& d);
/// Same from exact outcome distributions, one per tomography basis.
Eigen::MatrixXcd linear_inversion(std::span<const std::vector<double>> distributions,
                                  int num_qubits);
/// Exact Born distributions for every tomography basis.
std::vector<std::vector<double>> exact_tomography_probabilities(const DensityMatrix& rho);

/// Closest trace-one PSD matrix in Frobenius norm: eigenvalues below zero are
/// clipped and their mass spread evenly over the rest until none is negative.
DensityMatrix project_to_physical(const Eigen::MatrixXcd& h);

/// ⟨ψ|ρ|ψ⟩.
double fidelity(const DensityMatrix& rho, const StateVector& psi);

struct Bipartition {
  int num_qubits = 0;
  std::vector<int> subset_a;

  std::vector<int> subset_b() const;
  std::string name() const;  ///< e.g. "01|23"
  void validate() const;
};

/// (01|23), (02|13), (03|12).
std::vector<Bipartition> two_by_two_bipartitions();

/// Reduced state on `keep` (ascending order preserved).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
/// -tr ρ log2 ρ; eigenvalues below 1e-12 contribute zero.
double von_neumann_entropy(const DensityMatrix& rho);
/// S_A + S_B - S_AB in bits.
double qmi(const DensityMatrix& rho, const Bipartition& part);

using DensityMetric = std::function<double(const DensityMatrix&)>;

struct BootstrapResult {
  double mean = 0.0;
  double stddev = 0.0;
  std::vector<double> samples;
};

/// Parametric bootstrap: resample r draws a dataset from ρ with
/// derive_seed(seed, r), reconstructs and projects it, and evaluates every
/// metric on the same reconstruction. Requires resamples >= 2.
std::vector<BootstrapResult> bootstrap(const DensityMatrix& rho,
                                       std::span<const DensityMetric> metrics, int resamples,
                                       int shots, std::uint64_t seed);
BootstrapResult bootstrap(const DensityMatrix& rho, const DensityMetric& metric, int resamples,
                          int shots, std::uint64_t seed);

nlohmann::json dataset_json(const TomographyDataset& d);
/// {"dimension": d, "entries": [[re, im], ...]} in row-major order.
nlohmann::json density_json(const Eigen::MatrixXcd& m);
/// row, col, bitstring_row, bitstring_col, abs, real, imag.
void write_density_csv(std::ostream& os, const Eigen::MatrixXcd& m);

}  // namespace schwinger
