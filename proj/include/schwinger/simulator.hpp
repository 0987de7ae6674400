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

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

#include "schwinger/circuit.hpp"
#include "schwinger/pauli.hpp"

namespace schwinger {

inline constexpr int kStateVectorQubitCap = 24;

/// Pure state on q qubits. Amplitude index bit (q-1-i) holds qubit i, so
/// the bitstring q0 q1 ... reads most-significant first.
class StateVector {
 public:
  /// |0...0>. Throws ResourceError beyond kStateVectorQubitCap.
  explicit StateVector(int num_qubits);

  static StateVector basis_state(int num_qubits, std::uint64_t index);
  /// e.g. "0101" -> |0101>.
  static StateVector from_bitstring(std::string_view bits);
  /// Normalizes the given amplitudes; throws UsageError on zero norm or a
  /// length that is not a power of two.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex amplitude(std::uint64_t index) const { return amplitudes_.at(index); }
  Eigen::VectorXcd to_eigen() const;

  void apply(const Gate& g);
  void apply(const Circuit& c);
  void apply_single(const Eigen::Matrix2cd& u, int qubit);
  void apply_two(const Eigen::Matrix4cd& u, int q0, int q1);

  double norm() const;
  std::vector<double> probabilities() const;

 private:
  int num_qubits_;
  std::vector<Complex> amplitudes_;
};

StateVector apply_gate(StateVector state, const Gate& g);

/// Mixed state. Invariants (checked by validate): Hermitian, unit trace and
/// no eigenvalue below -1e-9.
class DensityMatrix {
 public:
  explicit DensityMatrix(int num_qubits);  // |0...0><0...0|
  /// Wraps `m` without checks beyond shape.
  explicit DensityMatrix(Eigen::MatrixXcd m);

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  const Eigen::MatrixXcd& matrix() const { return rho_; }

  void apply(const Gate& g);
  void apply_single(const Eigen::Matrix2cd& u, int qubit);
  void apply_two(const Eigen::Matrix4cd& u, int q0, int q1);
  /// ρ -> (1-p) ρ + p/16 Σ_{P in 2-qubit Paulis} P ρ P.
  void depolarize_two(double p, int q0, int q1);
  /// ρ -> (1-p) ρ + p X ρ X on one qubit.
  void bit_flip(double p, int qubit);

  Complex trace() const { return rho_.trace(); }
  double purity() const;
  std::vector<double> probabilities() const;
  /// Throws UsageError when an invariant fails.
  void validate(double tol = 1e-10) const;
  bool is_physical(double tol = 1e-10) const;

 private:
  int num_qubits_;
  Eigen::MatrixXcd rho_;
};

/// ⟨ψ|O|ψ⟩ evaluated term by term without building the dense matrix.
/// Throws UsageError for non-Hermitian `obs` or mismatched register sizes.
double expectation(const StateVector& state, const PauliSum& obs);
double expectation(const DensityMatrix& rho, const PauliSum& obs);
/// ⟨ψ|P|ψ⟩ for one label (real part).
double pauli_expectation(const StateVector& state, std::string_view label);

/// Sampled measurement outcomes in one Pauli basis.
struct Counts {
  std::string basis;
  int shots = 0;
  std::map<std::string, int> outcomes;  ///< bitstring (q0 first) -> count
  std::uint64_t seed = 0;

  friend bool operator==(const Counts&, const Counts&) = default;
};

void to_json(nlohmann::json& j, const Counts& c);
void from_json(const nlohmann::json& j, Counts& c);

/// Born probabilities after rotating each qubit into the basis letter's
/// eigenbasis (X, Y -> Z; I and Z untouched). Outcome bit 0 is the +1
/// eigenvalue.
std::vector<double> basis_probabilities(const StateVector& state, std::string_view basis);
std::vector<double> basis_probabilities(const DensityMatrix& rho, std::string_view basis);

/// Draws `shots` outcomes from `probabilities` by inverse-CDF sampling.
std::vector<int> sample_histogram(std::span<const double> probabilities, int shots,
                                  std::uint64_t seed);

/// Measures `basis` with `shots` repetitions. An all-identity basis returns
/// every shot on the all-zero bitstring. Throws UsageError for shots <= 0.
Counts sample_pauli_basis(const StateVector& state, std::string_view basis, int shots,
                          std::uint64_t seed);
Counts sample_pauli_basis(const DensityMatrix& rho, std::string_view basis, int shots,
                          std::uint64_t seed);

/// Empirical mean of the ±1 eigenvalue of `label` over the shots in
/// `counts`. `label` must be readable from the counts' basis.
double expectation_from_counts(const Counts& counts, std::string_view label);
/// Same, from an outcome distribution indexed like basis_probabilities.
double expectation_from_distribution(std::span<const double> distribution,
                                     std::string_view label);

/// Noise strengths: two-qubit depolarizing probability applied after each
/// two-qubit gate, and a bit-flip probability applied to every qubit at
/// preparation and again before readout.
struct NoiseModel {
  double p_twoqubit = 0.0;
  double p_spam = 0.0;

  void validate() const;
  /// p_twoqubit such that the depolarizing channel's average gate fidelity
  /// equals `two_qubit_fidelity`: F_avg = 1 - 3p/4 for d = 4.
  static NoiseModel from_fidelities(double two_qubit_fidelity, double spam_error);
  bool is_noiseless() const { return p_twoqubit == 0.0 && p_spam == 0.0; }
};

struct ExactDensity {};
struct Trajectories {
  int count = 1000;
  std::uint64_t seed = 0;
};
using NoisyMode = std::variant<ExactDensity, Trajectories>;

inline constexpr int kExactDensityQubitCap = 8;

/// Runs `circuit` from |0...0> under `noise`. Exact mode evolves the density
/// matrix (q <= 8); trajectory mode averages stochastic pure-state runs.
DensityMatrix run_noisy(const Circuit& circuit, const NoiseModel& noise, const NoisyMode& mode);

}  // namespace schwinger
