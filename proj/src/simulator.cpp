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

#include "schwinger/simulator.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>

#include "schwinger/errors.hpp"
#include "schwinger/rng.hpp"

namespace schwinger {
namespace {

constexpr Complex kI{0.0, 1.0};

std::uint64_t qubit_bit(int num_qubits, int qubit) {
  return std::uint64_t{1} << (num_qubits - 1 - qubit);
}

void check_qubit(int num_qubits, int qubit) {
  if (qubit < 0 || qubit >= num_qubits) {
    throw UsageError("qubit index " + std::to_string(qubit) +
                     " out of range for register of " + std::to_string(num_qubits));
  }
}

// Applies `u` to the vector of length 2^n stored at data[k * stride].
void apply_single_strided(Complex* data, std::ptrdiff_t stride, int n,
                          const Eigen::Matrix2cd& u, int qubit) {
  const auto bit = qubit_bit(n, qubit);
  const auto dim = std::uint64_t{1} << n;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    Complex& a0 = data[static_cast<std::ptrdiff_t>(i) * stride];
    Complex& a1 = data[static_cast<std::ptrdiff_t>(i | bit) * stride];
    const Complex v0 = a0, v1 = a1;
    a0 = u(0, 0) * v0 + u(0, 1) * v1;
    a1 = u(1, 0) * v0 + u(1, 1) * v1;
  }
}

void apply_two_strided(Complex* data, std::ptrdiff_t stride, int n,
                       const Eigen::Matrix4cd& u, int q0, int q1) {
  const auto b0 = qubit_bit(n, q0);
  const auto b1 = qubit_bit(n, q1);
  const auto dim = std::uint64_t{1} << n;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & b0) || (i & b1)) continue;
    const std::array<std::uint64_t, 4> idx = {i, i | b1, i | b0, i | b0 | b1};
    std::array<Complex, 4> v;
    for (int k = 0; k < 4; ++k) v[k] = data[static_cast<std::ptrdiff_t>(idx[k]) * stride];
    for (int r = 0; r < 4; ++r) {
      Complex acc = 0;
      for (int k = 0; k < 4; ++k) acc += u(r, k) * v[k];
      data[static_cast<std::ptrdiff_t>(idx[r]) * stride] = acc;
    }
  }
}

Eigen::Matrix2cd basis_rotation(char letter) {
  const double s = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix2cd h;
  h << s, s, s, -s;
  switch (letter) {
    case 'X':
      return h;
    case 'Y': {
      Eigen::Matrix2cd sdg;
      sdg << 1, 0, 0, -kI;
      return h * sdg;
    }
    default:
      return Eigen::Matrix2cd::Identity();
  }
}

const Eigen::Matrix2cd& pauli_matrix(int p) {
  static const std::array<Eigen::Matrix2cd, 4> mats = [] {
    std::array<Eigen::Matrix2cd, 4> m;
    m[0] << 1, 0, 0, 1;
    m[1] << 0, 1, 1, 0;
    m[2] << 0, -kI, kI, 0;
    m[3] << 1, 0, 0, -1;
    return m;
  }();
  return mats[static_cast<std::size_t>(p)];
}

std::string bitstring(std::uint64_t index, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if (index & qubit_bit(n, i)) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

void check_basis(std::string_view basis, int n) {
  check_label(basis);
  if (static_cast<int>(basis.size()) != n) {
    throw UsageError("basis '" + std::string(basis) + "' does not match register of " +
                     std::to_string(n) + " qubits");
  }
}

// Parity of the outcome restricted to the label's support, as ±1.
double parity_sign(std::uint64_t outcome, std::uint64_t support) {
  return (std::popcount(outcome & support) & 1) ? -1.0 : 1.0;
}

std::uint64_t support_mask(std::string_view label) {
  std::uint64_t m = 0;
  const auto n = label.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != 'I') m |= std::uint64_t{1} << (n - 1 - i);
  }
  return m;
}

Counts counts_from_histogram(std::string_view basis, const std::vector<int>& hist,
                             int shots, std::uint64_t seed, int n) {
  Counts c;
  c.basis = std::string(basis);
  c.shots = shots;
  c.seed = seed;
  for (std::size_t i = 0; i < hist.size(); ++i) {
    if (hist[i] > 0) c.outcomes[bitstring(i, n)] = hist[i];
  }
  return c;
}

}  // namespace

// ---------------------------------------------------------------- StateVector

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits <= 0) throw UsageError("state register must have at least one qubit");
  if (num_qubits > kStateVectorQubitCap) {
    throw ResourceError("state vector register is capped at " +
                        std::to_string(kStateVectorQubitCap) + " qubits");
  }
  amplitudes_.assign(std::size_t{1} << num_qubits, Complex{});
  amplitudes_[0] = 1.0;
}

StateVector StateVector::basis_state(int num_qubits, std::uint64_t index) {
  StateVector s(num_qubits);
  if (index >= s.dimension()) throw UsageError("basis index out of range");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[index] = 1.0;
  return s;
}

StateVector StateVector::from_bitstring(std::string_view bits) {
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw UsageError("bitstring must contain only 0 and 1");
    index = (index << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return basis_state(static_cast<int>(bits.size()), index);
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const auto dim = amplitudes.size();
  if (dim < 2 || !std::has_single_bit(dim)) {
    throw UsageError("amplitude count must be a power of two >= 2");
  }
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  if (!(norm2 > 0.0)) throw UsageError("cannot normalize a zero vector");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amplitudes) a *= inv;
  StateVector s(std::countr_zero(dim));
  s.amplitudes_ = std::move(amplitudes);
  return s;
}

Eigen::VectorXcd StateVector::to_eigen() const {
  return Eigen::Map<const Eigen::VectorXcd>(amplitudes_.data(),
                                            static_cast<Eigen::Index>(amplitudes_.size()));
}

void StateVector::apply_single(const Eigen::Matrix2cd& u, int qubit) {
  check_qubit(num_qubits_, qubit);
  apply_single_strided(amplitudes_.data(), 1, num_qubits_, u, qubit);
}

void StateVector::apply_two(const Eigen::Matrix4cd& u, int q0, int q1) {
  check_qubit(num_qubits_, q0);
  check_qubit(num_qubits_, q1);
  if (q0 == q1) throw UsageError("two-qubit gate needs distinct qubits");
  apply_two_strided(amplitudes_.data(), 1, num_qubits_, u, q0, q1);
}

void StateVector::apply(const Gate& g) {
  if (g.is_barrier()) return;
  if (g.is_two_qubit()) {
    apply_two(two_qubit_matrix(g), g.q0, g.q1);
  } else {
    apply_single(single_qubit_matrix(g), g.q0);
  }
}

void StateVector::apply(const Circuit& c) {
  if (c.num_qubits != num_qubits_) {
    throw UsageError("circuit and state register sizes differ");
  }
  for (const auto& g : c.gates) apply(g);
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const auto& a : amplitudes_) n2 += std::norm(a);
  return std::sqrt(n2);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), p.begin(),
                 [](const Complex& a) { return std::norm(a); });
  return p;
}

StateVector apply_gate(StateVector state, const Gate& g) {
  state.apply(g);
  return state;
}

// -------------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits <= 0 || num_qubits > kDenseQubitCap) {
    throw ResourceError("density matrix register must have 1.." +
                        std::to_string(kDenseQubitCap) + " qubits");
  }
  const auto dim = Eigen::Index{1} << num_qubits;
  rho_ = Eigen::MatrixXcd::Zero(dim, dim);
  rho_(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m) : num_qubits_(0), rho_(std::move(m)) {
  const auto dim = static_cast<std::uint64_t>(rho_.rows());
  if (rho_.rows() != rho_.cols() || dim < 2 || !std::has_single_bit(dim)) {
    throw UsageError("density matrix must be square with power-of-two dimension");
  }
  num_qubits_ = std::countr_zero(dim);
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  const auto v = psi.to_eigen();
  return DensityMatrix(Eigen::MatrixXcd(v * v.adjoint()));
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  const auto dim = Eigen::Index{1} << num_qubits;
  return DensityMatrix(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(dim, dim) /
                                        static_cast<double>(dim)));
}

void DensityMatrix::apply_single(const Eigen::Matrix2cd& u, int qubit) {
  check_qubit(num_qubits_, qubit);
  const auto dim = rho_.rows();
  // ρ <- U ρ: columns are contiguous in Eigen's column-major storage.
  for (Eigen::Index c = 0; c < dim; ++c) {
    apply_single_strided(rho_.data() + c * dim, 1, num_qubits_, u, qubit);
  }
  // ρ <- ρ U†: each row transforms with conj(U).
  const Eigen::Matrix2cd uc = u.conjugate();
  for (Eigen::Index r = 0; r < dim; ++r) {
    apply_single_strided(rho_.data() + r, dim, num_qubits_, uc, qubit);
  }
}

void DensityMatrix::apply_two(const Eigen::Matrix4cd& u, int q0, int q1) {
  check_qubit(num_qubits_, q0);
  check_qubit(num_qubits_, q1);
  if (q0 == q1) throw UsageError("two-qubit gate needs distinct qubits");
  const auto dim = rho_.rows();
  for (Eigen::Index c = 0; c < dim; ++c) {
    apply_two_strided(rho_.data() + c * dim, 1, num_qubits_, u, q0, q1);
  }
  const Eigen::Matrix4cd uc = u.conjugate();
  for (Eigen::Index r = 0; r < dim; ++r) {
    apply_two_strided(rho_.data() + r, dim, num_qubits_, uc, q0, q1);
  }
}

void DensityMatrix::apply(const Gate& g) {
  if (g.is_barrier()) return;
  if (g.is_two_qubit()) {
    apply_two(two_qubit_matrix(g), g.q0, g.q1);
  } else {
    apply_single(single_qubit_matrix(g), g.q0);
  }
}

void DensityMatrix::depolarize_two(double p, int q0, int q1) {
  if (p == 0.0) return;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rho_.rows(), rho_.cols());
  const Eigen::MatrixXcd original = rho_;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      rho_ = original;
      apply_single(pauli_matrix(a), q0);
      apply_single(pauli_matrix(b), q1);
      acc += rho_;
    }
  }
  rho_ = (1.0 - p) * original + (p / 16.0) * acc;
}

void DensityMatrix::bit_flip(double p, int qubit) {
  if (p == 0.0) return;
  const Eigen::MatrixXcd original = rho_;
  apply_single(pauli_matrix(1), qubit);
  rho_ = (1.0 - p) * original + p * rho_;
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

std::vector<double> DensityMatrix::probabilities() const {
  std::vector<double> p(static_cast<std::size_t>(rho_.rows()));
  for (Eigen::Index i = 0; i < rho_.rows(); ++i) {
    p[static_cast<std::size_t>(i)] = rho_(i, i).real();
  }
  return p;
}

void DensityMatrix::validate(double tol) const {
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw UsageError("density matrix is not Hermitian");
  }
  if (std::abs(rho_.trace() - Complex{1.0}) > tol) {
    throw UsageError("density matrix trace differs from 1");
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9) {
    throw UsageError("density matrix has a negative eigenvalue");
  }
}

bool DensityMatrix::is_physical(double tol) const {
  try {
    validate(tol);
    return true;
  } catch (const UsageError&) {
    return false;
  }
}

// --------------------------------------------------------------- expectations

double pauli_expectation(const StateVector& state, std::string_view label) {
  if (static_cast<int>(label.size()) != state.num_qubits()) {
    throw UsageError("observable and state register sizes differ");
  }
  const auto m = masks_of(label);
  const auto amps = state.amplitudes();
  Complex acc = 0;
  for (std::uint64_t b = 0; b < amps.size(); ++b) {
    acc += std::conj(amps[b ^ m.x_mask]) * m.phase(b) * amps[b];
  }
  return acc.real();
}

double expectation(const StateVector& state, const PauliSum& obs) {
  if (obs.num_qubits() != state.num_qubits()) {
    throw UsageError("observable and state register sizes differ");
  }
  if (!obs.is_hermitian(1e-10)) throw UsageError("observable is not Hermitian");
  double e = 0.0;
  for (const auto& [label, c] : obs.terms()) e += c.real() * pauli_expectation(state, label);
  return e;
}

double expectation(const DensityMatrix& rho, const PauliSum& obs) {
  if (obs.num_qubits() != rho.num_qubits()) {
    throw UsageError("observable and state register sizes differ");
  }
  if (!obs.is_hermitian(1e-10)) throw UsageError("observable is not Hermitian");
  const auto& m = rho.matrix();
  double e = 0.0;
  for (const auto& [label, c] : obs.terms()) {
    // tr(ρP) = Σ_b <b|ρ P|b> = Σ_b ρ(b, b^x) phase(b)
    const auto masks = masks_of(label);
    Complex acc = 0;
    for (Eigen::Index b = 0; b < m.rows(); ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      acc += m(b, static_cast<Eigen::Index>(ub ^ masks.x_mask)) * masks.phase(ub);
    }
    e += c.real() * acc.real();
  }
  return e;
}

// ------------------------------------------------------------------- sampling

void to_json(nlohmann::json& j, const Counts& c) {
  j = nlohmann::json{{"basis", c.basis}, {"shots", c.shots}, {"seed", c.seed},
                     {"outcomes", c.outcomes}};
}

void from_json(const nlohmann::json& j, Counts& c) {
  j.at("basis").get_to(c.basis);
  j.at("shots").get_to(c.shots);
  j.at("seed").get_to(c.seed);
  j.at("outcomes").get_to(c.outcomes);
}

std::vector<double> basis_probabilities(const StateVector& state, std::string_view basis) {
  check_basis(basis, state.num_qubits());
  StateVector rotated = state;
  for (int q = 0; q < state.num_qubits(); ++q) {
    const char letter = basis[static_cast<std::size_t>(q)];
    if (letter == 'X' || letter == 'Y') rotated.apply_single(basis_rotation(letter), q);
  }
  return rotated.probabilities();
}

std::vector<double> basis_probabilities(const DensityMatrix& rho, std::string_view basis) {
  check_basis(basis, rho.num_qubits());
  DensityMatrix rotated = rho;
  for (int q = 0; q < rho.num_qubits(); ++q) {
    const char letter = basis[static_cast<std::size_t>(q)];
    if (letter == 'X' || letter == 'Y') rotated.apply_single(basis_rotation(letter), q);
  }
  return rotated.probabilities();
}

std::vector<int> sample_histogram(std::span<const double> probabilities, int shots,
                                  std::uint64_t seed) {
  if (shots <= 0) throw UsageError("shots must be positive");
  std::vector<double> cdf(probabilities.size());
  double total = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    total += std::max(0.0, probabilities[i]);
    cdf[i] = total;
  }
  if (!(total > 0.0)) throw UsageError("outcome distribution has no mass");
  std::vector<int> hist(probabilities.size(), 0);
  Rng rng(seed);
  for (int s = 0; s < shots; ++s) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    // Skip zero-probability bins sharing the same cumulative value.
    while (it != cdf.begin() && probabilities[static_cast<std::size_t>(it - cdf.begin())] <= 0.0) --it;
    ++hist[static_cast<std::size_t>(it - cdf.begin())];
  }
  return hist;
}

Counts sample_pauli_basis(const StateVector& state, std::string_view basis, int shots,
                          std::uint64_t seed) {
  if (shots <= 0) throw UsageError("shots must be positive");
  check_basis(basis, state.num_qubits());
  const int n = state.num_qubits();
  if (basis.find_first_not_of('I') == std::string_view::npos) {
    Counts c{std::string(basis), shots, {}, seed};
    c.outcomes[std::string(static_cast<std::size_t>(n), '0')] = shots;
    return c;
  }
  const auto probs = basis_probabilities(state, basis);
  return counts_from_histogram(basis, sample_histogram(probs, shots, seed), shots, seed, n);
}

Counts sample_pauli_basis(const DensityMatrix& rho, std::string_view basis, int shots,
                          std::uint64_t seed) {
  if (shots <= 0) throw UsageError("shots must be positive");
  check_basis(basis, rho.num_qubits());
  const int n = rho.num_qubits();
  if (basis.find_first_not_of('I') == std::string_view::npos) {
    Counts c{std::string(basis), shots, {}, seed};
    c.outcomes[std::string(static_cast<std::size_t>(n), '0')] = shots;
    return c;
  }
  const auto probs = basis_probabilities(rho, basis);
  return counts_from_histogram(basis, sample_histogram(probs, shots, seed), shots, seed, n);
}

double expectation_from_counts(const Counts& counts, std::string_view label) {
  if (label.size() != counts.basis.size()) {
    throw UsageError("label and counts basis lengths differ");
  }
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (label[i] != 'I' && label[i] != counts.basis[i]) {
      throw UsageError("label '" + std::string(label) + "' is not readable from basis '" +
                       counts.basis + "'");
    }
  }
  const auto support = support_mask(label);
  const auto n = label.size();
  double acc = 0.0;
  for (const auto& [bits, k] : counts.outcomes) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) idx = (idx << 1) | static_cast<std::uint64_t>(bits[i] == '1');
    acc += parity_sign(idx, support) * k;
  }
  return acc / counts.shots;
}

double expectation_from_distribution(std::span<const double> distribution,
                                     std::string_view label) {
  const auto support = support_mask(label);
  double acc = 0.0;
  for (std::size_t i = 0; i < distribution.size(); ++i) {
    acc += parity_sign(i, support) * distribution[i];
  }
  return acc;
}

// ---------------------------------------------------------------------- noise

void NoiseModel::validate() const {
  if (!(p_twoqubit >= 0.0 && p_twoqubit <= 1.0) || !(p_spam >= 0.0 && p_spam <= 1.0)) {
    throw UsageError("noise probabilities must lie in [0, 1]");
  }
}

NoiseModel NoiseModel::from_fidelities(double two_qubit_fidelity, double spam_error) {
  NoiseModel m{4.0 / 3.0 * (1.0 - two_qubit_fidelity), spam_error};
  m.validate();
  return m;
}

DensityMatrix run_noisy(const Circuit& circuit, const NoiseModel& noise,
                        const NoisyMode& mode) {
  circuit.validate();
  noise.validate();
  const int n = circuit.num_qubits;

  if (std::holds_alternative<ExactDensity>(mode)) {
    if (n > kExactDensityQubitCap) {
      throw ResourceError("exact density simulation is capped at " +
                          std::to_string(kExactDensityQubitCap) + " qubits");
    }
    DensityMatrix rho(n);
    for (int q = 0; q < n; ++q) rho.bit_flip(noise.p_spam, q);
    for (const auto& g : circuit.gates) {
      rho.apply(g);
      if (g.is_two_qubit()) rho.depolarize_two(noise.p_twoqubit, g.q0, g.q1);
    }
    for (int q = 0; q < n; ++q) rho.bit_flip(noise.p_spam, q);
    return rho;
  }

  const auto& traj = std::get<Trajectories>(mode);
  if (traj.count <= 0) throw UsageError("trajectory count must be positive");
  if (n > kDenseQubitCap) throw ResourceError("trajectory mode beyond dense cap");
  const auto dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
  for (int t = 0; t < traj.count; ++t) {
    Rng rng(derive_seed(traj.seed, static_cast<std::uint64_t>(t)));
    StateVector psi(n);
    for (int q = 0; q < n; ++q) {
      if (rng.bernoulli(noise.p_spam)) psi.apply_single(pauli_matrix(1), q);
    }
    for (const auto& g : circuit.gates) {
      psi.apply(g);
      if (g.is_two_qubit() && rng.bernoulli(noise.p_twoqubit)) {
        const auto k = rng.below(16);
        psi.apply_single(pauli_matrix(static_cast<int>(k / 4)), g.q0);
        psi.apply_single(pauli_matrix(static_cast<int>(k % 4)), g.q1);
      }
    }
    for (int q = 0; q < n; ++q) {
      if (rng.bernoulli(noise.p_spam)) psi.apply_single(pauli_matrix(1), q);
    }
    const auto v = psi.to_eigen();
    acc += v * v.adjoint();
  }
  return DensityMatrix(Eigen::MatrixXcd(acc / static_cast<double>(traj.count)));
}

}  // namespace schwinger
