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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "schwinger/ansatz.hpp"
#include "schwinger/errors.hpp"
#include "schwinger/model.hpp"
#include "schwinger/phase.hpp"
#include "schwinger/rng.hpp"
#include "schwinger/simulator.hpp"

using namespace schwinger;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector random_state(Rng& rng, int n) {
  std::vector<Complex> a(std::size_t{1} << n);
  for (auto& v : a) v = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return StateVector::from_amplitudes(std::move(a));
}

Gate random_gate(Rng& rng, int n) {
  const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
  if (j >= i) ++j;
  const double t = rng.uniform(-2 * kPi, 2 * kPi);
  switch (rng.below(5)) {
    case 0: return Gate::r(i, t, rng.uniform(0, 2 * kPi));
    case 1: return Gate::rz(i, t);
    case 2: return Gate::x(i);
    case 3: return Gate::uxy(i, j, t);
    default: return Gate::zz(i, j, kPi / 2);
  }
}

std::vector<double> sample_theta(Rng& rng, int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (auto& v : t) v = rng.uniform(0, 2 * kPi);
  return t;
}

const std::vector<double> kZero{0.0, 0.0};

}  // namespace

TEST(gates, rz_changes_phase_only) {
  auto psi = StateVector(1);
  psi.apply(Gate::rz(0, 1.234));
  EXPECT_NEAR(psi.probabilities()[0], 1.0, 1e-15);
  EXPECT_NEAR(std::abs(psi.amplitude(0)), 1.0, 1e-15);
}

TEST(gates, uxy_quarter_turn_swaps_with_phase) {
  auto psi = StateVector::from_bitstring("01");
  psi.apply(Gate::uxy(0, 1, kPi / 2));
  EXPECT_LT(std::abs(psi.amplitude(2) - Complex(0, -1)), 1e-15);
  EXPECT_LT(std::abs(psi.amplitude(1)), 1e-15);
}

TEST(gates, uxy_fixes_empty_and_full) {
  for (double t : {0.3, 1.7, -2.9}) {
    auto a = StateVector::from_bitstring("00");
    a.apply(Gate::uxy(0, 1, t));
    EXPECT_LT(std::abs(a.amplitude(0) - 1.0), 1e-15);
    auto b = StateVector::from_bitstring("11");
    b.apply(Gate::uxy(0, 1, t));
    EXPECT_LT(std::abs(b.amplitude(3) - 1.0), 1e-15);
  }
}

TEST(gates, uxy_matches_generator_exponential) {
  const double t = 0.83;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      oracle::label_matrix("XX") + oracle::label_matrix("YY"));
  const Eigen::MatrixXcd expected =
      es.eigenvectors() *
      (es.eigenvalues().cast<Complex>() * Complex(0, -t / 2)).array().exp().matrix().asDiagonal() *
      es.eigenvectors().adjoint();
  EXPECT_LT((Eigen::MatrixXcd(two_qubit_matrix(Gate::uxy(0, 1, t))) - expected)
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
}

TEST(gates, zz_and_r_match_definitions) {
  const double t = 0.61, phi = 1.1;
  const Eigen::Matrix4cd zz = two_qubit_matrix(Gate::zz(0, 1, t));
  for (int b = 0; b < 4; ++b) {
    const double parity = (b == 0 || b == 3) ? 1.0 : -1.0;
    EXPECT_LT(std::abs(zz(b, b) - std::exp(Complex(0, -t / 2 * parity))), 1e-15);
  }
  const Eigen::Matrix2cd r = single_qubit_matrix(Gate::r(0, t, phi));
  const Eigen::Matrix2cd axis = std::cos(phi) * Eigen::Matrix2cd(oracle::pauli('X')) +
                                std::sin(phi) * Eigen::Matrix2cd(oracle::pauli('Y'));
  const Eigen::Matrix2cd expected =
      std::cos(t / 2) * Eigen::Matrix2cd::Identity() - Complex(0, 1) * std::sin(t / 2) * axis;
  EXPECT_LT((r - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(gates, two_qubit_matrices_are_unitary) {
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    auto g = random_gate(rng, 2);
    if (!g.is_two_qubit()) continue;
    const Eigen::Matrix4cd u = two_qubit_matrix(g);
    EXPECT_LT((u.adjoint() * u - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(gates, norm_preserved) {
  Rng rng(32);
  auto psi = random_state(rng, 5);
  for (int t = 0; t < 300; ++t) {
    psi.apply(random_gate(rng, 5));
    ASSERT_NEAR(psi.norm(), 1.0, 1e-10);
  }
}

TEST(gates, index_errors) {
  StateVector psi(2);
  EXPECT_THROW(psi.apply(Gate::x(2)), UsageError);
  EXPECT_THROW(psi.apply(Gate::uxy(0, 0, 1.0)), UsageError);
  EXPECT_THROW(psi.apply(Gate::rz(-1, 1.0)), UsageError);
}

TEST(gates, circuit_apply_matches_dense_product) {
  Rng rng(33);
  Circuit c{3, {}};
  for (int k = 0; k < 20; ++k) c.gates.push_back(random_gate(rng, 3));
  const auto u = circuit_unitary(c);
  EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-12);
  auto psi = random_state(rng, 3);
  const Eigen::VectorXcd expected = u * psi.to_eigen();
  psi.apply(c);
  EXPECT_LT((psi.to_eigen() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(gates, uxy_preserves_charge_sectors) {
  const auto p = from_couplings(2, 16.0, kZero, kZero);
  const auto q = to_matrix(total_charge(p));
  Rng rng(34);
  for (int t = 0; t < 50; ++t) {
    // Random superposition inside the Q_tot = 0 eigenspace.
    std::vector<Complex> a(16);
    for (int b = 0; b < 16; ++b) {
      if (std::abs(q(b, b).real()) < 1e-12) a[b] = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    }
    auto psi = StateVector::from_amplitudes(a);
    for (int i = 0; i < 3; ++i) psi.apply(Gate::uxy(i, i + 1, rng.uniform(0, 2 * kPi)));
    double leak = 0.0;
    for (int b = 0; b < 16; ++b) {
      if (std::abs(q(b, b).real()) > 1e-12) leak += std::norm(psi.amplitude(b));
    }
    EXPECT_LT(leak, 1e-10);
  }
}

TEST(expectation, basic_values) {
  PauliSum z(1);
  z.add("Z", 1.0);
  EXPECT_DOUBLE_EQ(expectation(StateVector(1), z), 1.0);
  PauliSum bad(1);
  bad.add("X", Complex(0, 1));
  EXPECT_THROW(expectation(StateVector(1), bad), UsageError);
  EXPECT_THROW(expectation(StateVector(2), z), UsageError);
}

TEST(expectation, matches_dense_and_is_linear) {
  Rng rng(35);
  for (int t = 0; t < 20; ++t) {
    PauliSum a(4), b(4);
    for (int k = 0; k < 6; ++k) {
      std::string la, lb;
      for (int i = 0; i < 4; ++i) {
        la += "IXYZ"[rng.below(4)];
        lb += "IXYZ"[rng.below(4)];
      }
      a.add(la, rng.uniform(-2, 2));
      b.add(lb, rng.uniform(-2, 2));
    }
    const auto psi = random_state(rng, 4);
    const auto v = psi.to_eigen();
    const double dense = (v.adjoint() * to_matrix(a) * v)(0, 0).real();
    EXPECT_NEAR(expectation(psi, a), dense, 1e-12);
    const double ca = rng.uniform(-3, 3), cb = rng.uniform(-3, 3);
    EXPECT_NEAR(expectation(psi, simplify(a * ca + b * cb)),
                ca * expectation(psi, a) + cb * expectation(psi, b), 1e-12);
    const auto rho = DensityMatrix::from_pure(psi);
    EXPECT_NEAR(expectation(rho, a), dense, 1e-12);
  }
}

TEST(expectation, ground_state_energy) {
  const auto p = with_chemical_potential_difference(from_couplings(2, 16.0, kZero, kZero), 0.0);
  const auto w = build_hamiltonian(p);
  const auto g = exact_ground_state(w, charge_neutral_sector(p));
  EXPECT_NEAR(expectation(g.state, w), g.energy, 1e-9);
  EXPECT_NEAR(g.energy, oracle::neutral_ground_energy(oracle::table_point(0.0)), 1e-9);
}

TEST(sampling, z_basis_on_basis_state) {
  const auto psi = StateVector::from_bitstring("0101");
  const auto c = sample_pauli_basis(psi, "ZZZZ", 500, 1);
  ASSERT_EQ(c.outcomes.size(), 1u);
  EXPECT_EQ(c.outcomes.at("0101"), 500);
}

TEST(sampling, x_basis_on_zero_is_unbiased) {
  const auto c = sample_pauli_basis(StateVector(1), "X", 10000, 7);
  EXPECT_LT(std::abs(expectation_from_counts(c, "X")), 4.0 / std::sqrt(10000.0));
}

TEST(sampling, deterministic_and_complete) {
  Rng rng(36);
  const auto psi = random_state(rng, 3);
  const auto a = sample_pauli_basis(psi, "XYZ", 333, 99);
  const auto b = sample_pauli_basis(psi, "XYZ", 333, 99);
  EXPECT_EQ(a, b);
  int total = 0;
  for (const auto& [_, k] : a.outcomes) total += k;
  EXPECT_EQ(total, 333);
  EXPECT_NE(a, sample_pauli_basis(psi, "XYZ", 333, 100));
}

TEST(sampling, identity_basis_and_errors) {
  const auto c = sample_pauli_basis(StateVector(2), "II", 10, 0);
  EXPECT_EQ(c.outcomes.at("00"), 10);
  EXPECT_THROW(sample_pauli_basis(StateVector(2), "ZZ", 0, 0), UsageError);
  EXPECT_THROW(sample_pauli_basis(StateVector(2), "Z", 10, 0), UsageError);
  EXPECT_THROW(expectation_from_counts(c, "XI"), UsageError);
}

TEST(sampling, group_members_converge) {
  Rng rng(37);
  const auto psi = random_state(rng, 4);
  const auto c = sample_pauli_basis(psi, "YZXZ", 200000, 5);
  for (const char* label : {"YZXI", "IIIZ", "YZXZ", "IZIZ"}) {
    EXPECT_NEAR(expectation_from_counts(c, label), pauli_expectation(psi, label), 0.01) << label;
  }
}

TEST(sampling, counts_json_round_trip) {
  const auto c = sample_pauli_basis(StateVector::from_bitstring("10"), "XZ", 64, 3);
  const nlohmann::json j = c;
  EXPECT_EQ(j.at("basis"), "XZ");
  EXPECT_EQ(j.get<Counts>(), c);
}

TEST(noise, noiseless_run_is_pure_projector) {
  Rng rng(38);
  const auto p = from_couplings(2, 16.0, kZero, kZero);
  const auto theta = sample_theta(rng, 7);
  const auto c = build_ansatz_circuit(p, theta);
  const auto rho = run_noisy(c, NoiseModel{}, ExactDensity{});
  const auto expected = DensityMatrix::from_pure(prepare_trial_state(p, theta));
  EXPECT_LT((rho.matrix() - expected.matrix()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(noise, purity_decreases_with_depolarizing_strength) {
  Rng rng(39);
  const auto p = from_couplings(2, 16.0, kZero, kZero);
  const auto c = decompose_to_native(build_ansatz_circuit(p, sample_theta(rng, 7)));
  double last = 2.0;
  for (double p2 : {0.0, 0.01, 0.05}) {
    const auto rho = run_noisy(c, NoiseModel{p2, 0.0}, ExactDensity{});
    EXPECT_TRUE(rho.is_physical());
    EXPECT_LT(rho.purity(), last);
    last = rho.purity();
  }
}

TEST(noise, trajectories_converge_to_exact_density) {
  Rng rng(40);
  const auto p = from_couplings(2, 16.0, kZero, kZero);
  const auto c = decompose_to_native(build_ansatz_circuit(p, sample_theta(rng, 7)));
  const NoiseModel noise{0.05, 0.02};
  const auto exact = run_noisy(c, noise, ExactDensity{}).probabilities();
  const auto traj = run_noisy(c, noise, Trajectories{10000, 3}).probabilities();
  for (std::size_t b = 0; b < exact.size(); ++b) {
    EXPECT_NEAR(traj[b], exact[b], 5.0 / std::sqrt(10000.0));
  }
}

TEST(noise, channel_definitions) {
  auto rho = DensityMatrix(1);
  rho.bit_flip(0.25, 0);
  EXPECT_NEAR(rho.matrix()(1, 1).real(), 0.25, 1e-15);
  auto two = DensityMatrix(2);
  two.depolarize_two(1.0, 0, 1);
  EXPECT_LT((two.matrix() - DensityMatrix::maximally_mixed(2).matrix()).cwiseAbs().maxCoeff(),
            1e-15);
  const auto m = NoiseModel::from_fidelities(0.990, 0.005);
  EXPECT_NEAR(m.p_twoqubit, 4.0 / 3.0 * 0.01, 1e-15);
  EXPECT_THROW((NoiseModel{1.5, 0.0}.validate()), UsageError);
}

TEST(noise, caps) {
  Circuit c{9, {Gate::x(0)}};
  EXPECT_THROW(run_noisy(c, NoiseModel{}, ExactDensity{}), ResourceError);
  EXPECT_THROW(StateVector(kStateVectorQubitCap + 1), ResourceError);
}
