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

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "schwinger/ansatz.hpp"
#include "schwinger/errors.hpp"
#include "schwinger/model.hpp"
#include "schwinger/rng.hpp"

using namespace schwinger;

namespace {

constexpr double kPi = std::numbers::pi;
const std::vector<double> kZero{0.0, 0.0};

ModelParams table_point(double K) {
  return with_chemical_potential_difference(from_couplings(2, 16.0, kZero, kZero), K);
}

std::vector<double> random_theta(Rng& rng, int n) {
  std::vector<double> t(static_cast<std::size_t>(n));
  for (auto& v : t) v = rng.uniform(-kPi, kPi);
  return t;
}

double energy(const ModelParams& p, const PauliSum& h, std::span<const double> theta) {
  return expectation(prepare_trial_state(p, theta), h);
}

// Every angle enters through a generator with eigenvalue gaps of at most 2 in
// units of theta/2, so the energy along one coordinate is a degree-2
// trigonometric polynomial. Five samples fix it exactly.
double coordinate_descent(const ModelParams& p, const PauliSum& h, std::vector<double> theta,
                          int sweeps) {
  constexpr int kGrid = 2048;
  for (int s = 0; s < sweeps; ++s) {
    for (auto& t : theta) {
      double a[5];
      Eigen::Matrix<double, 5, 5> m;
      for (int k = 0; k < 5; ++k) {
        const double x = 2 * kPi * k / 5;
        t = x;
        a[k] = energy(p, h, theta);
        m.row(k) << 1.0, std::cos(x), std::sin(x), std::cos(2 * x), std::sin(2 * x);
      }
      const Eigen::Matrix<double, 5, 1> c =
          m.partialPivLu().solve(Eigen::Map<Eigen::Matrix<double, 5, 1>>(a));
      double best = 0.0, best_val = 1e300;
      for (int g = 0; g < kGrid; ++g) {
        const double x = 2 * kPi * g / kGrid;
        const double v = c(0) + c(1) * std::cos(x) + c(2) * std::sin(x) +
                         c(3) * std::cos(2 * x) + c(4) * std::sin(2 * x);
        if (v < best_val) best_val = v, best = x;
      }
      t = best;
    }
  }
  return energy(p, h, theta);
}

}  // namespace

TEST(ansatz, parameter_count) {
  EXPECT_EQ(num_ansatz_parameters(table_point(0)), 7);
  EXPECT_EQ(num_ansatz_parameters(table_point(0), 3), 21);
  EXPECT_EQ(num_ansatz_parameters(from_couplings(3, 1.0, std::vector{0.0}, std::vector{0.0})), 5);
}

TEST(ansatz, reference_state) {
  EXPECT_EQ(initial_bitstring(table_point(0)), "0101");
  const auto odd = from_couplings(3, 1.0, std::vector{0.0}, std::vector{0.0});
  // 010 would carry charge, so the odd sites are filled instead.
  EXPECT_EQ(initial_bitstring(odd), "010");
  const std::vector<double> zero(7, 0.0);
  const auto psi = prepare_trial_state(table_point(0), zero);
  EXPECT_NEAR(std::norm(psi.amplitude(0b0101)), 1.0, 1e-15);
}

TEST(ansatz, bitstring_convention_matches_qubit_order) {
  // Qubit 0 is the leftmost character and the most significant index bit.
  auto psi = StateVector(4);
  psi.apply(Gate::x(0));
  EXPECT_NEAR(std::norm(psi.amplitude(0b1000)), 1.0, 1e-15);
  const auto occ = expectation(StateVector::from_bitstring("0100"), occupation(1, 4));
  EXPECT_NEAR(occ, 1.0, 1e-15);
}

TEST(ansatz, circuit_layout) {
  Rng rng(1);
  const auto theta = random_theta(rng, 7);
  const auto c = build_ansatz_circuit(table_point(0), theta);
  ASSERT_EQ(c.gates.size(), 2u + 3u + 4u);
  EXPECT_EQ(c.gates[0], Gate::x(1));
  EXPECT_EQ(c.gates[1], Gate::x(3));
  EXPECT_EQ(c.gates[2], Gate::uxy(0, 1, theta[0]));
  EXPECT_EQ(c.gates[3], Gate::uxy(2, 3, theta[2]));
  EXPECT_EQ(c.gates[4], Gate::uxy(1, 2, theta[1]));
  for (int p = 0; p < 4; ++p) EXPECT_EQ(c.gates[5 + p], Gate::rz(p, theta[3 + p]));
  EXPECT_EQ(c.two_qubit_count(), 3u);
  EXPECT_THROW(build_ansatz_circuit(table_point(0), std::vector<double>(6)), UsageError);
}

TEST(ansatz, trial_states_are_charge_neutral) {
  const auto p = table_point(0);
  const auto q = total_charge(p);
  const auto q2 = simplify(q * q);
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto psi = prepare_trial_state(p, random_theta(rng, 7));
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    EXPECT_NEAR(expectation(psi, q), 0.0, 1e-10);
    EXPECT_NEAR(expectation(psi, q2), 0.0, 1e-10);
  }
}

TEST(ansatz, generators_commute_with_total_charge) {
  const auto p = table_point(0);
  const auto q = to_matrix(total_charge(p));
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    // The X preparation flips charge, so only the rotation block commutes.
    Circuit body{4, {}};
    const auto full = build_ansatz_circuit(p, random_theta(rng, 7));
    body.gates.assign(full.gates.begin() + 2, full.gates.end());
    const auto v = circuit_unitary(body);
    EXPECT_LT((v * q - q * v).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ansatz, energy_is_two_pi_periodic) {
  const auto p = table_point(0);
  const auto h = build_hamiltonian(p);
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    const auto theta = random_theta(rng, 7);
    const double e = energy(p, h, theta);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      auto shifted = theta;
      shifted[i] += 2 * kPi;
      EXPECT_NEAR(energy(p, h, shifted), e, 1e-9);
    }
  }
}

TEST(ansatz, multi_layer_reduces_to_single_layer) {
  const auto p = table_point(0);
  Rng rng(5);
  const auto theta = random_theta(rng, 7);
  auto two = theta;
  two.insert(two.end(), 7, 0.0);
  const auto a = prepare_trial_state(p, theta).to_eigen();
  const auto b = prepare_trial_state(p, two, 2).to_eigen();
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(decomposition, single_exchange_gate) {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const double theta = rng.uniform(-3 * kPi, 3 * kPi);
    for (auto [i, j] : {std::pair{0, 1}, std::pair{1, 0}}) {
      const Circuit c{2, {Gate::uxy(i, j, theta)}};
      const auto n = decompose_to_native(c);
      EXPECT_LT(unitary_distance(circuit_unitary(c), circuit_unitary(n)), 1e-9);
      EXPECT_EQ(n.two_qubit_count(), 2u);
      for (const auto& g : n.gates) {
        EXPECT_NE(g.kind, GateKind::Uxy);
        if (g.kind == GateKind::ZZ) EXPECT_DOUBLE_EQ(g.theta, kPi / 2);
      }
    }
  }
}

TEST(decomposition, full_ansatz) {
  const auto p = table_point(0);
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const auto c = build_ansatz_circuit(p, random_theta(rng, 7 * (1 + t % 2)), 1 + t % 2);
    const auto n = decompose_to_native(c);
    EXPECT_LT(unitary_distance(circuit_unitary(c), circuit_unitary(n)), 1e-9);
    EXPECT_EQ(n.two_qubit_count(), 2 * c.two_qubit_count());
  }
}

TEST(decomposition, empty_and_non_native_zz) {
  const Circuit empty{3, {}};
  EXPECT_EQ(decompose_to_native(empty), empty);
  EXPECT_THROW(decompose_to_native(Circuit{2, {Gate::zz(0, 1, 0.3)}}), UsageError);
}

TEST(decomposition, peephole_pass) {
  const Circuit c{2,
                  {Gate::rz(0, 0.5), Gate::barrier(), Gate::rz(0, 0.25), Gate::x(1), Gate::x(1),
                   Gate::r(0, 1.0, 0.3), Gate::r(0, 0.5, 0.3 + kPi), Gate::rz(1, 2 * kPi)}};
  const auto out = cancel_adjacent_rotations(c);
  EXPECT_LT(unitary_distance(circuit_unitary(c), circuit_unitary(out)), 1e-12);
  int rotations = 0;
  for (const auto& g : out.gates) rotations += g.is_barrier() ? 0 : 1;
  EXPECT_EQ(rotations, 2);
}

TEST(qasm, header_and_statements) {
  const auto c = build_ansatz_circuit(table_point(0), std::vector<double>{0, 0, 0, 0.5, 0, 0, 0});
  const auto text = export_qasm(c);
  EXPECT_EQ(text.rfind("OPENQASM 3.0;", 0), 0u);
  EXPECT_NE(text.find("qubit[4] q;"), std::string::npos);
  EXPECT_NE(text.find("rz(0.5) q[0];"), std::string::npos);
}

TEST(qasm, round_trip_is_exact) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    auto c = decompose_to_native(build_ansatz_circuit(table_point(0), random_theta(rng, 7)));
    c.gates.push_back(Gate::barrier());
    const auto text = export_qasm(c);
    const auto back = import_qasm(text);
    EXPECT_EQ(back, c);
    EXPECT_EQ(export_qasm(back), text);
  }
  EXPECT_THROW(import_qasm("OPENQASM 3.0;\nqubit[2] q;\nfoo q[0];\n"), UsageError);
}

TEST(circuit_json, round_trip) {
  Rng rng(9);
  const auto c = build_ansatz_circuit(table_point(0), random_theta(rng, 7));
  const nlohmann::json j = c;
  EXPECT_EQ(j.at("num_qubits"), 4);
  EXPECT_EQ(nlohmann::json::parse(j.dump()).get<Circuit>(), c);
}

TEST(ansatz, reaches_neutral_ground_energy_at_zero_chemical_potential) {
  const auto p = table_point(0);
  const auto h = build_hamiltonian(p);
  Rng rng(10);
  double best = 1e300;
  for (int start = 0; start < 5; ++start) {
    best = std::min(best, coordinate_descent(p, h, random_theta(rng, 7), 30));
  }
  EXPECT_LE(best, -30.5);
}
