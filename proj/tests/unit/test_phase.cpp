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

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "schwinger/errors.hpp"
#include "schwinger/model.hpp"
#include "schwinger/phase.hpp"

using namespace schwinger;

namespace {

const std::vector<double> kZero{0.0, 0.0};

ModelParams table_point(double K) {
  return with_chemical_potential_difference(from_couplings(2, 16.0, kZero, kZero), K);
}

// Oracle ground energy inside the neutral sector with fixed N_0.
double oracle_sector_energy(double K, int n0) {
  const auto m = oracle::table_point(K);
  const oracle::Mat d = 100.0 * oracle::total_charge(m) + oracle::particle_number(m, 0);
  return oracle::sector_spectrum(oracle::hamiltonian(m), d, n0)(0);
}

// K where the N_0 = a and N_0 = b sector ground energies cross.
double oracle_crossing(int a, int b, double lo, double hi) {
  auto f = [&](double K) { return oracle_sector_energy(K, a) - oracle_sector_energy(K, b); };
  const double flo = f(lo);
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((f(mid) > 0) == (flo > 0) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

PhasePoint exact_point(double K) {
  const std::vector<double> k{K};
  return scan(from_couplings(2, 16.0, kZero, kZero), k, ExactScan{}).front();
}

}  // namespace

TEST(exact_ground_state, single_z) {
  PauliSum z(1);
  z.add("Z", 1.0);
  const auto g = exact_ground_state(z);
  EXPECT_DOUBLE_EQ(g.energy, -1.0);
  EXPECT_NEAR(std::norm(g.state.amplitude(1)), 1.0, 1e-15);
  EXPECT_NEAR(g.gap, 2.0, 1e-12);
}

TEST(exact_ground_state, table_energy_at_positive_K) {
  const auto p = table_point(10);
  const auto g = exact_ground_state(build_hamiltonian(p), charge_neutral_sector(p));
  EXPECT_NEAR(g.energy, 1.0, 0.05);
  EXPECT_NEAR(g.energy, oracle::neutral_ground_energy(oracle::table_point(10)), 1e-9);
}

TEST(exact_ground_state, gap_near_transition) {
  const auto gap_at = [](double K) {
    const auto p = table_point(K);
    return exact_ground_state(build_hamiltonian(p), charge_neutral_sector(p)).gap;
  };
  EXPECT_NEAR(gap_at(3.96), 0.115577869549065, 1e-9);
  EXPECT_LT(gap_at(oracle_crossing(1, 0, 3.0, 5.0)), 1e-6);
  EXPECT_GT(gap_at(0.0), 1.0);
}

TEST(exact_ground_state, caps_and_sector_errors) {
  PauliSum big(kDenseQubitCap + 1);
  big.add(std::string(kDenseQubitCap + 1, 'Z'), 1.0);
  EXPECT_THROW(exact_ground_state(big), ResourceError);
  PauliSum z(1);
  z.add("Z", 1.0);
  PauliSum x(1);
  x.add("X", 1.0);
  EXPECT_THROW(exact_ground_state(z, SectorConstraint{x, 1.0}), UsageError);
  EXPECT_THROW(exact_ground_state(z, SectorConstraint{z, 3.0}), UsageError);
}

TEST(exact_ground_state, spectrum_matches_oracle) {
  const auto p = table_point(2.5);
  const auto s = exact_spectrum(build_hamiltonian(p), charge_neutral_sector(p));
  const auto m = oracle::table_point(2.5);
  const auto o = oracle::sector_spectrum(oracle::hamiltonian(m), oracle::total_charge(m), 0.0);
  ASSERT_EQ(s.size(), static_cast<std::size_t>(o.size()));
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], o(static_cast<Eigen::Index>(i)), 1e-9);
}

TEST(phase_offset, examples) {
  const std::vector<double> zero_nu{0.0, 0.0};
  const std::vector<int> ones{1, 1};
  const double e0 = oracle::neutral_ground_energy(oracle::table_point(0));
  EXPECT_DOUBLE_EQ(phase_offset(e0, zero_nu, ones), e0);
  const std::vector<double> nu{3.0, -1.0};
  const std::vector<int> none{0, 0};
  EXPECT_DOUBLE_EQ(phase_offset(7.5, nu, none), 7.5);
  EXPECT_DOUBLE_EQ(phase_offset(7.5, nu, std::vector<int>{2, 1}), 7.5 - 6.0 + 1.0);
}

TEST(phase_offset, constant_inside_a_phase) {
  const auto a = exact_point(8.0), b = exact_point(10.0);
  ASSERT_EQ(a.rounded_numbers, b.rounded_numbers);
  EXPECT_NEAR(phase_offset(a.energy, a.nu, a.rounded_numbers),
              phase_offset(b.energy, b.nu, b.rounded_numbers), 0.05);
}

TEST(critical_point, exact_boundaries) {
  const auto left = critical_point(exact_point(-14), exact_point(0), 16.0);
  const auto right = critical_point(exact_point(0), exact_point(10), 16.0);
  EXPECT_NEAR(left, -3.96, 0.02);
  EXPECT_NEAR(right, 3.96, 0.02);
  EXPECT_NEAR(left, oracle_crossing(2, 1, -5.0, -3.0), 1e-6);
  EXPECT_NEAR(right, oracle_crossing(1, 0, 3.0, 5.0), 1e-6);
}

TEST(critical_point, symmetric_in_arguments) {
  const auto a = exact_point(-6), b = exact_point(1);
  EXPECT_DOUBLE_EQ(critical_point(a, b, 16.0), critical_point(b, a, 16.0));
}

TEST(critical_point, energy_shift_identity) {
  auto a = exact_point(-14);
  const auto b = exact_point(0);
  const double base = critical_point(a, b, 16.0);
  const double delta = 0.37;
  a.energy += delta;
  const double dn0 = b.rounded_numbers[0] - a.rounded_numbers[0];
  EXPECT_NEAR(critical_point(a, b, 16.0) - base, delta / dn0 / 8.0, 1e-12);
}

TEST(critical_point, degenerate_phases) {
  EXPECT_THROW(critical_point(exact_point(8), exact_point(10), 16.0), DegeneratePhasesError);
}

TEST(critical_point, uncertainty_propagation) {
  auto a = exact_point(-14), b = exact_point(0);
  EXPECT_EQ(critical_point_uncertainty(a, b, 16.0), 0.0);
  a.energy_std_error = 0.3;
  b.energy_std_error = 0.4;
  EXPECT_NEAR(critical_point_uncertainty(a, b, 16.0), 0.5 / 1.0 / 8.0, 1e-12);
}

TEST(critical_point, list_over_scan) {
  const std::vector<double> ks{10, -14, 0};
  const auto pts = scan(from_couplings(2, 16.0, kZero, kZero), ks, ExactScan{});
  const auto cps = critical_points(pts, 16.0);
  ASSERT_EQ(cps.size(), 2u);
  EXPECT_EQ(cps[0].K_left, -14.0);
  EXPECT_EQ(cps[0].n0_left, 2);
  EXPECT_EQ(cps[1].n0_right, 0);
  const auto j = to_json(cps[1]);
  EXPECT_TRUE(j.contains("K_crit"));
  EXPECT_TRUE(j.contains("uncertainty"));
  EXPECT_TRUE(critical_points(std::span(pts).first(1), 16.0).empty());
}

TEST(rounding, examples) {
  const auto p = table_point(0);
  using V = std::vector<double>;
  using I = std::vector<int>;
  EXPECT_EQ(round_particle_numbers(V{1.73, 0.27}, p), (I{2, 0}));
  EXPECT_EQ(round_particle_numbers(V{1.0, 1.0}, p), (I{1, 1}));
  EXPECT_EQ(round_particle_numbers(V{1.5, 0.6}, p), (I{1, 1}));
  EXPECT_EQ(round_particle_numbers(V{0.4, 0.4}, p), (I{1, 1}));
  EXPECT_EQ(round_particle_numbers(V{2.6, -0.2}, p), (I{2, 0}));
}

TEST(rounding, total_is_neutral) {
  const auto p = table_point(0);
  for (double a = -0.5; a <= 2.5; a += 0.05) {
    for (double b = -0.5; b <= 2.5; b += 0.13) {
      const std::vector<double> m{a, b};
      const auto r = round_particle_numbers(m, p);
      EXPECT_EQ(r[0] + r[1], 2);
    }
  }
}

TEST(scan, exact_table_points) {
  const std::vector<double> ks{-14, 0, 10};
  const auto pts = scan(from_couplings(2, 16.0, kZero, kZero), ks, ExactScan{});
  ASSERT_EQ(pts.size(), 3u);
  const double want[] = {-223.0, oracle::neutral_ground_energy(oracle::table_point(0)), 1.0};
  const int n0[] = {2, 1, 0};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(pts[i].energy, want[i], 1e-9);
    EXPECT_EQ(pts[i].energy, pts[i].energy_exact);
    EXPECT_EQ(pts[i].rounded_numbers[0], n0[i]);
    EXPECT_EQ(pts[i].rounded_numbers[0] + pts[i].rounded_numbers[1], 2);
    EXPECT_DOUBLE_EQ(pts[i].nu[0], 8.0 * ks[i]);
  }
  EXPECT_THROW(scan(from_couplings(2, 16.0, kZero, kZero), std::vector<double>{}, ExactScan{}),
               UsageError);
}

TEST(scan, energy_affine_inside_phase) {
  // N_0 = 2 phase: E(K) = E_min + 2 sqrt(x) K N_0.
  const std::vector<double> ks{-12, -10, -8};
  const auto pts = scan(from_couplings(2, 16.0, kZero, kZero), ks, ExactScan{});
  for (const auto& p : pts) ASSERT_EQ(p.rounded_numbers[0], 2);
  const double slope = (pts[2].energy - pts[0].energy) / (ks[2] - ks[0]);
  EXPECT_NEAR(slope, 8.0 * 2, 1e-6);
  const double fit = pts[0].energy + slope * (ks[1] - ks[0]);
  EXPECT_LT(std::abs(pts[1].energy - fit), 0.1);
}

TEST(scan, ground_particle_numbers_are_integers) {
  for (double K : {-14.0, -6.0, 0.0, 2.0, 6.0, 10.0}) {
    const auto p = exact_point(K);
    for (double n : p.particle_numbers) EXPECT_NEAR(n, std::round(n), 1e-6) << "K=" << K;
  }
}

TEST(scan, vqe_mode_reports_stderr) {
  VqeScan mode;
  mode.spsa.iterations = 30;
  mode.backend = SampledBackend{5};
  const std::vector<double> ks{-14, 0};
  const auto pts = scan(from_couplings(2, 16.0, kZero, kZero), ks, mode);
  for (const auto& p : pts) {
    EXPECT_GT(p.energy_std_error, 0.0);
    EXPECT_GE(p.energy + 5 * p.energy_std_error, p.energy_exact);
  }
}
