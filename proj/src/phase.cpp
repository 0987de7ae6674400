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

#include "schwinger/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "schwinger/ansatz.hpp"
#include "schwinger/errors.hpp"
#include "schwinger/rng.hpp"

namespace schwinger {
namespace {

struct Reduced {
  Eigen::MatrixXcd matrix;
  std::vector<Eigen::Index> basis;  // full-space index of each reduced row
};

Reduced reduce(const PauliSum& h, const std::optional<SectorConstraint>& sector, int cap) {
  if (h.num_qubits() > cap) {
    throw ResourceError("diagonalization of " + std::to_string(h.num_qubits()) +
                        " qubits exceeds the cap of " + std::to_string(cap));
  }
  if (!h.is_hermitian(1e-10)) throw UsageError("Hamiltonian is not Hermitian");
  const auto full = to_matrix(h, cap);
  Reduced r;
  if (!sector) {
    r.matrix = full;
    r.basis.resize(static_cast<std::size_t>(full.rows()));
    std::iota(r.basis.begin(), r.basis.end(), Eigen::Index{0});
    return r;
  }
  if (!sector->op.is_diagonal()) throw UsageError("sector operator must be diagonal");
  if (sector->op.num_qubits() != h.num_qubits()) {
    throw UsageError("sector operator and Hamiltonian sizes differ");
  }
  const Eigen::VectorXcd diag = to_matrix(sector->op, cap).diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (std::abs(diag(i).real() - sector->eigenvalue) < 1e-9) r.basis.push_back(i);
  }
  if (r.basis.empty()) throw UsageError("requested sector is empty");
  const auto d = static_cast<Eigen::Index>(r.basis.size());
  r.matrix.resize(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      r.matrix(a, b) = full(r.basis[static_cast<std::size_t>(a)],
                            r.basis[static_cast<std::size_t>(b)]);
    }
  }
  return r;
}

double n0_difference(const PhasePoint& p1, const PhasePoint& p2) {
  if (p1.rounded_numbers.empty() || p2.rounded_numbers.empty()) {
    throw UsageError("phase points carry no rounded particle numbers");
  }
  const int d = p2.rounded_numbers[0] - p1.rounded_numbers[0];
  if (d == 0) {
    throw DegeneratePhasesError("phase points share N0 = " +
                                std::to_string(p1.rounded_numbers[0]));
  }
  return d;
}

std::vector<double> particle_numbers_exact(const StateVector& psi, const ModelParams& params) {
  std::vector<double> n;
  for (int f = 0; f < params.num_flavors; ++f) {
    n.push_back(expectation(psi, particle_number(f, params)));
  }
  return n;
}

std::vector<double> particle_numbers_from_distribution(const std::vector<int>& hist, int shots,
                                                       const ModelParams& params) {
  const int q = params.num_qubits();
  std::vector<double> n(static_cast<std::size_t>(params.num_flavors), 0.0);
  for (std::size_t b = 0; b < hist.size(); ++b) {
    if (hist[b] == 0) continue;
    for (int site = 0; site < params.num_sites; ++site) {
      for (int f = 0; f < params.num_flavors; ++f) {
        const int p = qubit_index(site, f, params.num_flavors);
        if (b & (std::uint64_t{1} << (q - 1 - p))) n[static_cast<std::size_t>(f)] += hist[b];
      }
    }
  }
  for (auto& v : n) v /= shots;
  return n;
}

}  // namespace

SectorConstraint charge_neutral_sector(const ModelParams& params) {
  return {total_charge(params), 0.0};
}

GroundState exact_ground_state(const PauliSum& h, const std::optional<SectorConstraint>& sector,
                               int cap) {
  const auto r = reduce(h, sector, cap);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r.matrix);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const auto& evals = es.eigenvalues();
  std::vector<Complex> amps(std::size_t{1} << h.num_qubits(), Complex{});
  for (std::size_t a = 0; a < r.basis.size(); ++a) {
    amps[static_cast<std::size_t>(r.basis[a])] = es.eigenvectors()(static_cast<Eigen::Index>(a), 0);
  }
  // Fix the global phase so the largest amplitude is real and positive.
  const auto big = std::max_element(amps.begin(), amps.end(), [](Complex a, Complex b) {
    return std::abs(a) < std::abs(b);
  });
  const Complex phase = std::conj(*big) / std::abs(*big);
  for (auto& a : amps) a *= phase;

  GroundState g;
  g.energy = evals(0);
  g.state = StateVector::from_amplitudes(std::move(amps));
  g.gap = evals.size() > 1 ? evals(1) - evals(0) : 0.0;
  return g;
}

std::vector<double> exact_spectrum(const PauliSum& h, const std::optional<SectorConstraint>& sector,
                                   int cap) {
  const auto r = reduce(h, sector, cap);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r.matrix, Eigen::EigenvaluesOnly);
  const auto& e = es.eigenvalues();
  return {e.data(), e.data() + e.size()};
}

double phase_offset(double energy, std::span<const double> nu, std::span<const int> n_rounded) {
  if (nu.size() != n_rounded.size()) throw UsageError("nu and N have different lengths");
  double e = energy;
  for (std::size_t f = 0; f < nu.size(); ++f) e -= nu[f] * n_rounded[f];
  return e;
}

double critical_point(const PhasePoint& p1, const PhasePoint& p2, double x) {
  const double dn = n0_difference(p1, p2);
  const double e1 = phase_offset(p1.energy, p1.nu, p1.rounded_numbers);
  const double e2 = phase_offset(p2.energy, p2.nu, p2.rounded_numbers);
  return (e1 - e2) / dn / (2.0 * std::sqrt(x));
}

double critical_point_uncertainty(const PhasePoint& p1, const PhasePoint& p2, double x) {
  const double dn = n0_difference(p1, p2);
  return std::hypot(p1.energy_std_error, p2.energy_std_error) / std::abs(dn) /
         (2.0 * std::sqrt(x));
}

std::vector<CriticalPoint> critical_points(std::span<const PhasePoint> points, double x) {
  std::vector<PhasePoint> sorted(points.begin(), points.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.K < b.K; });
  std::vector<CriticalPoint> out;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    const auto& a = sorted[i];
    const auto& b = sorted[i + 1];
    if (a.rounded_numbers.at(0) == b.rounded_numbers.at(0)) continue;
    out.push_back({a.K, b.K, a.rounded_numbers[0], b.rounded_numbers[0],
                   critical_point(a, b, x), critical_point_uncertainty(a, b, x)});
  }
  return out;
}

std::vector<int> round_particle_numbers(std::span<const double> measured,
                                        const ModelParams& params) {
  params.validate();
  if (static_cast<int>(measured.size()) != params.num_flavors) {
    throw UsageError("expected one particle number per flavor");
  }
  std::vector<int> n;
  for (double m : measured) n.push_back(static_cast<int>(std::lround(m)));
  const int target = neutral_particle_count(params);
  const int upper = params.num_sites;
  while (true) {
    const int total = std::accumulate(n.begin(), n.end(), 0);
    if (total == target) break;
    const int step = total > target ? -1 : 1;
    // Residual measured - rounded, signed in the direction of the step.
    std::optional<std::size_t> pick;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t f = 0; f < n.size(); ++f) {
      const int next = n[f] + step;
      if (next < 0 || next > upper) continue;
      const double r = step * (measured[f] - n[f]);
      if (r > best) {
        best = r;
        pick = f;
      }
    }
    if (!pick) throw UsageError("particle numbers cannot be repaired to a neutral total");
    n[*pick] += step;
  }
  return n;
}

std::vector<PhasePoint> scan(const ModelParams& base, std::span<const double> K_values,
                             const ScanMode& mode) {
  if (K_values.empty()) throw UsageError("scan needs at least one K value");
  base.validate();
  std::vector<double> ks(K_values.begin(), K_values.end());
  std::stable_sort(ks.begin(), ks.end());

  std::vector<PhasePoint> points;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const auto params = with_chemical_potential_difference(base, ks[i]);
    const auto h = build_hamiltonian(params);
    const auto ground = exact_ground_state(h, charge_neutral_sector(params));

    PhasePoint p;
    p.K = ks[i];
    p.nu = params.nu;
    p.energy_exact = ground.energy;

    if (std::holds_alternative<ExactScan>(mode)) {
      p.energy = ground.energy;
      p.particle_numbers = particle_numbers_exact(ground.state, params);
    } else {
      const auto& v = std::get<VqeScan>(mode);
      auto spsa = v.spsa;
      spsa.seed = derive_seed(v.spsa.seed, i);
      Backend backend = v.backend;
      std::uint64_t readout_seed = 0;
      if (auto* s = std::get_if<SampledBackend>(&backend)) {
        s->seed = derive_seed(s->seed, i);
        readout_seed = derive_seed(s->seed, ~std::uint64_t{0});
      } else if (auto* nb = std::get_if<NoisyBackend>(&backend)) {
        nb->seed = derive_seed(nb->seed, i);
        readout_seed = derive_seed(nb->seed, ~std::uint64_t{0});
      }
      const auto result = spsa_run(spsa, params, backend);
      const auto best = std::min_element(
          result.records.begin(), result.records.end(),
          [](const auto& a, const auto& b) { return a.energy_measured < b.energy_measured; });
      p.energy = best->energy_measured;
      p.energy_std_error = best->std_error;

      const auto all_z = std::string(static_cast<std::size_t>(params.num_qubits()), 'Z');
      if (std::holds_alternative<ExactBackend>(backend)) {
        p.particle_numbers = particle_numbers_exact(
            prepare_trial_state(params, result.theta_opt, spsa.layers), params);
      } else {
        std::vector<double> probs;
        if (std::holds_alternative<SampledBackend>(backend)) {
          probs = prepare_trial_state(params, result.theta_opt, spsa.layers).probabilities();
        } else {
          const auto native =
              decompose_to_native(build_ansatz_circuit(params, result.theta_opt, spsa.layers));
          probs = basis_probabilities(
              run_noisy(native, std::get<NoisyBackend>(backend).noise, ExactDensity{}), all_z);
        }
        const auto hist = sample_histogram(probs, v.particle_shots, readout_seed);
        p.particle_numbers = particle_numbers_from_distribution(hist, v.particle_shots, params);
      }
    }
    p.rounded_numbers = round_particle_numbers(p.particle_numbers, params);
    points.push_back(std::move(p));
  }
  return points;
}

nlohmann::json to_json(const CriticalPoint& c) {
  return nlohmann::json{{"K_left", c.K_left},   {"K_right", c.K_right},
                        {"N0_left", c.n0_left}, {"N0_right", c.n0_right},
                        {"K_crit", c.K_crit},   {"uncertainty", c.uncertainty}};
}

}  // namespace schwinger
