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

#include "schwinger/vqe.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "schwinger/ansatz.hpp"
#include "schwinger/errors.hpp"
#include "schwinger/phase.hpp"
#include "schwinger/rng.hpp"

namespace schwinger {
namespace {

// Stream ids for derive_seed.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kPerturbStream = 2;
constexpr std::uint64_t kCalibrationStream = 3;

std::uint64_t backend_seed(const Backend& b) {
  if (const auto* s = std::get_if<SampledBackend>(&b)) return s->seed;
  if (const auto* n = std::get_if<NoisyBackend>(&b)) return n->seed;
  return 0;
}

struct GroupTerm {
  std::uint64_t support = 0;
  double coefficient = 0.0;
};

std::uint64_t support_of(const std::string& label) {
  std::uint64_t m = 0;
  const auto n = label.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != 'I') m |= std::uint64_t{1} << (n - 1 - i);
  }
  return m;
}

}  // namespace

std::string backend_name(const Backend& b) {
  switch (b.index()) {
    case 0: return "exact";
    case 1: return "sampled";
    default: return "noisy";
  }
}

// --------------------------------------------------------------- estimation

EnergyEstimator::EnergyEstimator(ModelParams params, int layers, MeasurementScheme scheme)
    : params_(std::move(params)),
      layers_(layers),
      hamiltonian_(build_hamiltonian(params_)),
      groups_() {
  const auto labels = hamiltonian_.labels(/*include_identity=*/false);
  if (scheme == MeasurementScheme::Grouped) {
    groups_ = qubitwise_commuting_groups(labels);
  } else {
    for (const auto& l : labels) groups_.push_back({l, {l}});
  }
}

double EnergyEstimator::exact(std::span<const double> theta) const {
  return expectation(prepare_trial_state(params_, theta, layers_), hamiltonian_);
}

EnergyEstimate EnergyEstimator::estimate(std::span<const double> theta, int shots,
                                         const Backend& backend, std::uint64_t seed) const {
  if (std::holds_alternative<ExactBackend>(backend)) return {exact(theta), 0.0};
  if (shots < 1) throw UsageError("sampled energy estimation needs shots >= 1");

  std::optional<StateVector> psi;
  std::optional<DensityMatrix> rho;
  if (std::holds_alternative<SampledBackend>(backend)) {
    psi = prepare_trial_state(params_, theta, layers_);
  } else {
    const auto& noisy = std::get<NoisyBackend>(backend);
    const auto native = decompose_to_native(build_ansatz_circuit(params_, theta, layers_));
    rho = run_noisy(native, noisy.noise, ExactDensity{});
  }

  double energy = hamiltonian_.identity_coefficient().real();
  double variance = 0.0;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const auto& group = groups_[g];
    std::vector<GroupTerm> terms;
    for (const auto& m : group.members) {
      terms.push_back({support_of(m), hamiltonian_.coefficient(m).real()});
    }
    const auto probs = psi ? basis_probabilities(*psi, group.basis)
                           : basis_probabilities(*rho, group.basis);
    const auto hist = sample_histogram(probs, shots, derive_seed(seed, g));
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t b = 0; b < hist.size(); ++b) {
      if (hist[b] == 0) continue;
      double v = 0.0;
      for (const auto& t : terms) {
        v += (std::popcount(b & t.support) & 1) ? -t.coefficient : t.coefficient;
      }
      sum += v * hist[b];
      sum2 += v * v * hist[b];
    }
    const double mean = sum / shots;
    energy += mean;
    if (shots > 1) {
      const double var = std::max(0.0, (sum2 - shots * mean * mean) / (shots - 1));
      variance += var / shots;
    }
  }
  return {energy, std::sqrt(variance)};
}

EnergyEstimate estimate_energy(std::span<const double> theta, const ModelParams& params,
                               int shots, const Backend& backend) {
  return EnergyEstimator(params).estimate(theta, shots, backend, backend_seed(backend));
}

// --------------------------------------------------------------------- SPSA

SpsaConfig SpsaConfig::paper_faithful() {
  SpsaConfig c;
  c.mode = SpsaMode::OneSided;
  c.gradient_resamplings = 3;
  return c;
}

void SpsaConfig::validate() const {
  if (iterations < 0) throw UsageError("spsa.iterations must be >= 0");
  if (!(c0 > 0.0)) throw UsageError("spsa.c0 must be positive");
  if (a0 && !(*a0 > 0.0)) throw UsageError("spsa.a0 must be positive");
  if (gradient_resamplings < 1) throw UsageError("spsa.gradient_resamplings must be >= 1");
  if (eval_shots < 1) throw UsageError("spsa.eval_shots must be >= 1");
  if (calibration_probes < 10) throw UsageError("spsa.calibration_probes must be >= 10");
  if (stability && *stability < 0.0) throw UsageError("spsa.stability must be >= 0");
  if (!(alpha > 0.0) || !(gamma > 0.0)) throw UsageError("spsa exponents must be positive");
  if (layers < 1) throw UsageError("spsa.layers must be >= 1");
}

double SpsaConfig::stability_constant() const {
  return stability.value_or(iterations / 10.0);
}

double SpsaConfig::gain_a(double a, int k) const {
  return a / std::pow(k + 1 + stability_constant(), alpha);
}

double SpsaConfig::gain_c(int k) const { return c0 / std::pow(k + 1, gamma); }

SpsaCalibration spsa_calibrate(const CostFunction& f, std::span<const double> theta0, double c0,
                               int probes, std::uint64_t seed, double stability, double alpha) {
  if (probes < 10) throw UsageError("calibration needs at least 10 probes");
  if (!(c0 > 0.0)) throw UsageError("calibration needs c0 > 0");
  Rng rng(seed);
  const auto n = theta0.size();
  std::vector<double> plus(n), minus(n);
  double total = 0.0;
  for (int p = 0; p < probes; ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = c0 * rng.rademacher();
      plus[i] = theta0[i] + d;
      minus[i] = theta0[i] - d;
    }
    total += std::abs(f(plus) - f(minus));
  }
  SpsaCalibration cal;
  cal.mean_abs_delta = total / probes;
  if (!(cal.mean_abs_delta > 1e-12)) {
    cal.a0 = kSpsaFallbackA0;
    cal.fallback = true;
    return cal;
  }
  cal.a0 = kSpsaTargetStep * std::pow(1.0 + stability, alpha) * 2.0 * c0 / cal.mean_abs_delta;
  return cal;
}

std::vector<IterationRecord> spsa_minimize(const SpsaConfig& config,
                                           std::span<const double> theta0,
                                           const MeasureFunction& measure,
                                           const CostFunction& simulate,
                                           SpsaCalibration* calibration) {
  config.validate();
  const auto n = theta0.size();
  std::uint64_t task = 0;
  auto measured = [&](std::span<const double> t) { return measure(t, task++); };

  SpsaCalibration cal;
  if (config.a0) {
    cal.a0 = *config.a0;
  } else {
    cal = spsa_calibrate([&](std::span<const double> t) { return measured(t).energy; },
                         theta0, config.c0, config.calibration_probes,
                         derive_seed(config.seed, kCalibrationStream),
                         config.stability_constant(), config.alpha);
  }
  if (calibration) *calibration = cal;

  std::vector<double> theta(theta0.begin(), theta0.end());
  std::vector<IterationRecord> records;
  records.reserve(static_cast<std::size_t>(config.iterations) + 1);
  const auto first = measured(theta);
  records.push_back({0, theta, first.energy, first.std_error, simulate(theta)});

  Rng rng(derive_seed(config.seed, kPerturbStream));
  std::vector<double> delta(n), probe(n), probe2(n), grad(n);
  for (int k = 0; k < config.iterations; ++k) {
    const double ck = config.gain_c(k);
    std::fill(grad.begin(), grad.end(), 0.0);
    for (int r = 0; r < config.gradient_resamplings; ++r) {
      for (std::size_t i = 0; i < n; ++i) {
        delta[i] = rng.rademacher();
        probe[i] = theta[i] + ck * delta[i];
        probe2[i] = theta[i] - ck * delta[i];
      }
      double diff;
      double scale;
      if (config.mode == SpsaMode::TwoSided) {
        diff = measured(probe).energy - measured(probe2).energy;
        scale = 2.0 * ck;
      } else {
        diff = measured(probe).energy - records.back().energy_measured;
        scale = ck;
      }
      for (std::size_t i = 0; i < n; ++i) grad[i] += diff / (scale * delta[i]);
    }
    const double ak = config.gain_a(cal.a0, k);
    for (std::size_t i = 0; i < n; ++i) {
      theta[i] -= ak * grad[i] / config.gradient_resamplings;
    }
    const auto e = measured(theta);
    records.push_back({k + 1, theta, e.energy, e.std_error, simulate(theta)});
  }
  return records;
}

ConvergenceStats convergence_stats(std::span<const IterationRecord> records,
                                   double window_fraction, double exact_energy) {
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw UsageError("window fraction must lie in (0, 1]");
  }
  const auto n = records.size();
  const auto w = static_cast<std::size_t>(std::ceil(window_fraction * static_cast<double>(n)));
  if (w < 2) throw UsageError("convergence window holds fewer than two records");
  const auto tail = records.subspan(n - w);

  auto mean_std = [&](auto get) {
    double s = 0.0;
    for (const auto& r : tail) s += get(r);
    const double mean = s / static_cast<double>(w);
    double ss = 0.0;
    for (const auto& r : tail) ss += (get(r) - mean) * (get(r) - mean);
    return std::pair{mean, std::sqrt(ss / static_cast<double>(w - 1))};
  };
  const auto [m, sd] = mean_std([](const IterationRecord& r) { return r.energy_measured; });
  const auto [ms, sds] = mean_std([](const IterationRecord& r) { return r.energy_simulated; });
  double se = 0.0;
  for (const auto& r : tail) se += r.std_error;

  ConvergenceStats s;
  s.delta_w = m - exact_energy;
  s.spread_w = sd;
  s.delta_w_sim = ms - exact_energy;
  s.spread_w_sim = sds;
  s.mean_std_error = se / static_cast<double>(w);
  s.window = static_cast<int>(w);
  return s;
}

VqeResult spsa_run(const SpsaConfig& config, const ModelParams& params, const Backend& backend) {
  config.validate();
  const EnergyEstimator estimator(params, config.layers);
  const int num_params = num_ansatz_parameters(params, config.layers);

  Rng init(derive_seed(config.seed, kInitStream));
  std::vector<double> theta0(static_cast<std::size_t>(num_params));
  for (auto& t : theta0) t = init.uniform(0.0, 2 * std::numbers::pi);

  const auto base_seed = backend_seed(backend);
  const MeasureFunction measure = [&](std::span<const double> t, std::uint64_t task) {
    return estimator.estimate(t, config.eval_shots, backend, derive_seed(base_seed, task));
  };
  const CostFunction simulate = [&](std::span<const double> t) { return estimator.exact(t); };

  VqeResult result;
  result.records = spsa_minimize(config, theta0, measure, simulate, &result.calibration);

  const auto best = std::min_element(
      result.records.begin(), result.records.end(),
      [](const auto& a, const auto& b) { return a.energy_measured < b.energy_measured; });
  result.theta_opt = best->theta;
  result.energy_min_measured = best->energy_measured;
  result.energy_min_simulated =
      std::min_element(result.records.begin(), result.records.end(),
                       [](const auto& a, const auto& b) {
                         return a.energy_simulated < b.energy_simulated;
                       })->energy_simulated;

  result.energy_exact =
      exact_ground_state(estimator.hamiltonian(), charge_neutral_sector(params)).energy;

  if (result.records.size() >= 2) {
    result.stats = convergence_stats(result.records, kDefaultConvergenceWindow,
                                     result.energy_exact);
    result.has_stats = result.stats.window >= 2;
  }
  return result;
}

void write_iterations_csv(std::ostream& os, const VqeResult& result) {
  const auto p = result.records.empty() ? 0 : result.records.front().theta.size();
  os << "iteration";
  for (std::size_t i = 0; i < p; ++i) os << ",theta_" << i;
  os << ",E_measured,stderr,E_simulated\n";
  for (const auto& r : result.records) {
    os << r.iteration;
    for (double t : r.theta) os << ',' << fmt::format("{}", t);
    os << ',' << fmt::format("{}", r.energy_measured) << ',' << fmt::format("{}", r.std_error)
       << ',' << fmt::format("{}", r.energy_simulated) << '\n';
  }
}

nlohmann::json summary_json(const VqeResult& result) {
  nlohmann::json j;
  j["iterations"] = result.records.empty() ? 0 : result.records.back().iteration;
  j["theta_opt"] = result.theta_opt;
  j["E_min_measured"] = result.energy_min_measured;
  j["E_min_simulated"] = result.energy_min_simulated;
  j["E_exact"] = result.energy_exact;
  if (result.has_stats) {
    j["Delta_W"] = result.stats.delta_w;
    j["delta_W"] = result.stats.spread_w;
    j["Delta_W_sim"] = result.stats.delta_w_sim;
    j["delta_W_sim"] = result.stats.spread_w_sim;
    j["mean_stderr"] = result.stats.mean_std_error;
    j["window"] = result.stats.window;
  } else {
    for (const char* k : {"Delta_W", "delta_W", "Delta_W_sim", "delta_W_sim", "mean_stderr"}) {
      j[k] = nullptr;
    }
    j["window"] = 0;
  }
  j["a0"] = result.calibration.a0;
  j["a0_fallback"] = result.calibration.fallback;
  return j;
}

}  // namespace schwinger
