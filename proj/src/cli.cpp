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

#include "schwinger/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "schwinger/ansatz.hpp"
#include "schwinger/errors.hpp"
#include "schwinger/phase.hpp"
#include "schwinger/rng.hpp"
#include "schwinger/tomography.hpp"

namespace schwinger::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Seed streams derived from the master seed.
constexpr std::uint64_t kSpsaStream = 10;
constexpr std::uint64_t kBackendStream = 11;
constexpr std::uint64_t kTomographyStream = 12;
constexpr std::uint64_t kBootstrapStream = 13;

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw UsageError(where + " must be an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!ok.contains(key)) throw UsageError("unknown key '" + where + "." + key + "'");
  }
}

template <class T>
void read(const json& j, const char* key, const std::string& where, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError("bad value for '" + where + "." + key + "'");
  }
}

template <class T>
void read_opt(const json& j, const char* key, const std::string& where, std::optional<T>& out) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  T v{};
  read(j, key, where, v);
  out = v;
}

std::string num(double v) { return fmt::format("{}", v); }

json model_json(const ModelConfig& m) {
  json j{{"num_sites", m.num_sites},
         {"num_flavors", m.num_flavors},
         {"x", m.x},
         {"m_over_g", m.m_over_g},
         {"kappa_over_g", m.kappa_over_g}};
  j["K"] = m.K ? json(*m.K) : json(nullptr);
  return j;
}

json header(const std::string& command, const RunConfig& c) {
  return json{{"schema_version", kSchemaVersion},
              {"command", command},
              {"seed", c.seed},
              {"config", config_json(c)}};
}

fs::path prepare_dir(const RunConfig& c) {
  fs::path dir(c.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create output directory '" + c.output_dir + "'");
  return dir;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw UsageError("cannot write '" + p.string() + "'");
  os << text;
}

void write_json(const fs::path& p, const json& j) { write_text(p, j.dump(2) + "\n"); }

std::vector<double> resolve_theta(const RunConfig& config, const ModelParams& params) {
  if (config.tomography.theta) return *config.tomography.theta;
  return spsa_run(config.spsa_config(), params, ExactBackend{}).theta_opt;
}

}  // namespace

ModelParams RunConfig::base_params() const {
  return from_couplings(model.num_sites, model.x, model.m_over_g, model.kappa_over_g);
}

ModelParams RunConfig::model_params() const {
  auto p = base_params();
  if (model.K) p = with_chemical_potential_difference(p, *model.K);
  return p;
}

Backend RunConfig::make_backend() const {
  const auto s = derive_seed(seed, kBackendStream);
  if (backend.kind == "exact") return ExactBackend{};
  if (backend.kind == "sampled") return SampledBackend{s};
  return NoisyBackend{backend.noise, s};
}

SpsaConfig RunConfig::spsa_config() const {
  auto s = spsa;
  s.seed = derive_seed(seed, kSpsaStream);
  return s;
}

json preset_json(const std::string& name) {
  double K;
  if (name == "Km14") {
    K = -14.0;
  } else if (name == "K0") {
    K = 0.0;
  } else if (name == "K10") {
    K = 10.0;
  } else {
    throw UsageError("unknown preset '" + name + "' (expected Km14, K0 or K10)");
  }
  RunConfig c;
  c.model.K = K;
  c.output_dir = "out/" + name;
  return config_json(c);
}

RunConfig parse_config(const json& j) {
  RunConfig c;
  check_keys(j, "config",
             {"schema_version", "model", "backend", "spsa", "scan", "tomography", "seed",
              "output_dir"});
  if (j.contains("schema_version")) {
    int v = 0;
    read(j, "schema_version", "config", v);
    if (v != kSchemaVersion) {
      throw UsageError(fmt::format("unsupported schema_version {} (expected {})", v,
                                   kSchemaVersion));
    }
  }
  read(j, "seed", "config", c.seed);
  read(j, "output_dir", "config", c.output_dir);

  if (j.contains("model")) {
    const auto& m = j.at("model");
    check_keys(m, "model", {"num_sites", "num_flavors", "x", "m_over_g", "kappa_over_g", "K"});
    read(m, "num_sites", "model", c.model.num_sites);
    read(m, "num_flavors", "model", c.model.num_flavors);
    read(m, "x", "model", c.model.x);
    const bool explicit_lists = m.contains("m_over_g") || m.contains("kappa_over_g");
    if (!explicit_lists) {
      c.model.m_over_g.assign(static_cast<std::size_t>(std::max(c.model.num_flavors, 0)), 0.0);
      c.model.kappa_over_g = c.model.m_over_g;
    }
    read(m, "m_over_g", "model", c.model.m_over_g);
    read(m, "kappa_over_g", "model", c.model.kappa_over_g);
    read_opt(m, "K", "model", c.model.K);
  }

  if (j.contains("backend")) {
    const auto& b = j.at("backend");
    check_keys(b, "backend", {"kind", "p_twoqubit", "p_spam"});
    read(b, "kind", "backend", c.backend.kind);
    read(b, "p_twoqubit", "backend", c.backend.noise.p_twoqubit);
    read(b, "p_spam", "backend", c.backend.noise.p_spam);
  }

  if (j.contains("spsa")) {
    const auto& s = j.at("spsa");
    check_keys(s, "spsa",
               {"iterations", "c0", "a0", "alpha", "gamma", "stability", "gradient_resamplings",
                "eval_shots", "calibration_probes", "mode", "layers"});
    std::string mode = "two_sided";
    read(s, "mode", "spsa", mode);
    if (mode == "paper_faithful") {
      c.spsa = SpsaConfig::paper_faithful();
    } else if (mode == "one_sided") {
      c.spsa.mode = SpsaMode::OneSided;
    } else if (mode != "two_sided") {
      throw UsageError("spsa.mode must be two_sided, one_sided or paper_faithful");
    }
    read(s, "iterations", "spsa", c.spsa.iterations);
    read(s, "c0", "spsa", c.spsa.c0);
    read_opt(s, "a0", "spsa", c.spsa.a0);
    read(s, "alpha", "spsa", c.spsa.alpha);
    read(s, "gamma", "spsa", c.spsa.gamma);
    read_opt(s, "stability", "spsa", c.spsa.stability);
    read(s, "gradient_resamplings", "spsa", c.spsa.gradient_resamplings);
    read(s, "eval_shots", "spsa", c.spsa.eval_shots);
    read(s, "calibration_probes", "spsa", c.spsa.calibration_probes);
    read(s, "layers", "spsa", c.spsa.layers);
  }

  if (j.contains("scan")) {
    const auto& s = j.at("scan");
    check_keys(s, "scan", {"K_values", "mode", "particle_shots"});
    read(s, "K_values", "scan", c.scan.K_values);
    read(s, "mode", "scan", c.scan.mode);
    read(s, "particle_shots", "scan", c.scan.particle_shots);
  }

  if (j.contains("tomography")) {
    const auto& t = j.at("tomography");
    check_keys(t, "tomography",
               {"shots", "bootstrap_resamples", "exact_probabilities", "source", "theta"});
    read(t, "shots", "tomography", c.tomography.shots);
    read(t, "bootstrap_resamples", "tomography", c.tomography.bootstrap_resamples);
    read(t, "exact_probabilities", "tomography", c.tomography.exact_probabilities);
    read(t, "source", "tomography", c.tomography.source);
    read_opt(t, "theta", "tomography", c.tomography.theta);
  }

  // Range checks.
  c.base_params().validate();
  if (c.backend.kind != "exact" && c.backend.kind != "sampled" && c.backend.kind != "noisy") {
    throw UsageError("backend.kind must be exact, sampled or noisy");
  }
  c.backend.noise.validate();
  c.spsa.validate();
  if (c.scan.mode != "exact" && c.scan.mode != "vqe") {
    throw UsageError("scan.mode must be exact or vqe");
  }
  if (c.scan.K_values.empty()) throw UsageError("scan.K_values must be nonempty");
  if (c.scan.particle_shots < 1) throw UsageError("scan.particle_shots must be >= 1");
  if (c.tomography.shots < 1) throw UsageError("tomography.shots must be >= 1");
  if (c.tomography.bootstrap_resamples < 2) {
    throw UsageError("tomography.bootstrap_resamples must be >= 2");
  }
  if (c.tomography.source != "pure" && c.tomography.source != "noisy") {
    throw UsageError("tomography.source must be pure or noisy");
  }
  if (c.tomography.theta &&
      static_cast<int>(c.tomography.theta->size()) !=
          num_ansatz_parameters(c.base_params(), c.spsa.layers)) {
    throw UsageError("tomography.theta has the wrong length");
  }
  if (c.output_dir.empty()) throw UsageError("output_dir must be nonempty");
  return c;
}

json config_json(const RunConfig& c) {
  json spsa{{"iterations", c.spsa.iterations},
            {"c0", c.spsa.c0},
            {"alpha", c.spsa.alpha},
            {"gamma", c.spsa.gamma},
            {"gradient_resamplings", c.spsa.gradient_resamplings},
            {"eval_shots", c.spsa.eval_shots},
            {"calibration_probes", c.spsa.calibration_probes},
            {"mode", c.spsa.mode == SpsaMode::TwoSided ? "two_sided" : "one_sided"},
            {"layers", c.spsa.layers}};
  spsa["a0"] = c.spsa.a0 ? json(*c.spsa.a0) : json(nullptr);
  spsa["stability"] = c.spsa.stability ? json(*c.spsa.stability) : json(nullptr);
  json tomo{{"shots", c.tomography.shots},
            {"bootstrap_resamples", c.tomography.bootstrap_resamples},
            {"exact_probabilities", c.tomography.exact_probabilities},
            {"source", c.tomography.source}};
  tomo["theta"] = c.tomography.theta ? json(*c.tomography.theta) : json(nullptr);
  return json{{"schema_version", kSchemaVersion},
              {"model", model_json(c.model)},
              {"backend",
               {{"kind", c.backend.kind},
                {"p_twoqubit", c.backend.noise.p_twoqubit},
                {"p_spam", c.backend.noise.p_spam}}},
              {"spsa", spsa},
              {"scan",
               {{"K_values", c.scan.K_values},
                {"mode", c.scan.mode},
                {"particle_shots", c.scan.particle_shots}}},
              {"tomography", tomo},
              {"seed", c.seed},
              {"output_dir", c.output_dir}};
}

json load_json_file(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot read config '" + path.string() + "'");
  try {
    return json::parse(is, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw UsageError("malformed config '" + path.string() + "': " + e.what());
  }
}

// ------------------------------------------------------------------ commands

std::vector<fs::path> cmd_hamiltonian(const RunConfig& config) {
  const auto params = config.model_params();
  const auto h = build_hamiltonian(params);
  const auto dir = prepare_dir(config);

  const auto txt = dir / "hamiltonian.txt";
  write_text(txt, fmt::format("# schema_version: {}\n", kSchemaVersion) + to_text(h));

  const auto full = exact_spectrum(h);
  const auto sector = charge_neutral_sector(params);
  const auto neutral = exact_spectrum(h, sector);
  const auto ground = exact_ground_state(h, sector);
  std::vector<double> n_ground;
  for (int f = 0; f < params.num_flavors; ++f) {
    n_ground.push_back(expectation(ground.state, particle_number(f, params)));
  }

  auto j = header("hamiltonian", config);
  j["num_qubits"] = params.num_qubits();
  j["nu"] = params.nu;
  j["mu"] = params.mu;
  j["num_terms"] = h.size();
  j["eigenvalues"] = full;
  j["charge_neutral_eigenvalues"] = neutral;
  j["ground_energy"] = ground.energy;
  j["gap"] = ground.gap;
  j["ground_particle_numbers"] = n_ground;
  j["global_minimum"] = full.front();
  const auto spectrum_path = dir / "spectrum.json";
  write_json(spectrum_path, j);
  return {txt, spectrum_path};
}

std::vector<fs::path> cmd_vqe(const RunConfig& config, const CommandOptions& options) {
  const auto params = config.model_params();
  const auto backend = config.make_backend();
  const auto result = spsa_run(config.spsa_config(), params, backend);
  const auto dir = prepare_dir(config);

  const auto csv = dir / "iterations.csv";
  std::ostringstream os;
  os << "# schema_version: " << kSchemaVersion << '\n';
  write_iterations_csv(os, result);
  write_text(csv, os.str());

  auto j = header("vqe", config);
  j["backend"] = backend_name(backend);
  j["result"] = summary_json(result);
  const auto summary = dir / "summary.json";
  write_json(summary, j);

  std::vector<fs::path> out{csv, summary};
  if (options.export_qasm) {
    const auto native = decompose_to_native(
        build_ansatz_circuit(params, result.theta_opt, config.spsa.layers));
    const auto qasm = dir / "circuit_opt.qasm";
    write_text(qasm, fmt::format("// schema_version: {}\n", kSchemaVersion) + export_qasm(native));
    out.push_back(qasm);
  }
  return out;
}

std::vector<fs::path> cmd_scan(const RunConfig& config) {
  const auto base = config.base_params();
  ScanMode mode = ExactScan{};
  if (config.scan.mode == "vqe") {
    mode = VqeScan{config.spsa_config(), config.make_backend(), config.scan.particle_shots};
  }
  const auto points = scan(base, config.scan.K_values, mode);
  const auto crit = critical_points(points, base.x);
  const auto dir = prepare_dir(config);

  std::ostringstream os;
  os << "# schema_version: " << kSchemaVersion << '\n';
  os << "K,nu0,energy,energy_stderr,energy_exact";
  for (int f = 0; f < base.num_flavors; ++f) os << ",N" << f << "_measured";
  for (int f = 0; f < base.num_flavors; ++f) os << ",N" << f << "_rounded";
  os << '\n';
  for (const auto& p : points) {
    os << num(p.K) << ',' << num(p.nu[0]) << ',' << num(p.energy) << ','
       << num(p.energy_std_error) << ',' << num(p.energy_exact);
    for (double n : p.particle_numbers) os << ',' << num(n);
    for (int n : p.rounded_numbers) os << ',' << n;
    os << '\n';
  }
  const auto csv = dir / "phase_diagram.csv";
  write_text(csv, os.str());

  auto j = header("scan", config);
  j["mode"] = config.scan.mode;
  auto list = json::array();
  for (const auto& c : crit) list.push_back(to_json(c));
  j["critical_points"] = list;
  const auto jp = dir / "critical_points.json";
  write_json(jp, j);
  return {csv, jp};
}

std::vector<fs::path> cmd_tomography(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const auto params = config.model_params();
  const auto theta = resolve_theta(config, params);
  const auto psi = prepare_trial_state(params, theta, config.spsa.layers);

  DensityMatrix truth = DensityMatrix::from_pure(psi);
  if (config.tomography.source == "noisy") {
    const auto native =
        decompose_to_native(build_ansatz_circuit(params, theta, config.spsa.layers));
    truth = run_noisy(native, config.backend.noise, ExactDensity{});
  }

  const auto seed = derive_seed(config.seed, kTomographyStream);
  std::optional<TomographyDataset> dataset;
  Eigen::MatrixXcd lin;
  if (config.tomography.exact_probabilities) {
    lin = linear_inversion(exact_tomography_probabilities(truth), params.num_qubits());
  } else {
    dataset = tomography_measure(truth, config.tomography.shots, seed);
    lin = linear_inversion(*dataset);
  }
  const auto rho = project_to_physical(lin);

  const auto ground =
      exact_ground_state(build_hamiltonian(params), charge_neutral_sector(params)).state;
  std::vector<DensityMetric> metrics{
      [&](const DensityMatrix& r) { return fidelity(r, psi); }};
  std::vector<Bipartition> parts;
  if (params.num_qubits() == 4) parts = two_by_two_bipartitions();
  for (const auto& b : parts) {
    metrics.push_back([b](const DensityMatrix& r) { return qmi(r, b); });
  }
  // The bootstrap model is the reconstruction itself (parametric bootstrap).
  const auto boot = bootstrap(rho, metrics, config.tomography.bootstrap_resamples,
                              config.tomography.shots,
                              derive_seed(config.seed, kBootstrapStream));

  const auto dir = prepare_dir(config);
  std::vector<fs::path> out;

  if (dataset) {
    auto dj = header("tomography", config);
    dj["dataset"] = dataset_json(*dataset);
    const auto p = dir / "dataset.json";
    write_json(p, dj);
    out.push_back(p);
  }

  auto rj = header("tomography", config);
  rj["rho"] = density_json(rho.matrix());
  rj["rho_linear"] = density_json(lin);
  const auto rp = dir / "rho.json";
  write_json(rp, rj);
  out.push_back(rp);

  std::ostringstream os;
  os << "# schema_version: " << kSchemaVersion << '\n';
  write_density_csv(os, rho.matrix());
  const auto rc = dir / "rho.csv";
  write_text(rc, os.str());
  out.push_back(rc);

  auto mj = header("tomography", config);
  mj["theta"] = theta;
  mj["source"] = config.tomography.source;
  mj["exact_probabilities"] = config.tomography.exact_probabilities;
  mj["fidelity"] = fidelity(rho, psi);
  mj["fidelity_bootstrap"] = {{"mean", boot[0].mean}, {"stddev", boot[0].stddev}};
  mj["fidelity_true_state"] = fidelity(truth, psi);
  mj["overlap_exact_ground"] = fidelity(rho, ground);
  auto q = json::array();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    q.push_back({{"bipartition", parts[i].name()},
                 {"qmi", qmi(rho, parts[i])},
                 {"qmi_true_state", qmi(truth, parts[i])},
                 {"bootstrap_mean", boot[i + 1].mean},
                 {"bootstrap_stddev", boot[i + 1].stddev}});
  }
  mj["qmi"] = q;
  mj["bootstrap_resamples"] = config.tomography.bootstrap_resamples;
  const auto mp = dir / "metrics.json";
  write_json(mp, mj);
  out.push_back(mp);

  // Outside the byte-reproducible set.
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto tp = dir / "timing.json";
  write_json(tp, json{{"schema_version", kSchemaVersion}, {"wall_time_seconds", seconds}});
  out.push_back(tp);
  return out;
}

}  // namespace schwinger::cli
