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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schwinger/ansatz.hpp"
#include "schwinger/cli.hpp"
#include "schwinger/errors.hpp"
#include "schwinger/model.hpp"
#include "schwinger/pauli.hpp"
#include "schwinger/phase.hpp"
#include "schwinger/simulator.hpp"
#include "schwinger/tomography.hpp"
#include "schwinger/vqe.hpp"

namespace py = pybind11;
using namespace schwinger;

namespace {

using Vec = std::vector<double>;

Backend make_backend(const std::string& kind, std::uint64_t seed, double p2, double spam) {
  if (kind == "exact") return ExactBackend{};
  if (kind == "sampled") return SampledBackend{seed};
  if (kind == "noisy") return NoisyBackend{NoiseModel{p2, spam}, seed};
  throw UsageError("backend must be exact, sampled or noisy");
}

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-flavor lattice Schwinger model: Hamiltonian, ansatz, VQE and tomography.";

  py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("num_sites", &ModelParams::num_sites)
      .def_readwrite("num_flavors", &ModelParams::num_flavors)
      .def_readwrite("x", &ModelParams::x)
      .def_readwrite("mu", &ModelParams::mu)
      .def_readwrite("nu", &ModelParams::nu)
      .def_property_readonly("num_qubits", &ModelParams::num_qubits)
      .def("validate", &ModelParams::validate);

  m.def(
      "from_couplings",
      [](int n, double x, const Vec& m_over_g, const Vec& kappa_over_g) {
        return from_couplings(n, x, m_over_g, kappa_over_g);
      },
      py::arg("num_sites"), py::arg("x"), py::arg("m_over_g"), py::arg("kappa_over_g"));
  m.def("with_chemical_potential_difference", &with_chemical_potential_difference,
        py::arg("base"), py::arg("K"));

  py::class_<PauliSum>(m, "PauliSum")
      .def_property_readonly("num_qubits", &PauliSum::num_qubits)
      .def("terms", [](const PauliSum& s) { return s.terms(); })
      .def("to_matrix", [](const PauliSum& s) { return to_matrix(s); })
      .def("__str__", [](const PauliSum& s) { return to_text(s); })
      .def("__len__", &PauliSum::size);

  m.def("parse_pauli_sum", &parse_pauli_sum);
  m.def("build_hamiltonian", &build_hamiltonian);
  m.def("total_charge", &total_charge);
  m.def("particle_number", &particle_number, py::arg("flavor"), py::arg("params"));
  m.def(
      "measurement_bases",
      [](const PauliSum& h) {
        std::vector<std::string> out;
        for (const auto& g : qubitwise_commuting_groups(h.labels(false))) out.push_back(g.basis);
        return out;
      },
      "Qubitwise-commuting measurement bases for the non-identity strings of h.");

  m.def(
      "ground_state",
      [](const ModelParams& p) {
        const auto g = exact_ground_state(build_hamiltonian(p), charge_neutral_sector(p));
        return py::make_tuple(g.energy, g.state.to_eigen(), g.gap);
      },
      "(energy, amplitudes, gap) in the charge-neutral sector.");

  m.def("num_ansatz_parameters", &num_ansatz_parameters, py::arg("params"),
        py::arg("layers") = 1);
  m.def(
      "trial_state",
      [](const ModelParams& p, const Vec& theta, int layers) {
        return prepare_trial_state(p, theta, layers).to_eigen();
      },
      py::arg("params"), py::arg("theta"), py::arg("layers") = 1);
  m.def(
      "ansatz_qasm",
      [](const ModelParams& p, const Vec& theta, bool native) {
        auto c = build_ansatz_circuit(p, theta);
        if (native) c = decompose_to_native(c);
        return export_qasm(c);
      },
      py::arg("params"), py::arg("theta"), py::arg("native") = true);

  m.def(
      "estimate_energy",
      [](const Vec& theta, const ModelParams& p, int shots, const std::string& backend,
         std::uint64_t seed, double p2, double spam) {
        const auto e = estimate_energy(theta, p, shots, make_backend(backend, seed, p2, spam));
        return py::make_tuple(e.energy, e.std_error);
      },
      py::arg("theta"), py::arg("params"), py::arg("shots") = 100,
      py::arg("backend") = "exact", py::arg("seed") = 0, py::arg("p_twoqubit") = 0.01,
      py::arg("p_spam") = 0.005, "(energy, stderr) of W at theta.");

  m.def(
      "run_vqe",
      [](const ModelParams& p, int iterations, std::uint64_t seed, const std::string& backend,
         std::uint64_t backend_seed) {
        SpsaConfig cfg;
        cfg.iterations = iterations;
        cfg.seed = seed;
        const auto r = spsa_run(cfg, p, make_backend(backend, backend_seed, 0.01, 0.005));
        return to_python(summary_json(r));
      },
      py::arg("params"), py::arg("iterations") = 150, py::arg("seed") = 0,
      py::arg("backend") = "exact", py::arg("backend_seed") = 0,
      "SPSA run; returns the summary dictionary written by the vqe command.");

  m.def(
      "exact_scan",
      [](const ModelParams& base, const Vec& ks) {
        const auto pts = scan(base, ks, ExactScan{});
        auto crit = nlohmann::json::array();
        for (const auto& c : critical_points(pts, base.x)) crit.push_back(to_json(c));
        return to_python(crit);
      },
      py::arg("base"), py::arg("K_values"), "Critical points of an exact-diagonalization scan.");

  m.def(
      "qmi",
      [](const Eigen::MatrixXcd& rho, const std::vector<int>& subset_a) {
        const DensityMatrix d(rho);
        return qmi(d, Bipartition{d.num_qubits(), subset_a});
      },
      py::arg("rho"), py::arg("subset_a"));
  m.def(
      "reconstruct",
      [](const Eigen::VectorXcd& psi, int shots, std::uint64_t seed) {
        std::vector<Complex> a(psi.data(), psi.data() + psi.size());
        const auto s = StateVector::from_amplitudes(std::move(a));
        return Eigen::MatrixXcd(project_to_physical(linear_inversion(tomography_measure(s, shots, seed))).matrix());
      },
      py::arg("psi"), py::arg("shots"), py::arg("seed"),
      "Sampled Pauli tomography followed by the physical projection.");

  m.def(
      "preset",
      [](const std::string& name) { return to_python(cli::preset_json(name)); },
      py::arg("name"));
  m.attr("SCHEMA_VERSION") = cli::kSchemaVersion;
}
