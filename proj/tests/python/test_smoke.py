# Copyright 2026 The schwinger-vqe Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
import numpy as np
import pytest

import schwinger_vqe as sv


def test_table_energies():
    assert sv.ground_state(sv.table_point(-14.0))[0] == pytest.approx(-223.0, abs=1e-9)
    assert sv.ground_state(sv.table_point(10.0))[0] == pytest.approx(1.0, abs=1e-9)
    energy, psi, gap = sv.ground_state(sv.table_point(0.0))
    assert energy == pytest.approx(-30.5644221304509, abs=1e-9)
    assert np.linalg.norm(psi) == pytest.approx(1.0)
    assert gap > 0


def test_hamiltonian_matrix_is_hermitian():
    h = sv.build_hamiltonian(sv.table_point(0.0)).to_matrix()
    assert h.shape == (16, 16)
    assert np.allclose(h, h.conj().T)
    text = str(sv.build_hamiltonian(sv.table_point(0.0)))
    assert sv.parse_pauli_sum(text).terms() == sv.build_hamiltonian(sv.table_point(0.0)).terms()


def test_measurement_bases():
    h = sv.build_hamiltonian(sv.from_couplings(2, 16.0, [0.1, 0.4], [0.3, -0.2]))
    assert sorted(sv.measurement_bases(h)) == ["IXZY", "XZYI", "YZXZ", "ZYZX", "ZZII"]


def test_trial_state_and_estimate():
    p = sv.table_point(0.0)
    theta = [0.0] * sv.num_ansatz_parameters(p)
    psi = sv.trial_state(p, theta)
    assert abs(psi[0b0101]) == pytest.approx(1.0)
    exact, stderr = sv.estimate_energy(theta, p)
    assert stderr == 0.0
    h = sv.build_hamiltonian(p).to_matrix()
    assert exact == pytest.approx(np.real(psi.conj() @ h @ psi))
    a = sv.estimate_energy(theta, p, 100, "sampled", 3)
    assert a == sv.estimate_energy(theta, p, 100, "sampled", 3)


def test_vqe_summary():
    s = sv.run_vqe(sv.table_point(-14.0), iterations=150, seed=0)
    assert s["E_min_simulated"] == pytest.approx(-223.0, abs=2.1)
    assert len(s["theta_opt"]) == 7


def test_scan_and_qmi():
    crit = sv.exact_scan(sv.from_couplings(2, 16.0, [0.0, 0.0], [0.0, 0.0]), [-14.0, 0.0, 10.0])
    assert [round(c["K_crit"], 2) for c in crit] == [-3.95, 3.95]
    _, psi, _ = sv.ground_state(sv.table_point(0.0))
    rho = np.outer(psi, psi.conj())
    assert sv.qmi(rho, [0, 1]) > 1.0
    rec = sv.reconstruct(psi, 400, 0)
    assert np.real(psi.conj() @ rec @ psi) > 0.9


def test_qasm_and_errors():
    p = sv.table_point(0.0)
    assert sv.ansatz_qasm(p, [0.1] * 7).startswith("OPENQASM 3.0;")
    with pytest.raises(ValueError):
        sv.trial_state(p, [0.0] * 3)
    with pytest.raises(ValueError):
        sv.preset("K7")
    assert sv.preset("K0")["schema_version"] == sv.SCHEMA_VERSION
