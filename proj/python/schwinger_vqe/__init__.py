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
"""Python bindings for the schwinger-vqe C++ core."""

from ._core import (
    SCHEMA_VERSION,
    ModelParams,
    PauliSum,
    ResourceError,
    UsageError,
    ansatz_qasm,
    build_hamiltonian,
    estimate_energy,
    exact_scan,
    from_couplings,
    ground_state,
    measurement_bases,
    num_ansatz_parameters,
    parse_pauli_sum,
    particle_number,
    preset,
    qmi,
    reconstruct,
    run_vqe,
    total_charge,
    trial_state,
    with_chemical_potential_difference,
)


def table_point(K: float) -> ModelParams:
    """N = F = 2, x = 16, zero masses, nu_1 = 0 and nu_0 = 8 K."""
    base = from_couplings(2, 16.0, [0.0, 0.0], [0.0, 0.0])
    return with_chemical_potential_difference(base, K)


__all__ = [name for name in dir() if not name.startswith("_")]
