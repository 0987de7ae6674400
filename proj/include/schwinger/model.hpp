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

#pragma once

#include <span>
#include <vector>

#include "schwinger/pauli.hpp"

namespace schwinger {

/// Dimensionless parameters of the multi-flavor lattice Schwinger model.
///   x     = 1/(a g)^2
///   mu_f  = 2 sqrt(x) m_f / g
///   nu_f  = 2 sqrt(x) kappa_f / g
struct ModelParams {
  int num_sites = 2;
  int num_flavors = 2;
  double x = 0.0;
  std::vector<double> mu;
  std::vector<double> nu;

  int num_qubits() const { return num_sites * num_flavors; }
  /// Throws UsageError unless N >= 2, F >= 1, x >= 0 and mu, nu have length F.
  void validate() const;
};

/// Chemical potentials in coupling units and their dimensionless form.
struct ChemicalPotentialPoint {
  std::vector<double> kappa_over_g;
  std::vector<double> nu;
};

ChemicalPotentialPoint chemical_potential_point(double x,
                                                std::span<const double> kappa_over_g);

/// Converts couplings in units of g to dimensionless parameters.
ModelParams from_couplings(int num_sites, double x,
                           std::span<const double> m_over_g,
                           std::span<const double> kappa_over_g);

/// Copy of `base` with nu_0 = nu_1 + 2 sqrt(x) K, i.e. the chemical potential
/// difference K = kappa_0/g - kappa_1/g. Requires F >= 2.
ModelParams with_chemical_potential_difference(const ModelParams& base, double K);

/// Jordan-Wigner ordering: site-major, flavor-minor, p = n F + f.
int qubit_index(int site, int flavor, int num_flavors);

/// Occupation operator (I - Z_p)/2; basis label '1' means occupied.
PauliSum occupation(int qubit, int num_qubits);

/// Staggered background F/2 (1 - (-1)^n): F on odd sites, 0 on even sites.
int staggered_background(int site, int num_flavors);

/// Q_n = Σ_f n_{n,f} - staggered_background(n).
PauliSum staggered_charge(int site, const ModelParams& params);

/// Σ_n Q_n.
PauliSum total_charge(const ModelParams& params);

/// Electric flux on the link (n, n+1) with zero incoming flux: Σ_{k<=n} Q_k.
PauliSum electric_field(int link, const ModelParams& params);

/// N_f = Σ_n n_{n,f}.
PauliSum particle_number(int flavor, const ModelParams& params);

/// Number of particles in a charge-neutral configuration, F floor(N/2).
int neutral_particle_count(const ModelParams& params);

/// -i x Σ_{n,f} (c†_{n,f} Z...Z c_{n+1,f} - h.c.), c† = |1><0|.
PauliSum hopping_term(const ModelParams& params);
/// Σ_{n,f} (mu_f (-1)^n + nu_f) n_{n,f}.
PauliSum mass_term(const ModelParams& params);
/// Σ_{n<N-1} L_n^2, identity offset included.
PauliSum electric_energy(const ModelParams& params);

/// W = hopping + mass/chemical potential + electric energy, simplified.
PauliSum build_hamiltonian(const ModelParams& params);

}  // namespace schwinger
