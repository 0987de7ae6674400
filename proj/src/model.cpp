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

#include "schwinger/model.hpp"

#include <cmath>
#include <string>

#include "schwinger/errors.hpp"

namespace schwinger {
namespace {

constexpr Complex kI{0.0, 1.0};

PauliSum single(int n, int q, Pauli p, Complex c = 1.0) {
  return PauliSum::from_string(PauliString::single(n, q, p, c));
}

// c† = |1><0| = (X - iY)/2 under the '1 = occupied' convention.
PauliSum creation(int n, int q) {
  return single(n, q, Pauli::X, 0.5) + single(n, q, Pauli::Y, -0.5 * kI);
}

PauliSum annihilation(int n, int q) {
  return single(n, q, Pauli::X, 0.5) + single(n, q, Pauli::Y, 0.5 * kI);
}

void check_site(int site, const ModelParams& params) {
  if (site < 0 || site >= params.num_sites) {
    throw UsageError("site " + std::to_string(site) + " out of range [0, " +
                     std::to_string(params.num_sites) + ")");
  }
}

}  // namespace

void ModelParams::validate() const {
  if (num_sites < 2) throw UsageError("num_sites must be >= 2");
  if (num_flavors < 1) throw UsageError("num_flavors must be >= 1");
  if (num_qubits() > 63) throw UsageError("register larger than 63 qubits");
  if (!(x >= 0.0)) throw UsageError("x must be non-negative");
  const auto f = static_cast<std::size_t>(num_flavors);
  if (mu.size() != f || nu.size() != f) {
    throw UsageError("mu and nu must have one entry per flavor");
  }
}

ChemicalPotentialPoint chemical_potential_point(double x,
                                                std::span<const double> kappa_over_g) {
  if (!(x >= 0.0)) throw UsageError("x must be non-negative");
  ChemicalPotentialPoint p;
  p.kappa_over_g.assign(kappa_over_g.begin(), kappa_over_g.end());
  const double scale = 2.0 * std::sqrt(x);
  for (double k : kappa_over_g) p.nu.push_back(scale * k);
  return p;
}

ModelParams from_couplings(int num_sites, double x,
                           std::span<const double> m_over_g,
                           std::span<const double> kappa_over_g) {
  if (!(x >= 0.0)) throw UsageError("x must be non-negative");
  if (m_over_g.size() != kappa_over_g.size()) {
    throw UsageError("m/g and kappa/g must have one entry per flavor");
  }
  ModelParams p;
  p.num_sites = num_sites;
  p.num_flavors = static_cast<int>(m_over_g.size());
  p.x = x;
  const double scale = 2.0 * std::sqrt(x);
  for (double m : m_over_g) p.mu.push_back(scale * m);
  p.nu = chemical_potential_point(x, kappa_over_g).nu;
  p.validate();
  return p;
}

ModelParams with_chemical_potential_difference(const ModelParams& base, double K) {
  base.validate();
  if (base.num_flavors < 2) {
    throw UsageError("a chemical potential difference needs at least two flavors");
  }
  ModelParams p = base;
  p.nu[0] = p.nu[1] + 2.0 * std::sqrt(p.x) * K;
  return p;
}

int qubit_index(int site, int flavor, int num_flavors) {
  if (num_flavors < 1 || flavor < 0 || flavor >= num_flavors || site < 0) {
    throw UsageError("invalid (site, flavor) = (" + std::to_string(site) + ", " +
                     std::to_string(flavor) + ") for F = " +
                     std::to_string(num_flavors));
  }
  return site * num_flavors + flavor;
}

PauliSum occupation(int qubit, int num_qubits) {
  return 0.5 * (PauliSum::identity(num_qubits) - single(num_qubits, qubit, Pauli::Z));
}

int staggered_background(int site, int num_flavors) {
  return (site % 2 == 1) ? num_flavors : 0;
}

PauliSum staggered_charge(int site, const ModelParams& params) {
  params.validate();
  check_site(site, params);
  const int n = params.num_qubits();
  auto q = PauliSum::identity(n, -static_cast<double>(
                                     staggered_background(site, params.num_flavors)));
  for (int f = 0; f < params.num_flavors; ++f) {
    q += occupation(qubit_index(site, f, params.num_flavors), n);
  }
  return simplify(q);
}

PauliSum total_charge(const ModelParams& params) {
  PauliSum q(params.num_qubits());
  for (int s = 0; s < params.num_sites; ++s) q += staggered_charge(s, params);
  return simplify(q);
}

PauliSum electric_field(int link, const ModelParams& params) {
  params.validate();
  if (link < 0 || link >= params.num_sites - 1) {
    throw UsageError("link " + std::to_string(link) + " out of range [0, " +
                     std::to_string(params.num_sites - 1) + ")");
  }
  PauliSum l(params.num_qubits());
  for (int k = 0; k <= link; ++k) l += staggered_charge(k, params);
  return simplify(l);
}

PauliSum particle_number(int flavor, const ModelParams& params) {
  params.validate();
  if (flavor < 0 || flavor >= params.num_flavors) {
    throw UsageError("flavor " + std::to_string(flavor) + " out of range");
  }
  PauliSum n(params.num_qubits());
  for (int s = 0; s < params.num_sites; ++s) {
    n += occupation(qubit_index(s, flavor, params.num_flavors), params.num_qubits());
  }
  return simplify(n);
}

int neutral_particle_count(const ModelParams& params) {
  return params.num_flavors * (params.num_sites / 2);
}

PauliSum hopping_term(const ModelParams& params) {
  params.validate();
  const int n = params.num_qubits();
  const int F = params.num_flavors;
  PauliSum h(n);
  for (int s = 0; s + 1 < params.num_sites; ++s) {
    for (int f = 0; f < F; ++f) {
      const int a = qubit_index(s, f, F);
      const int b = qubit_index(s + 1, f, F);
      auto string = PauliSum::identity(n);
      for (int k = a + 1; k < b; ++k) string = string * single(n, k, Pauli::Z);
      const auto forward = creation(n, a) * string * annihilation(n, b);
      const auto backward = annihilation(n, a) * string * creation(n, b);
      h += (-kI * params.x) * (forward - backward);
    }
  }
  return simplify(h);
}

PauliSum mass_term(const ModelParams& params) {
  params.validate();
  const int n = params.num_qubits();
  PauliSum m(n);
  for (int s = 0; s < params.num_sites; ++s) {
    const double stagger = (s % 2 == 0) ? 1.0 : -1.0;
    for (int f = 0; f < params.num_flavors; ++f) {
      const auto fi = static_cast<std::size_t>(f);
      const double c = params.mu[fi] * stagger + params.nu[fi];
      m += c * occupation(qubit_index(s, f, params.num_flavors), n);
    }
  }
  return simplify(m);
}

PauliSum electric_energy(const ModelParams& params) {
  params.validate();
  PauliSum e(params.num_qubits());
  for (int link = 0; link + 1 < params.num_sites; ++link) {
    const auto l = electric_field(link, params);
    e += l * l;
  }
  return simplify(e);
}

PauliSum build_hamiltonian(const ModelParams& params) {
  return simplify(hopping_term(params) + mass_term(params) + electric_energy(params));
}

}  // namespace schwinger
