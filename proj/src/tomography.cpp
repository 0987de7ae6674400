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

#include "schwinger/tomography.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "schwinger/errors.hpp"
#include "schwinger/pauli.hpp"
#include "schwinger/rng.hpp"

namespace schwinger {
namespace {

void check_tomography_size(int q) {
  if (q < 1) throw UsageError("tomography needs at least one qubit");
  if (q > kTomographyQubitCap) {
    throw ResourceError("tomography is capped at " + std::to_string(kTomographyQubitCap) +
                        " qubits");
  }
}

std::uint64_t parse_bits(const std::string& bits) {
  std::uint64_t idx = 0;
  for (char c : bits) idx = (idx << 1) | static_cast<std::uint64_t>(c == '1');
  return idx;
}

std::string bitstring(std::uint64_t index, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if (index & (std::uint64_t{1} << (n - 1 - i))) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

template <class Sampler>
TomographyDataset measure_all(int q, int shots, std::uint64_t seed, Sampler&& sample) {
  check_tomography_size(q);
  if (shots < 1) throw UsageError("tomography needs shots >= 1");
  TomographyDataset d;
  d.num_qubits = q;
  d.shots = shots;
  d.seed = seed;
  const auto bases = tomography_bases(q);
  d.counts.reserve(bases.size());
  for (std::size_t b = 0; b < bases.size(); ++b) {
    d.counts.push_back(sample(bases[b], derive_seed(seed, b)));
  }
  return d;
}

}  // namespace

std::vector<std::string> tomography_bases(int num_qubits) {
  check_tomography_size(num_qubits);
  std::vector<std::string> out{""};
  for (int i = 0; i < num_qubits; ++i) {
    std::vector<std::string> next;
    for (const auto& prefix : out) {
      for (char c : {'X', 'Y', 'Z'}) next.push_back(prefix + c);
    }
    out = std::move(next);
  }
  return out;
}

void TomographyDataset::validate() const {
  const auto bases = tomography_bases(num_qubits);
  if (counts.size() != bases.size()) {
    throw UsageError(fmt::format("tomography dataset has {} bases, expected {}", counts.size(),
                                 bases.size()));
  }
  for (std::size_t b = 0; b < bases.size(); ++b) {
    const auto& c = counts[b];
    if (c.basis != bases[b]) throw UsageError("tomography basis '" + c.basis + "' out of order");
    if (c.shots != shots) throw UsageError("tomography dataset has non-uniform shots");
    int total = 0;
    for (const auto& [bits, k] : c.outcomes) {
      if (static_cast<int>(bits.size()) != num_qubits) throw UsageError("bad outcome length");
      total += k;
    }
    if (total != shots) throw UsageError("tomography counts do not sum to shots");
  }
}

TomographyDataset tomography_measure(const StateVector& psi, int shots, std::uint64_t seed) {
  return measure_all(psi.num_qubits(), shots, seed, [&](const std::string& basis, auto s) {
    return sample_pauli_basis(psi, basis, shots, s);
  });
}

TomographyDataset tomography_measure(const DensityMatrix& rho, int shots, std::uint64_t seed) {
  return measure_all(rho.num_qubits(), shots, seed, [&](const std::string& basis, auto s) {
    return sample_pauli_basis(rho, basis, shots, s);
  });
}

TomographyDataset tomography_measure(const Circuit& circuit, const NoiseModel& noise, int shots,
                                     std::uint64_t seed) {
  return tomography_measure(run_noisy(circuit, noise, ExactDensity{}), shots, seed);
}

Eigen::MatrixXcd linear_inversion(std::span<const std::vector<double>> distributions,
                                  int num_qubits) {
  const auto bases = tomography_bases(num_qubits);
  if (distributions.size() != bases.size()) {
    throw UsageError("incomplete tomography data");
  }
  const auto dim = std::uint64_t{1} << num_qubits;
  for (const auto& p : distributions) {
    if (p.size() != dim) throw UsageError("distribution length does not match register");
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
  const std::uint64_t num_labels = std::uint64_t{1} << (2 * num_qubits);
  std::string label(static_cast<std::size_t>(num_qubits), 'I');
  for (std::uint64_t code = 0; code < num_labels; ++code) {
    for (int i = 0; i < num_qubits; ++i) {
      label[static_cast<std::size_t>(i)] = "IXYZ"[(code >> (2 * (num_qubits - 1 - i))) & 3];
    }
    double value = 1.0;
    if (code != 0) {
      double sum = 0.0;
      int used = 0;
      for (std::size_t b = 0; b < bases.size(); ++b) {
        bool ok = true;
        for (int i = 0; i < num_qubits && ok; ++i) {
          const char l = label[static_cast<std::size_t>(i)];
          ok = l == 'I' || l == bases[b][static_cast<std::size_t>(i)];
        }
        if (!ok) continue;
        sum += expectation_from_distribution(distributions[b], label);
        ++used;
      }
      value = sum / used;
    }
    const auto masks = masks_of(label);
    for (std::uint64_t b = 0; b < dim; ++b) {
      rho(static_cast<Eigen::Index>(b ^ masks.x_mask), static_cast<Eigen::Index>(b)) +=
          value * masks.phase(b);
    }
  }
  rho /= static_cast<double>(dim);
  // Exact Hermitian symmetrization removes rounding asymmetry.
  return (rho + rho.adjoint()) / 2.0;
}

Eigen::MatrixXcd linear_inversion(const TomographyDataset& d) {
  d.validate();
  const auto dim = std::size_t{1} << d.num_qubits;
  std::vector<std::vector<double>> dists;
  dists.reserve(d.counts.size());
  for (const auto& c : d.counts) {
    std::vector<double> p(dim, 0.0);
    for (const auto& [bits, k] : c.outcomes) {
      p[parse_bits(bits)] = static_cast<double>(k) / c.shots;
    }
    dists.push_back(std::move(p));
  }
  return linear_inversion(dists, d.num_qubits);
}

std::vector<std::vector<double>> exact_tomography_probabilities(const DensityMatrix& rho) {
  std::vector<std::vector<double>> out;
  for (const auto& basis : tomography_bases(rho.num_qubits())) {
    out.push_back(basis_probabilities(rho, basis));
  }
  return out;
}

DensityMatrix project_to_physical(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols()) throw UsageError("matrix must be square");
  const Eigen::MatrixXcd herm = (h + h.adjoint()) / 2.0;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  Eigen::VectorXd lambda = es.eigenvalues();
  const double trace = lambda.sum();
  if (!(trace > 0.0)) throw UsageError("matrix trace must be positive");
  if (lambda.minCoeff() >= 0.0 && std::abs(trace - 1.0) < 1e-14) {
    return DensityMatrix(Eigen::MatrixXcd(herm));
  }
  lambda /= trace;

  // Eigenvalues ascending: clip from the bottom, spreading the deficit over
  // the survivors, until the smallest survivor stays nonnegative.
  const auto d = lambda.size();
  double deficit = 0.0;
  Eigen::Index first = 0;
  while (first < d) {
    const double shifted = lambda(first) + deficit / static_cast<double>(d - first);
    if (shifted >= 0.0) break;
    deficit += lambda(first);
    lambda(first) = 0.0;
    ++first;
  }
  for (Eigen::Index i = first; i < d; ++i) lambda(i) += deficit / static_cast<double>(d - first);

  const auto& v = es.eigenvectors();
  Eigen::MatrixXcd rho = v * lambda.cast<Complex>().asDiagonal() * v.adjoint();
  rho = (rho + rho.adjoint()) / 2.0;
  return DensityMatrix(std::move(rho));
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.num_qubits() != psi.num_qubits()) {
    throw UsageError("state and density matrix sizes differ");
  }
  const auto v = psi.to_eigen();
  const double f = (v.adjoint() * rho.matrix() * v)(0, 0).real();
  return std::clamp(f, 0.0, 1.0);
}

std::vector<int> Bipartition::subset_b() const {
  std::vector<int> b;
  for (int q = 0; q < num_qubits; ++q) {
    if (std::find(subset_a.begin(), subset_a.end(), q) == subset_a.end()) b.push_back(q);
  }
  return b;
}

std::string Bipartition::name() const {
  std::string s;
  for (int q : subset_a) s += std::to_string(q);
  s += '|';
  for (int q : subset_b()) s += std::to_string(q);
  return s;
}

void Bipartition::validate() const {
  if (subset_a.empty() || static_cast<int>(subset_a.size()) >= num_qubits) {
    throw UsageError("bipartition subset must be nonempty and proper");
  }
  std::vector<int> a = subset_a;
  std::sort(a.begin(), a.end());
  if (std::adjacent_find(a.begin(), a.end()) != a.end() || a.front() < 0 ||
      a.back() >= num_qubits) {
    throw UsageError("bipartition has repeated or out-of-range qubits");
  }
}

std::vector<Bipartition> two_by_two_bipartitions() {
  return {{4, {0, 1}}, {4, {0, 2}}, {4, {0, 3}}};
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.num_qubits();
  std::uint64_t keep_mask = 0;
  for (int q : keep) {
    if (q < 0 || q >= n) throw UsageError("partial trace qubit out of range");
    keep_mask |= std::uint64_t{1} << (n - 1 - q);
  }
  const int k = static_cast<int>(keep.size());
  if (k == 0 || std::popcount(keep_mask) != k) {
    throw UsageError("partial trace needs distinct kept qubits");
  }
  auto reduced_index = [&](std::uint64_t full) {
    std::uint64_t r = 0;
    for (int q : keep) r = (r << 1) | ((full >> (n - 1 - q)) & 1);
    return static_cast<Eigen::Index>(r);
  };
  const auto dim = static_cast<std::uint64_t>(rho.matrix().rows());
  const auto rdim = Eigen::Index{1} << k;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rdim, rdim);
  const auto& m = rho.matrix();
  for (std::uint64_t r = 0; r < dim; ++r) {
    for (std::uint64_t c = 0; c < dim; ++c) {
      if ((r & ~keep_mask) != (c & ~keep_mask)) continue;
      out(reduced_index(r), reduced_index(c)) +=
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return DensityMatrix(std::move(out));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix(), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-12) s -= l * std::log2(l);
  }
  return s;
}

double qmi(const DensityMatrix& rho, const Bipartition& part) {
  part.validate();
  if (part.num_qubits != rho.num_qubits()) throw UsageError("bipartition size mismatch");
  const auto b = part.subset_b();
  return von_neumann_entropy(partial_trace(rho, part.subset_a)) +
         von_neumann_entropy(partial_trace(rho, b)) - von_neumann_entropy(rho);
}

std::vector<BootstrapResult> bootstrap(const DensityMatrix& rho,
                                       std::span<const DensityMetric> metrics, int resamples,
                                       int shots, std::uint64_t seed) {
  if (resamples < 2) throw UsageError("bootstrap needs at least two resamples");
  std::vector<BootstrapResult> out(metrics.size());
  for (int r = 0; r < resamples; ++r) {
    const auto d = tomography_measure(rho, shots, derive_seed(seed, static_cast<std::uint64_t>(r)));
    const auto est = project_to_physical(linear_inversion(d));
    for (std::size_t m = 0; m < metrics.size(); ++m) out[m].samples.push_back(metrics[m](est));
  }
  for (auto& res : out) {
    double s = 0.0;
    for (double v : res.samples) s += v;
    res.mean = s / resamples;
    double ss = 0.0;
    for (double v : res.samples) ss += (v - res.mean) * (v - res.mean);
    res.stddev = std::sqrt(ss / (resamples - 1));
  }
  return out;
}

BootstrapResult bootstrap(const DensityMatrix& rho, const DensityMetric& metric, int resamples,
                          int shots, std::uint64_t seed) {
  const DensityMetric one[] = {metric};
  return bootstrap(rho, one, resamples, shots, seed).front();
}

nlohmann::json dataset_json(const TomographyDataset& d) {
  return nlohmann::json{{"num_qubits", d.num_qubits}, {"shots", d.shots}, {"seed", d.seed},
                        {"counts", d.counts}};
}

nlohmann::json density_json(const Eigen::MatrixXcd& m) {
  auto entries = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      entries.push_back({m(r, c).real(), m(r, c).imag()});
    }
  }
  return nlohmann::json{{"dimension", m.rows()}, {"entries", std::move(entries)}};
}

void write_density_csv(std::ostream& os, const Eigen::MatrixXcd& m) {
  const int n = std::countr_zero(static_cast<std::uint64_t>(m.rows()));
  os << "row,col,bitstring_row,bitstring_col,abs,real,imag\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const auto v = m(r, c);
      os << fmt::format("{},{},{},{},{},{},{}\n", r, c,
                        bitstring(static_cast<std::uint64_t>(r), n),
                        bitstring(static_cast<std::uint64_t>(c), n), std::abs(v), v.real(),
                        v.imag());
    }
  }
}

}  // namespace schwinger
