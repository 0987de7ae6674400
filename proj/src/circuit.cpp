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

#include "schwinger/circuit.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "schwinger/errors.hpp"
#include "schwinger/pauli.hpp"
#include "schwinger/simulator.hpp"

namespace schwinger {

std::string gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::R: return "r";
    case GateKind::Rz: return "rz";
    case GateKind::X: return "x";
    case GateKind::Uxy: return "uxy";
    case GateKind::ZZ: return "zz";
    case GateKind::Barrier: return "barrier";
  }
  return "?";
}

Gate Gate::zz(int i, int j, double theta) { return {GateKind::ZZ, i, j, theta, 0.0}; }

void Circuit::validate() const {
  if (num_qubits <= 0) throw UsageError("circuit register must be positive");
  for (const auto& g : gates) {
    if (g.is_barrier()) continue;
    if (g.q0 < 0 || g.q0 >= num_qubits) {
      throw UsageError(gate_name(g.kind) + " acts on qubit " + std::to_string(g.q0) +
                       " outside register of " + std::to_string(num_qubits));
    }
    if (g.is_two_qubit()) {
      if (g.q1 < 0 || g.q1 >= num_qubits) {
        throw UsageError(gate_name(g.kind) + " acts on qubit " + std::to_string(g.q1) +
                         " outside register of " + std::to_string(num_qubits));
      }
      if (g.q0 == g.q1) throw UsageError("two-qubit gate needs distinct qubits");
    }
  }
}

std::size_t Circuit::two_qubit_count() const {
  std::size_t n = 0;
  for (const auto& g : gates) n += g.is_two_qubit() ? 1 : 0;
  return n;
}

Eigen::Matrix2cd single_qubit_matrix(const Gate& g) {
  using std::cos, std::sin, std::exp;
  constexpr Complex kI{0.0, 1.0};
  Eigen::Matrix2cd u;
  switch (g.kind) {
    case GateKind::R: {
      const double c = cos(g.theta / 2), s = sin(g.theta / 2);
      u << c, -kI * s * exp(-kI * g.phi), -kI * s * exp(kI * g.phi), c;
      return u;
    }
    case GateKind::Rz:
      u << exp(-kI * (g.theta / 2)), 0, 0, exp(kI * (g.theta / 2));
      return u;
    case GateKind::X:
      u << 0, 1, 1, 0;
      return u;
    default:
      throw UsageError(gate_name(g.kind) + " is not a single-qubit gate");
  }
}

Eigen::Matrix4cd two_qubit_matrix(const Gate& g) {
  using std::cos, std::sin, std::exp;
  constexpr Complex kI{0.0, 1.0};
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  switch (g.kind) {
    case GateKind::Uxy: {
      // (XX + YY) = 2(|01><10| + |10><01|), zero on |00>, |11>.
      const double c = cos(g.theta), s = sin(g.theta);
      u(0, 0) = 1;
      u(1, 1) = c;
      u(1, 2) = -kI * s;
      u(2, 1) = -kI * s;
      u(2, 2) = c;
      u(3, 3) = 1;
      return u;
    }
    case GateKind::ZZ: {
      const Complex m = exp(-kI * (g.theta / 2)), p = exp(kI * (g.theta / 2));
      u.diagonal() << m, p, p, m;
      return u;
    }
    default:
      throw UsageError(gate_name(g.kind) + " is not a two-qubit gate");
  }
}

Eigen::MatrixXcd circuit_unitary(const Circuit& c) {
  c.validate();
  if (c.num_qubits > kDenseQubitCap) {
    throw ResourceError("circuit unitary beyond dense cap");
  }
  const auto dim = std::uint64_t{1} << c.num_qubits;
  Eigen::MatrixXcd u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t col = 0; col < dim; ++col) {
    auto psi = StateVector::basis_state(c.num_qubits, col);
    psi.apply(c);
    u.col(static_cast<Eigen::Index>(col)) = psi.to_eigen();
  }
  return u;
}

double unitary_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw UsageError("unitary_distance: shape mismatch");
  }
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex{1.0};
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace schwinger
