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

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace schwinger {

enum class GateKind {
  R,        ///< exp(-i θ/2 (cos φ X + sin φ Y))
  Rz,       ///< exp(-i θ/2 Z)
  X,        ///< Pauli X
  Uxy,      ///< exp(-i θ/2 (X_i X_j + Y_i Y_j))
  ZZ,       ///< exp(-i θ/2 Z_i Z_j); the native entangler is ZZ(π/2)
  Barrier,  ///< scheduling marker, no action
};

std::string gate_name(GateKind kind);

struct Gate {
  GateKind kind = GateKind::Barrier;
  int q0 = -1;
  int q1 = -1;
  double theta = 0.0;
  double phi = 0.0;

  static Gate r(int q, double theta, double phi) { return {GateKind::R, q, -1, theta, phi}; }
  static Gate rz(int q, double theta) { return {GateKind::Rz, q, -1, theta, 0.0}; }
  static Gate x(int q) { return {GateKind::X, q, -1, 0.0, 0.0}; }
  static Gate uxy(int i, int j, double theta) { return {GateKind::Uxy, i, j, theta, 0.0}; }
  static Gate zz(int i, int j, double theta);
  static Gate barrier() { return {}; }

  bool is_two_qubit() const { return kind == GateKind::Uxy || kind == GateKind::ZZ; }
  bool is_barrier() const { return kind == GateKind::Barrier; }

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Ordered gate list on a fixed register.
struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;

  /// Throws UsageError when any index is out of range or a two-qubit gate
  /// acts twice on the same qubit.
  void validate() const;
  std::size_t two_qubit_count() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// 2x2 unitary of a single-qubit gate.
Eigen::Matrix2cd single_qubit_matrix(const Gate& g);
/// 4x4 unitary of a two-qubit gate in the basis |q0 q1>, q0 most significant.
Eigen::Matrix4cd two_qubit_matrix(const Gate& g);

/// Full unitary of a circuit (dimension 2^q). Throws ResourceError beyond the
/// dense cap.
Eigen::MatrixXcd circuit_unitary(const Circuit& c);

/// max_ij |a_ij - e^{iφ} b_ij| minimized over the global phase φ (the phase
/// is taken from the overlap tr(b† a)).
double unitary_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace schwinger
