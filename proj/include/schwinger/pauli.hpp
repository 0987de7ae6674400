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

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace schwinger {

using Complex = std::complex<double>;

/// Terms with |coefficient| below this are dropped by simplify().
inline constexpr double kPruneEpsilon = 1e-12;
/// Largest register for which dense 2^q x 2^q matrices are built.
inline constexpr int kDenseQubitCap = 12;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// Throws UsageError unless `label` is a nonempty string over {I, X, Y, Z}.
void check_label(std::string_view label);

/// Tensor product of single-qubit Paulis with a complex prefactor.
/// Qubit 0 is the leftmost character of the label.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::string_view label, Complex coefficient = 1.0);

  static PauliString identity(int num_qubits, Complex coefficient = 1.0);
  /// `p` acting on `qubit`, identity elsewhere.
  static PauliString single(int num_qubits, int qubit, Pauli p,
                            Complex coefficient = 1.0);

  int num_qubits() const { return static_cast<int>(ops_.size()); }
  Pauli op(int qubit) const { return ops_.at(static_cast<std::size_t>(qubit)); }
  const Complex& coefficient() const { return coefficient_; }
  std::string label() const;
  /// Number of non-identity positions.
  int weight() const;

  PauliString scaled(Complex factor) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<Pauli> ops_;
  Complex coefficient_{1.0};
};

/// Matrix product a·b as a single string; the coefficient carries the
/// accumulated phase. Throws UsageError on length mismatch.
PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) {
  return multiply(a, b);
}

/// Bit masks describing how a label acts on computational basis states.
/// Bit (q-1-i) corresponds to qubit i, matching q0-most-significant indexing:
///   P|b> = i^y_count * (-1)^popcount(b & z_mask) |b ^ x_mask>
/// where x_mask marks X/Y positions and z_mask marks Y/Z positions.
struct PauliMasks {
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  int y_count = 0;

  Complex phase(std::uint64_t basis_index) const;
};

PauliMasks masks_of(std::string_view label);

/// Weighted sum of Pauli strings on a fixed register. Like terms are
/// collected on insertion; terms are kept in label order so every traversal
/// is deterministic.
class PauliSum {
 public:
  explicit PauliSum(int num_qubits);

  static PauliSum identity(int num_qubits, Complex coefficient = 1.0);
  static PauliSum from_string(const PauliString& s);

  int num_qubits() const { return num_qubits_; }
  const std::map<std::string, Complex>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add(const PauliString& s);
  void add(std::string_view label, Complex coefficient);

  /// Coefficient of `label` (zero when absent).
  Complex coefficient(std::string_view label) const;
  Complex identity_coefficient() const;

  /// Labels in canonical order, optionally skipping the all-identity string.
  std::vector<std::string> labels(bool include_identity = true) const;

  /// True when every coefficient has |imag| <= tol.
  bool is_hermitian(double tol = kPruneEpsilon) const;
  /// True when every term is built from I and Z only.
  bool is_diagonal() const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex factor);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Complex f) { return a *= f; }
  friend PauliSum operator*(Complex f, PauliSum a) { return a *= f; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  friend bool operator==(const PauliSum&, const PauliSum&) = default;

 private:
  int num_qubits_;
  std::map<std::string, Complex> terms_;
};

/// Collects like terms, zeroes real/imaginary parts below `epsilon`, and
/// drops terms whose magnitude falls below `epsilon`.
PauliSum simplify(const PauliSum& s, double epsilon = kPruneEpsilon);

/// Dense matrix Σ c·P. Throws ResourceError when num_qubits > cap.
Eigen::MatrixXcd to_matrix(const PauliSum& s, int cap = kDenseQubitCap);
Eigen::MatrixXcd to_matrix(const PauliString& s, int cap = kDenseQubitCap);

/// Textual format: one `<re>±<im>j <label>` term per line, coefficients in
/// shortest round-trip decimal form. Blank lines and `#` comments are
/// ignored on input.
std::string to_text(const PauliSum& s);
PauliSum parse_pauli_sum(std::string_view text);

struct MeasurementGroup {
  /// Position-wise join of all members; the basis every member is read from.
  std::string basis;
  std::vector<std::string> members;
};

/// True when, at every position, the letters agree or one of them is I.
bool qubitwise_compatible(std::string_view a, std::string_view b);

/// Greedy first-fit grouping. Labels are visited by descending weight, ties
/// broken by lexicographic order of the label read from the highest qubit
/// down; each label joins the first group whose basis it is compatible with.
std::vector<MeasurementGroup> qubitwise_commuting_groups(
    std::span<const std::string> labels);

}  // namespace schwinger
