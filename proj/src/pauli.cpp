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

#include "schwinger/pauli.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "schwinger/errors.hpp"

namespace schwinger {
namespace {

constexpr Complex kI{0.0, 1.0};

// Product of two single-qubit Paulis: a·b = phase·result.
std::pair<Pauli, Complex> multiply_single(Pauli a, Pauli b) {
  if (a == Pauli::I) return {b, 1.0};
  if (b == Pauli::I) return {a, 1.0};
  if (a == b) return {Pauli::I, 1.0};
  const auto ai = static_cast<int>(a);
  const auto bi = static_cast<int>(b);
  const auto c = static_cast<Pauli>(ai ^ bi);
  // X->Y->Z->X is the positive cycle.
  const bool cyclic = ((bi - ai + 3) % 3) == 1;
  return {c, cyclic ? kI : -kI};
}

std::string format_coefficient(Complex c) {
  std::string out = fmt::format("{}", c.real());
  if (!std::signbit(c.imag())) out += '+';
  out += fmt::format("{}", c.imag());
  out += 'j';
  return out;
}

double parse_double(std::string_view& s, std::string_view line) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{}) {
    throw UsageError("malformed coefficient in Pauli term: '" +
                     std::string(line) + "'");
  }
  s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
  return v;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

char to_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw UsageError(std::string("invalid Pauli letter '") + c + "'");
  }
}

void check_label(std::string_view label) {
  if (label.empty()) throw UsageError("empty Pauli label");
  if (label.size() > 63) throw UsageError("Pauli label longer than 63 qubits");
  for (char c : label) pauli_from_char(c);
}

PauliString::PauliString(std::string_view label, Complex coefficient)
    : coefficient_(coefficient) {
  check_label(label);
  ops_.reserve(label.size());
  for (char c : label) ops_.push_back(pauli_from_char(c));
}

PauliString PauliString::identity(int num_qubits, Complex coefficient) {
  if (num_qubits <= 0) throw UsageError("register size must be positive");
  return PauliString(std::string(static_cast<std::size_t>(num_qubits), 'I'),
                     coefficient);
}

PauliString PauliString::single(int num_qubits, int qubit, Pauli p,
                                Complex coefficient) {
  if (qubit < 0 || qubit >= num_qubits) {
    throw UsageError("qubit index " + std::to_string(qubit) +
                     " out of range for register of " +
                     std::to_string(num_qubits));
  }
  auto s = identity(num_qubits, coefficient);
  s.ops_[static_cast<std::size_t>(qubit)] = p;
  return s;
}

std::string PauliString::label() const {
  std::string out;
  out.reserve(ops_.size());
  for (auto p : ops_) out += to_char(p);
  return out;
}

int PauliString::weight() const {
  return static_cast<int>(
      std::count_if(ops_.begin(), ops_.end(), [](Pauli p) { return p != Pauli::I; }));
}

PauliString PauliString::scaled(Complex factor) const {
  PauliString out = *this;
  out.coefficient_ *= factor;
  return out;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw UsageError("cannot multiply Pauli strings of lengths " +
                     std::to_string(a.num_qubits()) + " and " +
                     std::to_string(b.num_qubits()));
  }
  std::string label(static_cast<std::size_t>(a.num_qubits()), 'I');
  Complex phase = a.coefficient() * b.coefficient();
  for (int q = 0; q < a.num_qubits(); ++q) {
    const auto [p, ph] = multiply_single(a.op(q), b.op(q));
    label[static_cast<std::size_t>(q)] = to_char(p);
    phase *= ph;
  }
  return PauliString(label, phase);
}

Complex PauliMasks::phase(std::uint64_t basis_index) const {
  static constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Complex ph = kIPowers[y_count & 3];
  if (std::popcount(basis_index & z_mask) & 1) ph = -ph;
  return ph;
}

PauliMasks masks_of(std::string_view label) {
  check_label(label);
  PauliMasks m;
  const auto n = label.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - i);
    switch (label[i]) {
      case 'X': m.x_mask |= bit; break;
      case 'Y': m.x_mask |= bit; m.z_mask |= bit; ++m.y_count; break;
      case 'Z': m.z_mask |= bit; break;
      default: break;
    }
  }
  return m;
}

PauliSum::PauliSum(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits <= 0 || num_qubits > 63) {
    throw UsageError("register size must be in [1, 63], got " +
                     std::to_string(num_qubits));
  }
}

PauliSum PauliSum::identity(int num_qubits, Complex coefficient) {
  PauliSum s(num_qubits);
  s.add(PauliString::identity(num_qubits, coefficient));
  return s;
}

PauliSum PauliSum::from_string(const PauliString& p) {
  PauliSum s(p.num_qubits());
  s.add(p);
  return s;
}

void PauliSum::add(const PauliString& s) { add(s.label(), s.coefficient()); }

void PauliSum::add(std::string_view label, Complex coefficient) {
  check_label(label);
  if (static_cast<int>(label.size()) != num_qubits_) {
    throw UsageError("label '" + std::string(label) + "' does not match register of " +
                     std::to_string(num_qubits_) + " qubits");
  }
  terms_[std::string(label)] += coefficient;
}

Complex PauliSum::coefficient(std::string_view label) const {
  const auto it = terms_.find(std::string(label));
  return it == terms_.end() ? Complex{} : it->second;
}

Complex PauliSum::identity_coefficient() const {
  return coefficient(std::string(static_cast<std::size_t>(num_qubits_), 'I'));
}

std::vector<std::string> PauliSum::labels(bool include_identity) const {
  std::vector<std::string> out;
  out.reserve(terms_.size());
  for (const auto& [label, c] : terms_) {
    if (!include_identity &&
        label.find_first_not_of('I') == std::string::npos) {
      continue;
    }
    out.push_back(label);
  }
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [tol](const auto& kv) {
    return std::abs(kv.second.imag()) <= tol;
  });
}

bool PauliSum::is_diagonal() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) {
    return kv.first.find_first_of("XY") == std::string::npos;
  });
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.num_qubits_ != num_qubits_) {
    throw UsageError("cannot add Pauli sums on different register sizes");
  }
  for (const auto& [label, c] : other.terms_) terms_[label] += c;
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  if (other.num_qubits_ != num_qubits_) {
    throw UsageError("cannot subtract Pauli sums on different register sizes");
  }
  for (const auto& [label, c] : other.terms_) terms_[label] -= c;
  return *this;
}

PauliSum& PauliSum::operator*=(Complex factor) {
  for (auto& [label, c] : terms_) c *= factor;
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.num_qubits_ != b.num_qubits_) {
    throw UsageError("cannot multiply Pauli sums on different register sizes");
  }
  PauliSum out(a.num_qubits_);
  for (const auto& [la, ca] : a.terms_) {
    const PauliString pa(la, ca);
    for (const auto& [lb, cb] : b.terms_) {
      out.add(multiply(pa, PauliString(lb, cb)));
    }
  }
  return out;
}

PauliSum simplify(const PauliSum& s, double epsilon) {
  PauliSum out(s.num_qubits());
  for (const auto& [label, c] : s.terms()) {
    double re = std::abs(c.real()) < epsilon ? 0.0 : c.real();
    double im = std::abs(c.imag()) < epsilon ? 0.0 : c.imag();
    if (std::abs(Complex{re, im}) < epsilon) continue;
    out.add(label, {re, im});
  }
  return out;
}

Eigen::MatrixXcd to_matrix(const PauliSum& s, int cap) {
  if (s.num_qubits() > cap) {
    throw ResourceError("dense matrix for " + std::to_string(s.num_qubits()) +
                        " qubits exceeds cap of " + std::to_string(cap));
  }
  const auto dim = Eigen::Index{1} << s.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [label, c] : s.terms()) {
    const auto masks = masks_of(label);
    for (Eigen::Index b = 0; b < dim; ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      m(static_cast<Eigen::Index>(ub ^ masks.x_mask), b) += c * masks.phase(ub);
    }
  }
  return m;
}

Eigen::MatrixXcd to_matrix(const PauliString& s, int cap) {
  return to_matrix(PauliSum::from_string(s), cap);
}

std::string to_text(const PauliSum& s) {
  std::string out;
  for (const auto& [label, c] : s.terms()) {
    out += format_coefficient(c);
    out += ' ';
    out += label;
    out += '\n';
  }
  return out;
}

PauliSum parse_pauli_sum(std::string_view text) {
  std::optional<PauliSum> sum;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty() || line.front() == '#') continue;

    const auto space = line.find_first_of(" \t");
    if (space == std::string_view::npos) {
      throw UsageError("Pauli term needs '<coeff> <label>': '" + std::string(line) + "'");
    }
    auto coeff = line.substr(0, space);
    const auto label = trim(line.substr(space));
    const double re = parse_double(coeff, line);
    if (coeff.empty() || (coeff.front() != '+' && coeff.front() != '-')) {
      throw UsageError("coefficient must have the form <re>±<im>j: '" +
                       std::string(line) + "'");
    }
    const double im = parse_double(coeff, line);
    if (coeff != "j") {
      throw UsageError("coefficient must end in 'j': '" + std::string(line) + "'");
    }
    if (!sum) sum.emplace(static_cast<int>(label.size()));
    sum->add(label, {re, im});
  }
  if (!sum) throw UsageError("Pauli sum text contains no terms");
  return *sum;
}

bool qubitwise_compatible(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 'I' && b[i] != 'I' && a[i] != b[i]) return false;
  }
  return true;
}

std::vector<MeasurementGroup> qubitwise_commuting_groups(
    std::span<const std::string> labels) {
  if (labels.empty()) return {};
  const auto n = labels.front().size();
  for (const auto& l : labels) {
    check_label(l);
    if (l.size() != n) throw UsageError("labels must share one register size");
  }

  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto weight = [&](std::size_t i) {
    return std::count_if(labels[i].begin(), labels[i].end(),
                         [](char c) { return c != 'I'; });
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto wa = weight(a);
    const auto wb = weight(b);
    if (wa != wb) return wa > wb;
    return std::lexicographical_compare(labels[a].rbegin(), labels[a].rend(),
                                        labels[b].rbegin(), labels[b].rend());
  });

  std::vector<MeasurementGroup> groups;
  for (auto idx : order) {
    const auto& label = labels[idx];
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return qubitwise_compatible(g.basis, label);
    });
    if (it == groups.end()) {
      groups.push_back({label, {label}});
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (it->basis[i] == 'I') it->basis[i] = label[i];
    }
    it->members.push_back(label);
  }
  return groups;
}

}  // namespace schwinger
