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

#include "schwinger/ansatz.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "schwinger/errors.hpp"

namespace schwinger {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleEps = 1e-12;

// Reduces an angle to (-pi, pi].
double wrap(double a) {
  a = std::remainder(a, 2 * kPi);
  if (a <= -kPi) a += 2 * kPi;
  return a;
}

bool is_multiple_of_2pi(double a) { return std::abs(std::remainder(a, 2 * kPi)) < kAngleEps; }

// Role a is the wire whose local frame opens with R(pi/2, 0); the pattern is
// symmetric in the pair, so callers choose the roles to line up cancellations.
void append_uxy_native(std::vector<Gate>& out, int a, int b, double theta) {
  const double h = kPi / 2;
  out.push_back(Gate::r(a, h, 0.0));
  out.push_back(Gate::rz(b, h));
  out.push_back(Gate::r(b, h, kPi));
  out.push_back(Gate::zz(a, b, h));
  out.push_back(Gate::rz(a, kPi));
  out.push_back(Gate::rz(b, kPi));
  out.push_back(Gate::r(a, theta, h));
  out.push_back(Gate::r(b, theta, h));
  out.push_back(Gate::zz(a, b, h));
  out.push_back(Gate::r(a, h, kPi));
  out.push_back(Gate::r(b, h, 0.0));
  out.push_back(Gate::rz(b, -h));
}

bool touches(const Gate& g, int q) { return !g.is_barrier() && (g.q0 == q || g.q1 == q); }

// Merges `second` into `first` when both act on the same wire. Returns the
// merged gate, or nullopt when they do not combine. An identity result is
// returned as a barrier-kind sentinel handled by the caller.
std::optional<Gate> merge(const Gate& first, const Gate& second) {
  if (first.kind == GateKind::Rz && second.kind == GateKind::Rz) {
    return Gate::rz(first.q0, first.theta + second.theta);
  }
  if (first.kind == GateKind::X && second.kind == GateKind::X) {
    return Gate::rz(first.q0, 0.0);
  }
  if (first.kind == GateKind::R && second.kind == GateKind::R) {
    const double d = wrap(second.phi - first.phi);
    if (std::abs(d) < kAngleEps) return Gate::r(first.q0, first.theta + second.theta, first.phi);
    if (std::abs(std::abs(d) - kPi) < kAngleEps) {
      return Gate::r(first.q0, first.theta - second.theta, first.phi);
    }
  }
  return std::nullopt;
}

bool is_trivial(const Gate& g) {
  return (g.kind == GateKind::Rz || g.kind == GateKind::R) && is_multiple_of_2pi(g.theta);
}

std::string angle(double v) { return fmt::format("{}", v); }

double parse_angle(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError("bad angle '" + std::string(s) + "' in OpenQASM input");
  }
  return v;
}

int parse_qubit(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.size() < 4 || s.substr(0, 2) != "q[" || s.back() != ']') {
    throw UsageError("bad qubit operand '" + std::string(s) + "'");
  }
  int v = 0;
  const auto body = s.substr(2, s.size() - 3);
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc() || ptr != body.data() + body.size()) {
    throw UsageError("bad qubit operand '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

int num_ansatz_parameters(const ModelParams& params, int layers) {
  params.validate();
  if (layers < 1) throw UsageError("ansatz needs at least one layer");
  return layers * (2 * params.num_qubits() - 1);
}

std::vector<int> initial_occupation(const ModelParams& params) {
  params.validate();
  const int q = params.num_qubits();
  std::vector<int> occ(static_cast<std::size_t>(q), 0);
  for (int p = 1; p < q; p += 2) occ[static_cast<std::size_t>(p)] = 1;

  int charge = 0;
  for (int n = 0; n < params.num_sites; ++n) {
    for (int f = 0; f < params.num_flavors; ++f) {
      charge += occ[static_cast<std::size_t>(qubit_index(n, f, params.num_flavors))];
    }
    charge -= staggered_background(n, params.num_flavors);
  }
  if (charge != 0) {
    for (int n = 0; n < params.num_sites; ++n) {
      for (int f = 0; f < params.num_flavors; ++f) {
        occ[static_cast<std::size_t>(qubit_index(n, f, params.num_flavors))] = n % 2;
      }
    }
  }
  return occ;
}

std::string initial_bitstring(const ModelParams& params) {
  std::string s;
  for (int b : initial_occupation(params)) s += b ? '1' : '0';
  return s;
}

Circuit build_ansatz_circuit(const ModelParams& params, std::span<const double> theta,
                             int layers) {
  const int expected = num_ansatz_parameters(params, layers);
  if (static_cast<int>(theta.size()) != expected) {
    throw UsageError("ansatz expects " + std::to_string(expected) + " angles, got " +
                     std::to_string(theta.size()));
  }
  const int q = params.num_qubits();
  Circuit c;
  c.num_qubits = q;
  const auto occ = initial_occupation(params);
  for (int p = 0; p < q; ++p) {
    if (occ[static_cast<std::size_t>(p)]) c.gates.push_back(Gate::x(p));
  }
  const std::size_t per_layer = static_cast<std::size_t>(2 * q - 1);
  for (int l = 0; l < layers; ++l) {
    const auto t = theta.subspan(static_cast<std::size_t>(l) * per_layer, per_layer);
    for (int start : {0, 1}) {
      for (int i = start; i + 1 < q; i += 2) {
        c.gates.push_back(Gate::uxy(i, i + 1, t[static_cast<std::size_t>(i)]));
      }
    }
    for (int p = 0; p < q; ++p) {
      c.gates.push_back(Gate::rz(p, t[static_cast<std::size_t>(q - 1 + p)]));
    }
  }
  return c;
}

StateVector prepare_trial_state(const ModelParams& params, std::span<const double> theta,
                                int layers) {
  const auto c = build_ansatz_circuit(params, theta, layers);
  StateVector psi(c.num_qubits);
  psi.apply(c);
  return psi;
}

Circuit decompose_to_native(const Circuit& c) {
  c.validate();
  Circuit out;
  out.num_qubits = c.num_qubits;
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::Uxy: {
        const int lo = std::min(g.q0, g.q1), hi = std::max(g.q0, g.q1);
        // Even pairs open on the upper wire, odd pairs on the lower one, so
        // the closing frame of one layer meets the opening frame of the next.
        if (lo % 2 == 0) {
          append_uxy_native(out.gates, hi, lo, g.theta);
        } else {
          append_uxy_native(out.gates, lo, hi, g.theta);
        }
        break;
      }
      case GateKind::ZZ:
        if (std::abs(g.theta - kPi / 2) > kAngleEps) {
          throw UsageError("only ZZ(pi/2) is native");
        }
        out.gates.push_back(g);
        break;
      default:
        out.gates.push_back(g);
    }
  }
  return cancel_adjacent_rotations(out);
}

Circuit cancel_adjacent_rotations(const Circuit& c) {
  c.validate();
  std::vector<std::optional<Gate>> gates(c.gates.begin(), c.gates.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < gates.size(); ++i) {
      if (!gates[i] || gates[i]->is_barrier() || gates[i]->is_two_qubit()) continue;
      if (is_trivial(*gates[i])) {
        gates[i].reset();
        changed = true;
        continue;
      }
      const int q = gates[i]->q0;
      std::size_t j = i + 1;
      while (j < gates.size() && !(gates[j] && touches(*gates[j], q))) ++j;
      if (j == gates.size() || gates[j]->is_two_qubit()) continue;
      if (auto m = merge(*gates[i], *gates[j])) {
        gates[i] = *m;
        gates[j].reset();
        changed = true;
      }
    }
  }
  Circuit out;
  out.num_qubits = c.num_qubits;
  for (const auto& g : gates) {
    if (g) out.gates.push_back(*g);
  }
  return out;
}

std::string export_qasm(const Circuit& c) {
  c.validate();
  std::string s;
  s += "OPENQASM 3.0;\n";
  s += "include \"stdgates.inc\";\n";
  s += "gate r(theta, phi) a { U(theta, phi - pi/2, pi/2 - phi) a; }\n";
  s += "gate zz(theta) a, b { cx a, b; rz(theta) b; cx a, b; }\n";
  s += "gate uxy(theta) a, b { h a; h b; zz(theta) a, b; h a; h b; "
       "sdg a; sdg b; h a; h b; zz(theta) a, b; h a; h b; s a; s b; }\n";
  s += fmt::format("qubit[{}] q;\n", c.num_qubits);
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::R:
        s += fmt::format("r({}, {}) q[{}];\n", angle(g.theta), angle(g.phi), g.q0);
        break;
      case GateKind::Rz:
        s += fmt::format("rz({}) q[{}];\n", angle(g.theta), g.q0);
        break;
      case GateKind::X:
        s += fmt::format("x q[{}];\n", g.q0);
        break;
      case GateKind::Uxy:
      case GateKind::ZZ:
        s += fmt::format("{}({}) q[{}], q[{}];\n", gate_name(g.kind), angle(g.theta), g.q0,
                         g.q1);
        break;
      case GateKind::Barrier:
        s += "barrier q;\n";
        break;
    }
  }
  return s;
}

Circuit import_qasm(std::string_view text) {
  Circuit c;
  bool have_register = false;
  bool in_gate_def = false;
  for (auto raw : split(text, '\n')) {
    std::string_view line = raw;
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.remove_suffix(1);
    if (line.empty() || line.starts_with("//")) continue;
    if (in_gate_def || line.starts_with("gate ")) {
      in_gate_def = line.find('}') == std::string_view::npos;
      continue;
    }
    if (line.starts_with("OPENQASM") || line.starts_with("include")) continue;
    if (line.back() != ';') throw UsageError("missing ';' in '" + std::string(line) + "'");
    line.remove_suffix(1);
    if (line.starts_with("qubit[")) {
      const auto close = line.find(']');
      if (close == std::string_view::npos || line.substr(close) != "] q") {
        throw UsageError("bad register declaration '" + std::string(line) + "'");
      }
      const auto body = line.substr(6, close - 6);
      std::from_chars(body.data(), body.data() + body.size(), c.num_qubits);
      have_register = true;
      continue;
    }
    if (!have_register) throw UsageError("gate before register declaration");
    if (line == "barrier q") {
      c.gates.push_back(Gate::barrier());
      continue;
    }
    std::string_view name, args, operands;
    const auto paren = line.find('(');
    const auto space = line.find(' ');
    if (paren != std::string_view::npos && paren < space) {
      const auto close = line.find(')');
      if (close == std::string_view::npos) throw UsageError("unbalanced parenthesis");
      name = line.substr(0, paren);
      args = line.substr(paren + 1, close - paren - 1);
      operands = line.substr(close + 1);
    } else {
      name = line.substr(0, space);
      operands = space == std::string_view::npos ? std::string_view{} : line.substr(space);
    }
    const auto a = args.empty() ? std::vector<std::string_view>{} : split(args, ',');
    const auto o = split(operands, ',');
    auto expect = [&](std::size_t na, std::size_t no) {
      if (a.size() != na || o.size() != no) {
        throw UsageError("wrong arity for '" + std::string(name) + "'");
      }
    };
    if (name == "r") {
      expect(2, 1);
      c.gates.push_back(Gate::r(parse_qubit(o[0]), parse_angle(a[0]), parse_angle(a[1])));
    } else if (name == "rz") {
      expect(1, 1);
      c.gates.push_back(Gate::rz(parse_qubit(o[0]), parse_angle(a[0])));
    } else if (name == "x") {
      expect(0, 1);
      c.gates.push_back(Gate::x(parse_qubit(o[0])));
    } else if (name == "zz") {
      expect(1, 2);
      c.gates.push_back(Gate::zz(parse_qubit(o[0]), parse_qubit(o[1]), parse_angle(a[0])));
    } else if (name == "uxy") {
      expect(1, 2);
      c.gates.push_back(Gate::uxy(parse_qubit(o[0]), parse_qubit(o[1]), parse_angle(a[0])));
    } else {
      throw UsageError("unsupported gate '" + std::string(name) + "'");
    }
  }
  if (!have_register) throw UsageError("OpenQASM input declares no qubit register");
  c.validate();
  return c;
}

void to_json(nlohmann::json& j, const Circuit& c) {
  auto gates = nlohmann::json::array();
  for (const auto& g : c.gates) {
    nlohmann::json e{{"gate", gate_name(g.kind)}};
    if (!g.is_barrier()) {
      e["qubits"] = g.is_two_qubit() ? nlohmann::json{g.q0, g.q1} : nlohmann::json{g.q0};
    }
    if (g.kind == GateKind::R || g.kind == GateKind::Rz || g.is_two_qubit()) e["theta"] = g.theta;
    if (g.kind == GateKind::R) e["phi"] = g.phi;
    gates.push_back(std::move(e));
  }
  j = nlohmann::json{{"num_qubits", c.num_qubits}, {"gates", std::move(gates)}};
}

void from_json(const nlohmann::json& j, Circuit& c) {
  c = Circuit{};
  j.at("num_qubits").get_to(c.num_qubits);
  for (const auto& e : j.at("gates")) {
    const auto name = e.at("gate").get<std::string>();
    Gate g;
    if (name == "barrier") {
      c.gates.push_back(g);
      continue;
    }
    const auto qubits = e.at("qubits").get<std::vector<int>>();
    if (name == "r") {
      g = Gate::r(qubits.at(0), e.at("theta").get<double>(), e.at("phi").get<double>());
    } else if (name == "rz") {
      g = Gate::rz(qubits.at(0), e.at("theta").get<double>());
    } else if (name == "x") {
      g = Gate::x(qubits.at(0));
    } else if (name == "uxy") {
      g = Gate::uxy(qubits.at(0), qubits.at(1), e.at("theta").get<double>());
    } else if (name == "zz") {
      g = Gate::zz(qubits.at(0), qubits.at(1), e.at("theta").get<double>());
    } else {
      throw UsageError("unsupported gate '" + name + "'");
    }
    c.gates.push_back(g);
  }
  c.validate();
}

}  // namespace schwinger
