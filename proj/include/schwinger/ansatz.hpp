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
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "schwinger/circuit.hpp"
#include "schwinger/model.hpp"
#include "schwinger/simulator.hpp"

namespace schwinger {

/// layers * (2 N F - 1): per layer, N F - 1 exchange angles followed by N F
/// z-rotation angles.
int num_ansatz_parameters(const ModelParams& params, int layers = 1);

/// Occupation (0/1 per qubit) of the reference state. Qubit p is occupied iff
/// p is odd; when that pattern is charged (odd N) the odd sites are filled
/// completely instead. N = F = 2 gives 0101.
std::vector<int> initial_occupation(const ModelParams& params);
std::string initial_bitstring(const ModelParams& params);

/// X gates for the reference state, then per layer: exchange gates on the
/// even pairs (0,1), (2,3), ..., exchange gates on the odd pairs, and Rz on
/// every qubit. theta[i] drives Uxy(i, i+1); theta[NF-1+p] drives Rz on p.
/// Throws UsageError on a length mismatch.
Circuit build_ansatz_circuit(const ModelParams& params, std::span<const double> theta,
                             int layers = 1);

/// |Psi(theta)> = U(theta)|Psi_0>.
StateVector prepare_trial_state(const ModelParams& params, std::span<const double> theta,
                                int layers = 1);

/// Rewrites Uxy into {R, Rz, ZZ(pi/2)} (two ZZ gates each) and runs
/// cancel_adjacent_rotations on the result. Existing native gates pass
/// through; barriers are kept. Throws UsageError on a ZZ gate whose angle is
/// not pi/2.
Circuit decompose_to_native(const Circuit& c);

/// Peephole pass over single-qubit neighbours on the same wire: merges Rz
/// pairs, merges R pairs with parallel or antiparallel axes, cancels X X and
/// drops rotations by a multiple of 2 pi. Barriers do not block merging.
Circuit cancel_adjacent_rotations(const Circuit& c);

/// OpenQASM 3 text with definitions for r, zz and uxy. Angles are printed in
/// shortest round-trip form, so import_qasm(export_qasm(c)) == c.
std::string export_qasm(const Circuit& c);
/// Parses the dialect written by export_qasm. Throws UsageError otherwise.
Circuit import_qasm(std::string_view text);

void to_json(nlohmann::json& j, const Circuit& c);
void from_json(const nlohmann::json& j, Circuit& c);

}  // namespace schwinger
