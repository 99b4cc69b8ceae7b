// Copyright 2026 The cvdv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvdv/circuit.hpp"
#include "cvdv/distribution.hpp"
#include "cvdv/ssd.hpp"

namespace cvdv {

/// Primitive qudit gates. Composite CV gates are always stored as lists of these.
enum class QuditGateKind { Fourier, FourierInv, Z, X, P, C, CZ, Swap };

std::string qudit_gate_name(QuditGateKind k);
bool is_diagonal(QuditGateKind k);
bool is_two_qudit(QuditGateKind k);

struct QuditGate {
    QuditGateKind kind = QuditGateKind::Fourier;
    std::array<int, 2> targets{0, -1};
    double param = 0.0;
    int source = -1;  // index of the CvGate this gate came from

    bool operator==(const QuditGate&) const = default;
};

struct QuditCircuit {
    int d = 2;
    int n = 1;
    std::vector<QuditGate> gates;

    /// gates[i].source for every i.
    std::vector<int> provenance() const;
};

QuditGate make_qudit_gate(QuditGateKind k, int t0, double param = 0.0, int t1 = -1);

/// Phase e^{i f} per basis state of the gate's own register (d or d^2 entries) for diagonal kinds.
CVec diagonal_phases(const QuditGate& g, int d);
/// Dense matrix on the gate's own register.
CMat gate_matrix(const QuditGate& g, int d);
CMat fourier_matrix(int d);

/// Qudit analogue of one CV gate, in time order.
std::vector<QuditGate> compile_gate(const CvGate& g, int d);
QuditCircuit compile(const CvCircuit& c, int d);

/// sigma -> U sigma U^dagger; diagonal gates act as phase masks.
QuditDensity apply(const QuditDensity& s, const QuditCircuit& qc);
void apply_gate(QuditDensity& s, const QuditGate& g);

/// Computational-basis probabilities on the measurement grid: label a lands in bin (a + floor(d/2)) mod d.
OutcomeDistribution pdf_dv(const QuditDensity& s);

nlohmann::json to_json(const QuditGate& g);
nlohmann::json to_json(const QuditCircuit& qc);

}  // namespace cvdv
