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

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvdv/dv.hpp"

namespace cvdv {

/// Phase, CPhase and MCPhase all mean: multiply by e^{i angle} when every listed qubit is 1.
enum class QubitGateKind { Phase, Hadamard, CPhase, MCPhase, Swap };

std::string qubit_gate_name(QubitGateKind k);

struct QubitGate {
    QubitGateKind kind = QubitGateKind::Hadamard;
    std::vector<int> qubits;
    double angle = 0.0;
    int source = -1;  // index of the source QuditGate
};

/// Qubit 0 is the most significant bit of the basis index. Qudit j owns qubits [j k, (j+1) k), MSB first.
struct QubitCircuit {
    int qubits = 0;
    std::vector<QubitGate> gates;
};

struct SourceCount {
    int source = -1;
    QuditGateKind kind = QuditGateKind::Fourier;
    int core = 0;   // everything except QFT bit-reversal swaps
    int swaps = 0;  // QFT bit-reversal swaps and qudit swaps
};

struct LoweringReport {
    int k = 1;
    std::vector<SourceCount> per_gate;
    long total_core = 0;
    long total_swaps = 0;
};

/// QFT on the listed qubits (MSB first): k Hadamards and k(k-1)/2 controlled phases, then floor(k/2) swaps.
std::vector<QubitGate> qft_gates(const std::vector<int>& qubits, bool inverse);
/// Walsh-Gray decomposition of diag(e^{i phi(v)}) over the listed qubits, v read MSB first.
std::vector<QubitGate> diagonal_gates(const std::vector<int>& qubits, const std::vector<double>& phi);

/// Lowers one qudit gate of an n-qudit register with d = 2^k.
std::vector<QubitGate> lower_gate(const QuditGate& g, int k);
std::pair<QubitCircuit, LoweringReport> lower(const QuditCircuit& qc, int k);

/// Dense unitary; throws TooLarge above 12 qubits.
CMat unitary_of(const QubitCircuit& qbc);
/// min over the global phase of the max-abs entry of unitary_of(qbc) - e^{i phi} target, with the
/// target acting on qudits 0 (and 1); phi is the Frobenius-optimal phase.
double equivalence_check(const QubitCircuit& qbc, const QuditGate& target);

nlohmann::json to_json(const QubitCircuit& qbc);
nlohmann::json to_json(const LoweringReport& r);
/// OpenQASM 2 style text: h, p, cp, mcphase as a custom gate, swap.
std::string to_qasm(const QubitCircuit& qbc);

}  // namespace cvdv
