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
#include <vector>

#include <nlohmann/json.hpp>

#include "cvdv/circuit.hpp"

namespace cvdv {

/// Which constant the cubic-gate SSD bound uses: 4 (derivation) or 1 (headline statement).
enum class CubicConstant { Derivation, Statement };
/// L-based (212 E*^2 L / sqrt d) or round-based (1171 E*^2 K n^2 / sqrt d) model gap.
enum class GapVariant { Statement, Proof };

struct BudgetOptions {
    CubicConstant cubic = CubicConstant::Derivation;
    GapVariant md_variant = GapVariant::Proof;
};

struct GateBound {
    int index = -1;
    GateKind kind = GateKind::Fourier;
    std::array<double, 2> params{0.0, 0.0};
    double energy = 0.5;
    int d = 2;
    double bound = 0.0;
};

GateBound gate_error_bound(const CvGate& g, double energy, int d, CubicConstant c = CubicConstant::Derivation);

/// Gate-independent caps once the parameter has been bounded by E*.
double cubic_bound_parameter_free(double estar, int d);
double squeeze_bound_parameter_free(double estar, int d);

/// Worst-case energy after g given input energy E. Cubic gates return E* (validated cap path).
double energy_bound_after(const CvGate& g, double energy, double estar);

double model_gap_rc(long L, double estar, int d);
double model_gap_rc_statement(long L, double estar, int d);
double model_gap_md(long K, long n, double estar, int d, GapVariant v = GapVariant::Proof, long L = 0);

struct TotalBound {
    double headline = 0.0;    // 1207 E*^2 K n^2 / sqrt d
    double decomposed = 0.0;  // eps_MD (proof) + eps_RC
};

/// Throws TemplateViolation if L > 10 K n^2.
TotalBound total_bound(long K, long n, double estar, long d, long L = -1);
double total_bound_value(long K, long n, double estar, double d);

/// Smallest d >= 2 with total_bound <= eps.
long choose_dimension(double eps, long K, long n, double estar);
/// ceil(2 log2(1207 K n^2 E*^2 / eps)), at least 1.
int qubits_per_mode(double eps, long K, long n, double estar);

struct BudgetReport {
    int d = 2;
    int k = 0;  // qubits per mode when d is a power of two, else 0
    long L = 0, K = 0;
    int n = 1;
    double estar = 0.5;
    std::vector<GateBound> gates;
    std::vector<double> energy_trace;  // worst-case energies, entry j before gate j, last after all gates
    double gate_sum = 0.0;
    double eps_rc = 0.0;
    double eps_rc_statement = 0.0;
    double eps_md_proof = 0.0;
    double eps_md_statement = 0.0;
    double eps_md = 0.0;  // the selected variant
    double total = 0.0;   // eps_md + eps_rc
    double headline = 0.0;  // 1207 form, only when K >= 1
    bool template_conformant = true;
};

BudgetReport budget_report(const CvCircuit& c, int d, const BudgetOptions& opt = {});
nlohmann::json to_json(const BudgetReport& r);
std::string to_csv(const BudgetReport& r);

}  // namespace cvdv
