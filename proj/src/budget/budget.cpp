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

#include "cvdv/budget.hpp"

#include <algorithm>
#include <sstream>

using nlohmann::json;

namespace cvdv {

namespace {

constexpr double kHeadlineConstant = 1207.0;

double headline_constant(long K, long n, double estar) {
    return kHeadlineConstant * static_cast<double>(K) * static_cast<double>(n) * static_cast<double>(n) * estar * estar;
}

}  // namespace

GateBound gate_error_bound(const CvGate& g, double energy, int d, CubicConstant c) {
    GateBound b;
    b.kind = g.kind;
    b.params = g.params;
    b.energy = energy;
    b.d = d;
    const double e = energy;
    const double x = std::abs(g.params[0]);
    switch (g.kind) {
        case GateKind::Fourier:
        case GateKind::DisplaceX:
        case GateKind::DisplaceZ:
        case GateKind::Displace:
            b.bound = 0.0;
            break;
        case GateKind::Shear:
            b.bound = x * (kPi / d) * std::sqrt(e / 2.0);
            break;
        case GateKind::Cubic:
            b.bound = (c == CubicConstant::Derivation ? 4.0 : 1.0) * x * std::pow(kPi, 1.5) * std::sqrt(e / d);
            break;
        case GateKind::CZ:
            b.bound = 2.0 * x * std::pow(kPi / d, 1.5) * std::sqrt(e);
            break;
        case GateKind::Rotation:
            b.bound = 52.0 * std::sqrt(e) / d;
            break;
        case GateKind::MachZehnder:
            b.bound = 108.0 * std::sqrt(e) / d;
            break;
        case GateKind::BeamSplitter:
            b.bound = 56.0 * std::sqrt(e / (static_cast<double>(d) * d * d));
            break;
        case GateKind::Squeeze:
            b.bound = 7.0 * std::exp(2.0 * x) * (kPi / d) * std::sqrt(e / 2.0);
            break;
    }
    return b;
}

double cubic_bound_parameter_free(double estar, int d) { return 179.0 * estar * estar / std::sqrt(d); }
double squeeze_bound_parameter_free(double estar, int d) { return 32.0 * std::pow(estar, 1.5) / d; }

double energy_bound_after(const CvGate& g, double energy, double estar) {
    const double x = std::abs(g.params[0]);
    switch (g.kind) {
        case GateKind::Fourier:
        case GateKind::Rotation:
        case GateKind::BeamSplitter:
        case GateKind::MachZehnder:
            return energy;
        case GateKind::Shear:
            return (1.0 + x) * (1.0 + x) * energy;
        case GateKind::CZ:
            return std::pow(1.0 + x, 4) * energy;
        case GateKind::Squeeze:
            return std::exp(2.0 * x) * energy;
        case GateKind::Cubic:
            return estar;
        case GateKind::DisplaceX:
        case GateKind::DisplaceZ: {
            const double s = std::sqrt(energy) + x / std::sqrt(2.0);
            return s * s;
        }
        case GateKind::Displace: {
            const double r = std::hypot(g.params[0], g.params[1]);
            const double s = std::sqrt(energy) + r / std::sqrt(2.0);
            return s * s;
        }
    }
    return energy;
}

double model_gap_rc(long L, double estar, int d) {
    return 2.0 * static_cast<double>(L + 1) * std::sqrt(estar / (d * kPi));
}

double model_gap_rc_statement(long L, double estar, int d) {
    return 2.0 * static_cast<double>(L) * std::sqrt(estar / (d * kPi));
}

double model_gap_md(long K, long n, double estar, int d, GapVariant v, long L) {
    if (v == GapVariant::Statement) return 212.0 * estar * estar * static_cast<double>(L) / std::sqrt(d);
    return 1171.0 * estar * estar * static_cast<double>(K) * static_cast<double>(n) * static_cast<double>(n) /
           std::sqrt(d);
}

double total_bound_value(long K, long n, double estar, double d) { return headline_constant(K, n, estar) / std::sqrt(d); }

TotalBound total_bound(long K, long n, double estar, long d, long L) {
    if (L > 10 * K * n * n)
        throw TemplateViolation("L=" + std::to_string(L) + " exceeds 10 K n^2=" + std::to_string(10 * K * n * n));
    TotalBound t;
    const double sd = std::sqrt(static_cast<double>(d));
    const double l = static_cast<double>(L < 0 ? 10 * K * n * n : L);
    t.headline = headline_constant(K, n, estar) / sd;
    t.decomposed = 1171.0 * estar * estar * static_cast<double>(K * n * n) / sd + 2.0 * (l + 1.0) * std::sqrt(estar / kPi) / sd;
    return t;
}

long choose_dimension(double eps, long K, long n, double estar) {
    if (!(eps > 0.0)) throw ValidationError("choose_dimension: epsilon must be positive");
    const double ratio = headline_constant(K, n, estar) / eps;
    if (ratio * ratio > 0x1p53) throw TooLarge("choose_dimension: d exceeds 2^53");
    long d = std::max(2L, static_cast<long>(std::ceil(ratio * ratio)));
    while (total_bound_value(K, n, estar, static_cast<double>(d)) > eps) ++d;
    while (d > 2 && total_bound_value(K, n, estar, static_cast<double>(d - 1)) <= eps) --d;
    return d;
}

int qubits_per_mode(double eps, long K, long n, double estar) {
    if (!(eps > 0.0)) throw ValidationError("qubits_per_mode: epsilon must be positive");
    const double k = std::ceil(2.0 * std::log2(headline_constant(K, n, estar) / eps));
    return std::max(1, static_cast<int>(k));
}

BudgetReport budget_report(const CvCircuit& c, int d, const BudgetOptions& opt) {
    BudgetReport r;
    r.d = d;
    r.n = c.modes;
    r.estar = c.energy_budget;
    const GateCount gc = count_elementary(c);
    r.L = gc.L;
    r.K = gc.K;
    r.template_conformant = gc.template_conformant;
    if (d >= 2 && (d & (d - 1)) == 0) r.k = static_cast<int>(std::lround(std::log2(d)));
    double e = 0.5 * c.modes;
    r.energy_trace.push_back(e);
    for (size_t i = 0; i < c.gates.size(); ++i) {
        GateBound b = gate_error_bound(c.gates[i], std::min(e, c.energy_budget), d, opt.cubic);
        b.index = static_cast<int>(i);
        r.gate_sum += b.bound;
        r.gates.push_back(b);
        e = energy_bound_after(c.gates[i], e, c.energy_budget);
        r.energy_trace.push_back(e);
    }
    r.eps_rc = model_gap_rc(r.L, r.estar, d);
    r.eps_rc_statement = model_gap_rc_statement(r.L, r.estar, d);
    r.eps_md_statement = model_gap_md(r.K, r.n, r.estar, d, GapVariant::Statement, r.L);
    r.eps_md_proof = model_gap_md(r.K, r.n, r.estar, d, GapVariant::Proof);
    r.eps_md = opt.md_variant == GapVariant::Proof ? r.eps_md_proof : r.eps_md_statement;
    r.total = r.eps_md + r.eps_rc;
    if (r.K >= 1) r.headline = total_bound_value(r.K, r.n, r.estar, d);
    return r;
}

json to_json(const BudgetReport& r) {
    json j;
    j["d"] = r.d;
    j["k"] = r.k;
    j["L"] = r.L;
    j["K"] = r.K;
    j["n"] = r.n;
    j["energy_budget"] = r.estar;
    j["template_conformant"] = r.template_conformant;
    j["gates"] = json::array();
    for (const auto& b : r.gates) {
        j["gates"].push_back({{"index", b.index},
                              {"type", gate_code(b.kind)},
                              {"params", {b.params[0], b.params[1]}},
                              {"energy", b.energy},
                              {"bound", b.bound}});
    }
    j["worst_case_energy"] = r.energy_trace;
    j["gate_bound_sum"] = r.gate_sum;
    j["eps_rc"] = r.eps_rc;
    j["eps_rc_statement"] = r.eps_rc_statement;
    j["eps_md"] = r.eps_md;
    j["eps_md_proof"] = r.eps_md_proof;
    j["eps_md_statement"] = r.eps_md_statement;
    j["total"] = r.total;
    if (r.K >= 1) j["headline"] = r.headline;
    return j;
}

std::string to_csv(const BudgetReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "index,kind,param0,param1,energy_worst,bound\n";
    for (const auto& b : r.gates)
        os << b.index << ',' << gate_code(b.kind) << ',' << b.params[0] << ',' << b.params[1] << ',' << b.energy << ','
           << b.bound << '\n';
    return os.str();
}

}  // namespace cvdv
