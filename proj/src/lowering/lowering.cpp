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

#include "cvdv/lowering.hpp"

#include <algorithm>
#include <sstream>

using nlohmann::json;

namespace cvdv {

namespace {

using QK = QubitGateKind;

constexpr double kZeroAngle = 1e-12;

std::vector<int> qudit_qubits(int qudit, int k) {
    std::vector<int> q(k);
    for (int i = 0; i < k; ++i) q[i] = qudit * k + i;
    return q;
}

QubitGate phase_gate(std::vector<int> qubits, double angle) {
    QubitGate g;
    g.kind = qubits.size() == 1 ? QK::Phase : qubits.size() == 2 ? QK::CPhase : QK::MCPhase;
    g.qubits = std::move(qubits);
    g.angle = angle;
    return g;
}

int count_swaps(const std::vector<QubitGate>& gs) {
    int n = 0;
    for (const auto& g : gs) n += g.kind == QK::Swap ? 1 : 0;
    return n;
}

void append(std::vector<QubitGate>& dst, const std::vector<QubitGate>& src) { dst.insert(dst.end(), src.begin(), src.end()); }

}  // namespace

std::string qubit_gate_name(QubitGateKind k) {
    switch (k) {
        case QK::Phase: return "phase";
        case QK::Hadamard: return "h";
        case QK::CPhase: return "cphase";
        case QK::MCPhase: return "mcphase";
        case QK::Swap: return "swap";
    }
    return "?";
}

std::vector<QubitGate> qft_gates(const std::vector<int>& q, bool inverse) {
    const int k = static_cast<int>(q.size());
    std::vector<QubitGate> out;
    for (int j = 0; j < k; ++j) {
        out.push_back({QK::Hadamard, {q[j]}, 0.0, -1});
        for (int m = j + 1; m < k; ++m) out.push_back(phase_gate({q[m], q[j]}, 2.0 * kPi / std::ldexp(1.0, m - j + 1)));
    }
    for (int j = 0; j < k / 2; ++j) out.push_back({QK::Swap, {q[j], q[k - 1 - j]}, 0.0, -1});
    if (inverse) {
        std::reverse(out.begin(), out.end());
        for (auto& g : out) g.angle = -g.angle;
    }
    return out;
}

std::vector<QubitGate> diagonal_gates(const std::vector<int>& q, const std::vector<double>& phi) {
    const int m = static_cast<int>(q.size());
    const size_t n = size_t{1} << m;
    if (phi.size() != n) throw DimensionMismatch("diagonal_gates: need 2^m phases");
    std::vector<double> alpha = phi;
    for (int b = 0; b < m; ++b)
        for (size_t v = 0; v < n; ++v)
            if (v & (size_t{1} << b)) alpha[v] -= alpha[v ^ (size_t{1} << b)];
    std::vector<QubitGate> out;
    for (size_t i = 1; i < n; ++i) {
        const size_t s = i ^ (i >> 1);
        const double a = std::remainder(alpha[s], 2.0 * kPi);
        if (std::abs(a) < kZeroAngle) continue;
        std::vector<int> qs;
        for (int pos = 0; pos < m; ++pos)
            if (s & (size_t{1} << (m - 1 - pos))) qs.push_back(q[pos]);
        out.push_back(phase_gate(std::move(qs), a));
    }
    return out;
}

std::vector<QubitGate> lower_gate(const QuditGate& g, int k) {
    const int d = 1 << k;
    const auto q0 = qudit_qubits(g.targets[0], k);
    auto diag = [&](const QuditGate& dg, std::vector<int> qs) {
        const CVec ph = diagonal_phases(dg, d);
        std::vector<double> phi(ph.size());
        for (Eigen::Index i = 0; i < ph.size(); ++i) phi[i] = std::arg(ph(i));
        return diagonal_gates(qs, phi);
    };
    std::vector<QubitGate> out;
    switch (g.kind) {
        case QuditGateKind::Fourier: out = qft_gates(q0, false); break;
        case QuditGateKind::FourierInv: out = qft_gates(q0, true); break;
        case QuditGateKind::Z:
        case QuditGateKind::P:
        case QuditGateKind::C: out = diag(g, q0); break;
        case QuditGateKind::CZ: {
            auto qs = q0;
            const auto q1 = qudit_qubits(g.targets[1], k);
            qs.insert(qs.end(), q1.begin(), q1.end());
            out = diag(g, qs);
            break;
        }
        case QuditGateKind::X:
            out = qft_gates(q0, false);
            append(out, diag(make_qudit_gate(QuditGateKind::Z, g.targets[0], g.param), q0));
            append(out, qft_gates(q0, true));
            break;
        case QuditGateKind::Swap: {
            const auto q1 = qudit_qubits(g.targets[1], k);
            for (int i = 0; i < k; ++i) out.push_back({QK::Swap, {q0[i], q1[i]}, 0.0, -1});
            break;
        }
    }
    return out;
}

std::pair<QubitCircuit, LoweringReport> lower(const QuditCircuit& qc, int k) {
    if (k < 1 || qc.d != (1 << k))
        throw DimensionNotPowerOfTwo("lower: d=" + std::to_string(qc.d) + " is not 2^" + std::to_string(k));
    QubitCircuit out;
    out.qubits = qc.n * k;
    LoweringReport rep;
    rep.k = k;
    for (size_t i = 0; i < qc.gates.size(); ++i) {
        auto gs = lower_gate(qc.gates[i], k);
        SourceCount sc;
        sc.source = static_cast<int>(i);
        sc.kind = qc.gates[i].kind;
        sc.swaps = count_swaps(gs);
        sc.core = static_cast<int>(gs.size()) - sc.swaps;
        rep.total_core += sc.core;
        rep.total_swaps += sc.swaps;
        rep.per_gate.push_back(sc);
        for (auto& g : gs) {
            g.source = static_cast<int>(i);
            out.gates.push_back(std::move(g));
        }
    }
    return {out, rep};
}

CMat unitary_of(const QubitCircuit& qbc) {
    if (qbc.qubits > 12) throw TooLarge("unitary_of: " + std::to_string(qbc.qubits) + " qubits exceeds 12");
    const long dim = 1L << qbc.qubits;
    CMat u = CMat::Identity(dim, dim);
    auto bit = [&](int q) { return 1L << (qbc.qubits - 1 - q); };
    const double h = 1.0 / std::sqrt(2.0);
    for (const auto& g : qbc.gates) {
        for (int q : g.qubits)
            if (q < 0 || q >= qbc.qubits) throw DimensionMismatch("qubit index out of range");
        switch (g.kind) {
            case QK::Hadamard: {
                const long b = bit(g.qubits[0]);
                for (long r = 0; r < dim; ++r) {
                    if (r & b) continue;
                    const CVec x = u.row(r).transpose(), y = u.row(r | b).transpose();
                    u.row(r) = (h * (x + y)).transpose();
                    u.row(r | b) = (h * (x - y)).transpose();
                }
                break;
            }
            case QK::Swap: {
                const long b0 = bit(g.qubits[0]), b1 = bit(g.qubits[1]);
                for (long r = 0; r < dim; ++r)
                    if ((r & b0) && !(r & b1)) u.row(r).swap(u.row(r ^ b0 ^ b1));
                break;
            }
            default: {
                long mask = 0;
                for (int q : g.qubits) mask |= bit(q);
                const cplx ph = std::polar(1.0, g.angle);
                for (long r = 0; r < dim; ++r)
                    if ((r & mask) == mask) u.row(r) *= ph;
                break;
            }
        }
    }
    return u;
}

double equivalence_check(const QubitCircuit& qbc, const QuditGate& target) {
    const int width = is_two_qudit(target.kind) ? 2 : 1;
    if (qbc.qubits % width != 0) throw DimensionMismatch("equivalence_check: qubit count does not split into qudits");
    const int k = qbc.qubits / width;
    if (k > 5) throw TooLarge("equivalence_check supports k <= 5");
    const CMat u = unitary_of(qbc);
    QuditGate t = target;
    t.targets = {0, width == 2 ? 1 : -1};
    const CMat m = gate_matrix(t, 1 << k);
    if (m.rows() != u.rows()) throw DimensionMismatch("equivalence_check: target and circuit sizes differ");
    const cplx overlap = (m.adjoint() * u).trace();
    const cplx ph = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1.0, 0.0);
    return (u - ph * m).cwiseAbs().maxCoeff();
}

json to_json(const QubitCircuit& qbc) {
    json j{{"qubits", qbc.qubits}, {"gates", json::array()}};
    for (const auto& g : qbc.gates) {
        json e{{"type", qubit_gate_name(g.kind)}, {"qubits", g.qubits}, {"source", g.source}};
        if (g.kind != QK::Hadamard && g.kind != QK::Swap) e["angle"] = g.angle;
        j["gates"].push_back(e);
    }
    return j;
}

json to_json(const LoweringReport& r) {
    json j{{"k", r.k}, {"total_core", r.total_core}, {"total_swaps", r.total_swaps}, {"per_gate", json::array()}};
    for (const auto& s : r.per_gate)
        j["per_gate"].push_back(
            {{"source", s.source}, {"kind", qudit_gate_name(s.kind)}, {"core", s.core}, {"swaps", s.swaps}});
    return j;
}

std::string to_qasm(const QubitCircuit& qbc) {
    std::ostringstream os;
    os.precision(17);
    os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    os << "// mcphase(a) q0,...,qm: phase e^{ia} when all listed qubits are 1\n";
    os << "qreg q[" << qbc.qubits << "];\n";
    for (const auto& g : qbc.gates) {
        switch (g.kind) {
            case QK::Hadamard: os << "h q[" << g.qubits[0] << "];\n"; break;
            case QK::Phase: os << "p(" << g.angle << ") q[" << g.qubits[0] << "];\n"; break;
            case QK::CPhase: os << "cp(" << g.angle << ") q[" << g.qubits[0] << "],q[" << g.qubits[1] << "];\n"; break;
            case QK::Swap: os << "swap q[" << g.qubits[0] << "],q[" << g.qubits[1] << "];\n"; break;
            case QK::MCPhase: {
                os << "mcphase(" << g.angle << ") ";
                for (size_t i = 0; i < g.qubits.size(); ++i) os << (i ? "," : "") << "q[" << g.qubits[i] << "]";
                os << ";\n";
                break;
            }
        }
    }
    return os.str();
}

}  // namespace cvdv
