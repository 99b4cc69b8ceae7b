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

#include "cvdv/dv.hpp"

#include <algorithm>

using nlohmann::json;

namespace cvdv {

namespace {

using K = QuditGateKind;

struct Emitter {
    std::vector<QuditGate> out;

    void f(int t) { out.push_back(make_qudit_gate(K::Fourier, t)); }
    void finv(int t) { out.push_back(make_qudit_gate(K::FourierInv, t)); }
    void p(int t, double s) { out.push_back(make_qudit_gate(K::P, t, s)); }
    void cz(int k, int l, double s) { out.push_back(make_qudit_gate(K::CZ, k, s, l)); }
    void swap(int k, int l) { out.push_back(make_qudit_gate(K::Swap, k, 0.0, l)); }

    // R(theta) = R(theta_r) F^j with theta_r in [-pi/4, pi/4).
    void rotation(int t, double theta) {
        const double j = std::floor((theta + kPi / 4) / (kPi / 2));
        const double r = theta - j * (kPi / 2);
        const long m = mod_floor(static_cast<long>(j), 4);
        if (m == 3)
            finv(t);
        else
            for (long i = 0; i < m; ++i) f(t);
        if (r == 0.0) return;
        const double c = std::cos(r), s = std::sin(r), tn = std::tan(r);
        p(t, 1.0 / c + tn);
        f(t);
        p(t, c);
        f(t);
        p(t, c + (1.0 + s) * tn);
        f(t);
    }

    void squeeze(int t, double r) {
        p(t, std::exp(r));
        f(t);
        p(t, std::exp(-r));
        f(t);
        p(t, std::exp(r));
        f(t);
    }

    // Three-CZ block CZ(s1) L CZ(s2) L CZ(s1) L with L = F_k^dagger F_l; equals F_k BS(x - pi/2) F_l^dagger.
    void cz_block(int k, int l, double x) {
        const double s1 = std::tan(kPi / 4 - x / 2);
        const double s2 = -std::cos(x);
        for (double s : {s1, s2, s1}) {
            finv(k);
            f(l);
            cz(k, l, s);
        }
    }

    void mach_zehnder(int k, int l, double theta, double phi) {
        const double r = theta - kPi * std::floor((theta + kPi / 4) / kPi);
        rotation(k, phi);
        if (r < kPi / 4) {
            rotation(l, kPi);
            cz_block(k, l, r);
            rotation(l, r + kPi);
            rotation(k, r);
        } else {
            cz_block(k, l, kPi / 2 - r);
            swap(k, l);
            rotation(l, r - kPi / 2);
            rotation(k, r - kPi / 2);
        }
    }

    void beam_splitter(int k, int l, double theta) {
        const double j = std::floor((theta + 3 * kPi / 4) / kPi);
        const double t0 = theta - j * kPi;
        if (t0 < -kPi / 4) {
            f(l);
            cz_block(k, l, t0 + kPi / 2);
            finv(k);
        } else {
            const double beta = -kPi / 2 - t0;
            finv(l);
            cz_block(k, l, beta + kPi / 2);
            f(k);
            f(l);
            f(l);
            swap(k, l);
        }
        if (mod_floor(static_cast<long>(j), 2) == 1) {
            f(k);
            f(k);
            f(l);
            f(l);
        }
    }
};

void check_targets(const QuditDensity& s, const QuditGate& g) {
    const bool two = is_two_qudit(g.kind);
    if (g.targets[0] < 0 || g.targets[0] >= s.n || (two && (g.targets[1] < 0 || g.targets[1] >= s.n)))
        throw DimensionMismatch("qudit gate target out of range");
    if (two && g.targets[0] == g.targets[1]) throw DimensionMismatch("two-qudit gate needs distinct targets");
    if (s.sigma.rows() != ipow(s.d, s.n)) throw DimensionMismatch("density matrix does not match d^n");
}

}  // namespace

std::string qudit_gate_name(QuditGateKind k) {
    switch (k) {
        case K::Fourier: return "F";
        case K::FourierInv: return "Finv";
        case K::Z: return "Z";
        case K::X: return "X";
        case K::P: return "P";
        case K::C: return "C";
        case K::CZ: return "CZ";
        case K::Swap: return "SWAP";
    }
    return "?";
}

bool is_diagonal(QuditGateKind k) { return k == K::Z || k == K::P || k == K::C || k == K::CZ; }
bool is_two_qudit(QuditGateKind k) { return k == K::CZ || k == K::Swap; }

std::vector<int> QuditCircuit::provenance() const {
    std::vector<int> out;
    for (const auto& g : gates) out.push_back(g.source);
    return out;
}

QuditGate make_qudit_gate(QuditGateKind k, int t0, double param, int t1) {
    QuditGate g;
    g.kind = k;
    g.targets = {t0, t1};
    g.param = param;
    return g;
}

CMat fourier_matrix(int d) {
    CMat f(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            f(b, a) = std::polar(1.0 / std::sqrt(d), 2.0 * kPi * static_cast<double>((static_cast<long>(a) * b) % d) / d);
    return f;
}

CVec diagonal_phases(const QuditGate& g, int d) {
    const double l = lattice_spacing(d);
    const double s = g.param;
    auto x = [&](int a) { return l * static_cast<double>(centered_digit(a, d)); };
    if (g.kind == K::CZ) {
        CVec ph(d * d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) ph(a * d + b) = std::polar(1.0, s * x(a) * x(b));
        return ph;
    }
    CVec ph(d);
    for (int a = 0; a < d; ++a) {
        const double v = x(a);
        switch (g.kind) {
            case K::Z: ph(a) = std::polar(1.0, s * v); break;
            case K::P: ph(a) = std::polar(1.0, s * v * v / 2.0); break;
            case K::C: ph(a) = std::polar(1.0, s * v * v * v); break;
            default: throw UnsupportedGate("diagonal_phases: " + qudit_gate_name(g.kind) + " is not diagonal");
        }
    }
    return ph;
}

CMat gate_matrix(const QuditGate& g, int d) {
    if (is_diagonal(g.kind)) return diagonal_phases(g, d).asDiagonal();
    switch (g.kind) {
        case K::Fourier: return fourier_matrix(d);
        case K::FourierInv: return fourier_matrix(d).adjoint();
        case K::X: {
            const CMat f = fourier_matrix(d);
            return f.adjoint() * diagonal_phases(make_qudit_gate(K::Z, 0, g.param), d).asDiagonal() * f;
        }
        case K::Swap: {
            CMat s = CMat::Zero(d * d, d * d);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) s(b * d + a, a * d + b) = 1.0;
            return s;
        }
        default: break;
    }
    throw UnsupportedGate("gate_matrix: " + qudit_gate_name(g.kind));
}

std::vector<QuditGate> compile_gate(const CvGate& g, int d) {
    if (d < 2) throw ValidationError("compile: d must be at least 2");
    Emitter e;
    const int k = g.modes[0], l = g.modes[1];
    const double x = g.params[0];
    switch (g.kind) {
        case GateKind::Fourier: e.f(k); break;
        case GateKind::Rotation: e.rotation(k, x); break;
        case GateKind::Shear: e.p(k, x); break;
        case GateKind::Cubic: e.out.push_back(make_qudit_gate(K::C, k, x)); break;
        case GateKind::Squeeze: e.squeeze(k, x); break;
        case GateKind::DisplaceX: e.out.push_back(make_qudit_gate(K::X, k, x)); break;
        case GateKind::DisplaceZ: e.out.push_back(make_qudit_gate(K::Z, k, x)); break;
        case GateKind::Displace:
            e.out.push_back(make_qudit_gate(K::Z, k, -g.params[1]));
            e.out.push_back(make_qudit_gate(K::X, k, -g.params[0]));
            break;
        case GateKind::CZ: e.cz(k, l, x); break;
        case GateKind::BeamSplitter: e.beam_splitter(k, l, x); break;
        case GateKind::MachZehnder: e.mach_zehnder(k, l, x, g.params[1]); break;
    }
    // Empty lists (Rotation(0)) become a single Z(0).
    if (e.out.empty()) e.out.push_back(make_qudit_gate(K::Z, k, 0.0));
    return e.out;
}

QuditCircuit compile(const CvCircuit& c, int d) {
    check_structure(c);
    QuditCircuit qc;
    qc.d = d;
    qc.n = c.modes;
    for (size_t i = 0; i < c.gates.size(); ++i)
        for (QuditGate g : compile_gate(c.gates[i], d)) {
            g.source = static_cast<int>(i);
            qc.gates.push_back(g);
        }
    return qc;
}

void apply_gate(QuditDensity& s, const QuditGate& g) {
    check_targets(s, g);
    const int d = s.d;
    const long dim = s.sigma.rows();
    if (is_diagonal(g.kind)) {
        const CVec local = diagonal_phases(g, d);
        CVec ph(dim);
        for (long i = 0; i < dim; ++i) {
            const long a = register_digit(i, g.targets[0], s.n, d);
            ph(i) = g.kind == K::CZ ? local(a * d + register_digit(i, g.targets[1], s.n, d)) : local(a);
        }
        apply_phase_mask(s.sigma, ph);
        return;
    }
    if (g.kind == K::Swap) {
        std::vector<long> perm(dim);
        const long w0 = ipow(d, s.n - 1 - g.targets[0]);
        const long w1 = ipow(d, s.n - 1 - g.targets[1]);
        for (long i = 0; i < dim; ++i) {
            const long a = register_digit(i, g.targets[0], s.n, d);
            const long b = register_digit(i, g.targets[1], s.n, d);
            perm[i] = i + (b - a) * w0 + (a - b) * w1;
        }
        CMat out(dim, dim);
        for (long j = 0; j < dim; ++j)
            for (long i = 0; i < dim; ++i) out(perm[i], perm[j]) = s.sigma(i, j);
        s.sigma = std::move(out);
        return;
    }
    conjugate_local(s.sigma, gate_matrix(g, d), g.targets[0], s.n, d);
}

QuditDensity apply(const QuditDensity& s, const QuditCircuit& qc) {
    if (qc.d != s.d || qc.n != s.n) throw DimensionMismatch("circuit and density disagree on d or n");
    QuditDensity out = s;
    for (const auto& g : qc.gates) apply_gate(out, g);
    return out;
}

OutcomeDistribution pdf_dv(const QuditDensity& s) {
    OutcomeDistribution out;
    out.d = s.d;
    out.modes = s.n;
    out.model = Model::D;
    const long dim = s.sigma.rows();
    out.prob.assign(dim, 0.0);
    for (long i = 0; i < dim; ++i) {
        long u = 0;
        for (int t = 0; t < s.n; ++t) u = u * s.d + bin_of_digit(register_digit(i, t, s.n, s.d), s.d);
        out.prob[u] = std::max(0.0, s.sigma(i, i).real());
    }
    return out;
}

json to_json(const QuditGate& g) {
    json j{{"type", qudit_gate_name(g.kind)}, {"source", g.source}};
    if (is_two_qudit(g.kind))
        j["targets"] = {g.targets[0], g.targets[1]};
    else
        j["target"] = g.targets[0];
    if (g.kind != K::Fourier && g.kind != K::FourierInv && g.kind != K::Swap) j["param"] = g.param;
    return j;
}

json to_json(const QuditCircuit& qc) {
    json j{{"d", qc.d}, {"n", qc.n}, {"gates", json::array()}};
    for (const auto& g : qc.gates) j["gates"].push_back(to_json(g));
    return j;
}

}  // namespace cvdv
