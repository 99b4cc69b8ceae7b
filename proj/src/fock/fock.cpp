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

#include "cvdv/fock.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "cvdv/kernels.hpp"

namespace cvdv {

namespace {

constexpr int kGeneratorPad = 4;
constexpr int kBinNodes = 16;

CMat exp_i_hermitian(const CMat& g) {
    Eigen::SelfAdjointEigenSolver<CMat> es(g);
    if (es.info() != Eigen::Success) throw NonFinite("eigendecomposition of the generator failed");
    const CVec ph = (cplx(0.0, 1.0) * es.eigenvalues().cast<cplx>()).array().exp().matrix();
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

void hermitize(CMat& m) { m = (0.5 * (m + m.adjoint())).eval(); }

void require_modes(const CvState& s, const CvGate& g) {
    const int hi = std::max(g.modes[0], g.modes[1]);
    if (hi >= s.modes) throw DimensionMismatch("gate acts on mode " + std::to_string(hi) + " of a " +
                                               std::to_string(s.modes) + "-mode state");
    if (is_two_mode(g.kind) && s.modes != 2) throw DimensionMismatch("two-mode gates need a two-mode state");
}

struct PhotonBlock {
    std::vector<int> index;  // register indices n0*N + n1
    CMat u;
};

// exp(i theta (p_0 q_1 - q_0 p_1)) restricted to total photon number m.
std::vector<PhotonBlock> beam_splitter_blocks(double theta, int n) {
    std::vector<PhotonBlock> out;
    for (int m = 0; m <= 2 * (n - 1); ++m) {
        const int lo = std::max(0, m - (n - 1));
        const int hi = std::min(m, n - 1);
        const int sz = hi - lo + 1;
        CMat g = CMat::Zero(sz, sz);
        PhotonBlock b;
        for (int n0 = lo; n0 <= hi; ++n0) {
            b.index.push_back(n0 * n + (m - n0));
            if (n0 + 1 <= hi) {
                const double amp = theta * std::sqrt(static_cast<double>(n0 + 1) * (m - n0));
                g(n0 + 1 - lo, n0 - lo) = cplx(0.0, amp);
                g(n0 - lo, n0 + 1 - lo) = cplx(0.0, -amp);
            }
        }
        b.u = exp_i_hermitian(g);
        out.push_back(std::move(b));
    }
    return out;
}

void apply_blocks(CMat& rho, const std::vector<PhotonBlock>& blocks) {
    CMat tmp(rho.rows(), rho.cols());
    for (const auto& b : blocks) {
        const int sz = static_cast<int>(b.index.size());
        CMat rows(sz, rho.cols());
        for (int i = 0; i < sz; ++i) rows.row(i) = rho.row(b.index[i]);
        rows = (b.u * rows).eval();
        for (int i = 0; i < sz; ++i) tmp.row(b.index[i]) = rows.row(i);
    }
    for (const auto& b : blocks) {
        const int sz = static_cast<int>(b.index.size());
        CMat cols(rho.rows(), sz);
        for (int i = 0; i < sz; ++i) cols.col(i) = tmp.col(b.index[i]);
        cols = (cols * b.u.adjoint()).eval();
        for (int i = 0; i < sz; ++i) rho.col(b.index[i]) = cols.col(i);
    }
}

double oriented_bs_angle(const CvGate& g) { return g.modes[0] == 0 ? g.params[0] : -g.params[0]; }

void apply_two_mode(CMat& rho, const CvGate& g, int n) {
    switch (g.kind) {
        case GateKind::CZ: {
            Eigen::SelfAdjointEigenSolver<RMat> es(FockRep(n).q());
            const CMat v = es.eigenvectors().cast<cplx>();
            const CMat vt = v.transpose();
            const RVec& x = es.eigenvalues();
            CVec ph(static_cast<Eigen::Index>(n) * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) ph(i * n + j) = std::exp(cplx(0.0, g.params[0] * x(i) * x(j)));
            for (int m = 0; m < 2; ++m) conjugate_local(rho, vt, m, 2, n);
            apply_phase_mask(rho, ph);
            for (int m = 0; m < 2; ++m) conjugate_local(rho, v, m, 2, n);
            return;
        }
        case GateKind::BeamSplitter:
            apply_blocks(rho, beam_splitter_blocks(oriented_bs_angle(g), n));
            return;
        case GateKind::MachZehnder: {
            const int k = g.modes[0];
            const CMat r_phi = single_mode_unitary(CvGate::rotation(k, g.params[1]), n);
            const CMat r_2theta = single_mode_unitary(CvGate::rotation(k, 2.0 * g.params[0]), n);
            const auto bs = beam_splitter_blocks(k == 0 ? kPi / 4 : -kPi / 4, n);
            conjugate_local(rho, r_phi, k, 2, n);
            apply_blocks(rho, bs);
            conjugate_local(rho, r_2theta, k, 2, n);
            apply_blocks(rho, bs);
            return;
        }
        default:
            throw UnsupportedGate("not a two-mode gate: " + gate_name(g.kind));
    }
}

std::vector<RMat> projectors_for_cells(int cutoff, int d, long first, int cells, ExecPolicy p) {
    const double l = lattice_spacing(d);
    const auto table = kernels::make_cell_table(cutoff, d, first, cells, gauss_legendre(kBinNodes, -l / 2, l / 2));
    return kernels::cell_projectors(table, p);
}

std::vector<double> binned_probabilities(const CvState& s, const std::vector<RMat>& ops, ExecPolicy p) {
    std::vector<double> out;
    if (s.modes == 1) {
        const CVec v = kernels::contract_one(s.rho, ops, p);
        for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).real());
    } else if (s.modes == 2) {
        const CMat v = kernels::contract_two(s.rho, s.cutoff, ops, ops, p);
        for (Eigen::Index i = 0; i < v.rows(); ++i)
            for (Eigen::Index j = 0; j < v.cols(); ++j) out.push_back(v(i, j).real());
    } else {
        throw ResourceCapExceeded("binned measurements support at most two modes");
    }
    return out;
}

OutcomeDistribution window_distribution(const CvState& in, int d, Model tag, ExecPolicy p) {
    const CvState s = in.window_d == d ? in : materialize(in, p);
    const auto ops = projectors_for_cells(s.cutoff, d, window_first_cell(d), d, p);
    OutcomeDistribution out;
    out.d = d;
    out.modes = s.modes;
    out.model = tag;
    out.prob = binned_probabilities(s, ops, p);
    double norm = 0.0;
    for (double& v : out.prob) {
        v = std::max(v, 0.0);
        norm += v;
    }
    if (norm < 1e-12) throw DegenerateNormalization("window probability below 1e-12");
    for (double& v : out.prob) v /= norm;
    out.overflow = tag == Model::R && s.window_d == 0 ? std::clamp(s.rho.trace().real() - norm, 0.0, 1.0) : 0.0;
    return out;
}

}  // namespace

FockRep::FockRep(int cutoff) : n_(cutoff) {
    if (cutoff < 2) throw ValidationError("Fock cutoff must be at least 2");
    a_ = RMat::Zero(n_, n_);
    for (int k = 1; k < n_; ++k) a_(k - 1, k) = std::sqrt(static_cast<double>(k));
    adag_ = a_.transpose();
    q_ = (a_ + adag_) / std::sqrt(2.0);
    p_ = cplx(0.0, 1.0 / std::sqrt(2.0)) * (adag_ - a_).cast<cplx>();
    num_ = adag_ * a_;
}

CvState initial_vacuum(int n, int cutoff) {
    if (n < 1 || cutoff < 2) throw ValidationError("vacuum needs n >= 1 and cutoff >= 2");
    if (n > 2) throw ResourceCapExceeded("Fock simulation supports at most two modes");
    CvState s;
    s.modes = n;
    s.cutoff = cutoff;
    const long dim = ipow(cutoff, n);
    s.rho = CMat::Zero(dim, dim);
    s.rho(0, 0) = 1.0;
    return s;
}

CvState pure_state(const CVec& psi, int modes, int cutoff) {
    if (psi.size() != ipow(cutoff, modes)) throw DimensionMismatch("state vector length does not match N^modes");
    CvState s;
    s.modes = modes;
    s.cutoff = cutoff;
    s.rho = psi * psi.adjoint();
    return s;
}

CvState pad_state(const CvState& s, int cutoff) {
    if (cutoff < s.cutoff) throw ValidationError("pad_state cannot shrink the cutoff");
    CvState out;
    out.modes = s.modes;
    out.cutoff = cutoff;
    out.window_d = s.window_d;
    const long dim = ipow(cutoff, s.modes);
    out.rho = CMat::Zero(dim, dim);
    const long old = ipow(s.cutoff, s.modes);
    std::vector<long> map(old);
    for (long i = 0; i < old; ++i) {
        long rest = i, idx = 0, mul = 1;
        for (int m = 0; m < s.modes; ++m) {
            idx += (rest % s.cutoff) * mul;
            rest /= s.cutoff;
            mul *= cutoff;
        }
        map[i] = idx;
    }
    for (long j = 0; j < old; ++j)
        for (long i = 0; i < old; ++i) out.rho(map[i], map[j]) = s.rho(i, j);
    return out;
}

double energy(const CvState& in) {
    const CvState s = materialize(in);
    double e = 0.0;
    const long dim = s.rho.rows();
    for (long i = 0; i < dim; ++i) {
        long rest = i, tot = 0;
        for (int m = 0; m < s.modes; ++m) {
            tot += rest % s.cutoff;
            rest /= s.cutoff;
        }
        e += s.rho(i, i).real() * (static_cast<double>(tot) + 0.5 * s.modes);
    }
    return e;
}

int leakage_levels(int cutoff) { return std::max(2, cutoff / 10); }

double leakage(const CvState& s) {
    const int top = s.cutoff - leakage_levels(s.cutoff);
    double l = 0.0;
    for (long i = 0; i < s.rho.rows(); ++i) {
        long rest = i;
        bool hit = false;
        for (int m = 0; m < s.modes; ++m) {
            hit = hit || rest % s.cutoff >= top;
            rest /= s.cutoff;
        }
        if (hit) l += s.rho(i, i).real();
    }
    return l;
}

CMat single_mode_generator(const CvGate& g, int cutoff) {
    if (is_two_mode(g.kind)) throw UnsupportedGate("single_mode_generator: two-mode gate " + gate_name(g.kind));
    const FockRep f(cutoff + kGeneratorPad);
    const CMat q = f.q().cast<cplx>();
    const CMat& p = f.p();
    const double x = g.params[0];
    CMat gen;
    switch (g.kind) {
        case GateKind::Fourier: gen = (kPi / 4) * (q * q + p * p); break;
        case GateKind::Rotation: gen = (x / 2) * (q * q + p * p); break;
        case GateKind::Shear: gen = (x / 2) * (q * q); break;
        case GateKind::Cubic: gen = x * (q * q * q); break;
        case GateKind::Squeeze: gen = (-x / 2) * (q * p + p * q); break;
        case GateKind::DisplaceX: gen = -x * p; break;
        case GateKind::DisplaceZ: gen = x * q; break;
        case GateKind::Displace: gen = g.params[0] * p - g.params[1] * q; break;
        default: throw UnsupportedGate("single_mode_generator: " + gate_name(g.kind));
    }
    CMat out = gen.topLeftCorner(cutoff, cutoff);
    hermitize(out);
    return out;
}

CMat single_mode_unitary(const CvGate& g, int cutoff) { return exp_i_hermitian(single_mode_generator(g, cutoff)); }

CMat two_mode_unitary(const CvGate& g, int cutoff) {
    const long dim = static_cast<long>(cutoff) * cutoff;
    switch (g.kind) {
        case GateKind::CZ: {
            Eigen::SelfAdjointEigenSolver<RMat> es(FockRep(cutoff).q());
            const CMat v = es.eigenvectors().cast<cplx>();
            const CMat vv = kron(v, v);
            CVec ph(dim);
            for (int i = 0; i < cutoff; ++i)
                for (int j = 0; j < cutoff; ++j)
                    ph(i * cutoff + j) = std::exp(cplx(0.0, g.params[0] * es.eigenvalues()(i) * es.eigenvalues()(j)));
            return vv * ph.asDiagonal() * vv.adjoint();
        }
        case GateKind::BeamSplitter: {
            CMat out = CMat::Zero(dim, dim);
            for (const auto& b : beam_splitter_blocks(oriented_bs_angle(g), cutoff))
                for (size_t i = 0; i < b.index.size(); ++i)
                    for (size_t j = 0; j < b.index.size(); ++j) out(b.index[i], b.index[j]) = b.u(i, j);
            return out;
        }
        case GateKind::MachZehnder: {
            const int k = g.modes[0];
            const CMat id = CMat::Identity(cutoff, cutoff);
            auto local = [&](const CMat& a) { return k == 0 ? kron(a, id) : kron(id, a); };
            const CMat bs = two_mode_unitary(CvGate::beam_splitter(g.modes[0], g.modes[1], kPi / 4), cutoff);
            return bs * local(single_mode_unitary(CvGate::rotation(k, 2.0 * g.params[0]), cutoff)) * bs *
                   local(single_mode_unitary(CvGate::rotation(k, g.params[1]), cutoff));
        }
        default:
            throw UnsupportedGate("two_mode_unitary: " + gate_name(g.kind));
    }
}

CvState apply_cv_gate_fixed(const CvState& in, const CvGate& g) {
    const CvState s = materialize(in);
    require_modes(s, g);
    CvState out = s;
    if (is_two_mode(g.kind)) {
        apply_two_mode(out.rho, g, s.cutoff);
    } else {
        const CMat u = single_mode_unitary(g, s.cutoff);
        if (s.modes == 1)
            out.rho = u * s.rho * u.adjoint();
        else
            conjugate_local(out.rho, u, g.modes[0], s.modes, s.cutoff);
    }
    hermitize(out.rho);
    if (!out.rho.allFinite()) throw NonFinite("non-finite entries after applying " + gate_name(g.kind));
    return out;
}

CvState apply_cv_gate(const CvState& s, const CvGate& g, const FockOptions& opt) {
    const int cap = s.modes == 1 ? opt.cap_single : opt.cap_two;
    CvState cur = materialize(s, opt.policy);
    for (;;) {
        const double before = leakage(cur);
        CvState out = apply_cv_gate_fixed(cur, g);
        const double leak = leakage(out);
        if (leak - before <= opt.leak_tol) return out;
        if (!opt.escalate || cur.cutoff >= cap)
            throw LeakageExceeded(gate_name(g.kind) + ": leakage " + std::to_string(leak) + " at cutoff " +
                                  std::to_string(cur.cutoff));
        cur = pad_state(cur, std::min(2 * cur.cutoff, cap));
    }
}

RMat window_projector(int cutoff, int d, ExecPolicy p) {
    RMat out = RMat::Zero(cutoff, cutoff);
    for (const auto& b : projectors_for_cells(cutoff, d, window_first_cell(d), d, p)) out += b;
    return out;
}

RMat bin_projector(int cutoff, int d, long cell) {
    return projectors_for_cells(cutoff, d, cell, 1, ExecPolicy::Serial).front();
}

namespace {

CvState truncate_state(const CvState& s, int cutoff, double* discarded) {
    CvState out;
    out.modes = s.modes;
    out.cutoff = cutoff;
    out.window_d = s.window_d;
    std::vector<long> keep;
    const long dim = s.rho.rows();
    for (long i = 0; i < dim; ++i) {
        long rest = i;
        bool inside = true;
        for (int m = 0; m < s.modes; ++m) {
            inside = inside && rest % s.cutoff < cutoff;
            rest /= s.cutoff;
        }
        if (inside) keep.push_back(i);
    }
    const long n = static_cast<long>(keep.size());
    out.rho.resize(n, n);
    for (long j = 0; j < n; ++j)
        for (long i = 0; i < n; ++i) out.rho(i, j) = s.rho(keep[i], keep[j]);
    if (discarded) *discarded = std::max(0.0, s.rho.trace().real() - out.rho.trace().real());
    return out;
}

}  // namespace

CvState materialize(const CvState& s, ExecPolicy p, int resolution, double* discarded) {
    if (discarded) *discarded = 0.0;
    if (s.window_d == 0) return s;
    if (resolution > 0 && resolution < s.cutoff) {
        CvState low = materialize(truncate_state(s, resolution, discarded), p);
        return pad_state(low, s.cutoff);
    }
    const CMat lam = window_projector(s.cutoff, s.window_d, p).cast<cplx>();
    CvState out = s;
    out.window_d = 0;
    if (s.modes == 1) {
        out.rho = lam * s.rho * lam;
    } else {
        for (int m = 0; m < s.modes; ++m) conjugate_local(out.rho, lam, m, s.modes, s.cutoff);
    }
    hermitize(out.rho);
    const double tr = out.rho.trace().real();
    if (tr < 1e-12) throw DegenerateNormalization("window projection removed all probability");
    out.rho /= tr;
    return out;
}

CvState project_window(const CvState& s, int d, double* survival, ExecPolicy p) {
    if (s.window_d == d) {
        if (survival) *survival = 1.0;
        return s;
    }
    CvState out = materialize(s, p);
    const auto bins = binned_probabilities(out, projectors_for_cells(out.cutoff, d, window_first_cell(d), d, p), p);
    double tr = 0.0;
    for (double v : bins) tr += v;
    if (survival) *survival = tr;
    if (tr < 1e-12) throw DegenerateNormalization("window projection removed all probability");
    out.window_d = d;
    return out;
}

double position_support(int cutoff) { return std::sqrt(2.0 * cutoff) + 5.0; }

OutcomeDistribution pdf_realistic(const CvState& s, int d, ExecPolicy p) {
    return window_distribution(s, d, Model::R, p);
}

OutcomeDistribution pdf_cutoff(const CvState& s, int d, ExecPolicy p) { return window_distribution(s, d, Model::C, p); }

OutcomeDistribution pdf_modular(const CvState& in, int d, ExecPolicy p) {
    const CvState s = in.window_d == d ? in : materialize(in, p);
    const double l = lattice_spacing(d);
    long first = window_first_cell(d), count = d;
    if (s.window_d == 0) {
        const long reach = static_cast<long>(std::ceil(position_support(s.cutoff) / l)) + 1;
        first = -reach;
        count = 2 * reach + 1;
    }
    const auto cells = projectors_for_cells(s.cutoff, d, first, static_cast<int>(count), p);
    std::vector<RMat> folded(d, RMat::Zero(s.cutoff, s.cutoff));
    for (long c = 0; c < count; ++c) folded[bin_of_digit(first + c, d)] += cells[c];
    OutcomeDistribution out;
    out.d = d;
    out.modes = s.modes;
    out.model = Model::M;
    out.prob = binned_probabilities(s, folded, p);
    double norm = 0.0;
    for (double& v : out.prob) {
        v = std::max(v, 0.0);
        norm += v;
    }
    if (norm < 1e-12) throw DegenerateNormalization("modular distribution has no mass");
    for (double& v : out.prob) v /= norm;
    return out;
}

SimulationResult simulate_model(const CvCircuit& c, int d, Model m, int cutoff, const FockOptions& opt) {
    if (m != Model::R && m != Model::C) throw ValidationError("simulate_model runs model R or C only");
    check_structure(c);
    SimulationResult res;
    res.state = initial_vacuum(c.modes, cutoff);
    res.energies.push_back(energy(res.state));
    auto project = [&] {
        double surv = 1.0;
        res.state = project_window(res.state, d, &surv, opt.policy);
        res.survival.push_back(surv);
    };
    for (size_t j = 0; j < c.gates.size(); ++j) {
        if (m == Model::C) {
            project();
            double lost = 0.0;
            res.state = materialize(res.state, opt.policy, cutoff, &lost);
            res.discarded.push_back(lost);
        }
        res.state = apply_cv_gate(res.state, c.gates[j], opt);
        const double e = energy(res.state);
        res.energies.push_back(e);
        if (e > c.energy_budget + 1e-9)
            throw EnergyBudgetExceeded("energy " + std::to_string(e) + " after gate " + std::to_string(j) +
                                       " exceeds E*=" + std::to_string(c.energy_budget));
    }
    if (m == Model::C) project();
    return res;
}

}  // namespace cvdv
