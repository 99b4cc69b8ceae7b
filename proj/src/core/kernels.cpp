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

#include "cvdv/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cvdv::kernels {

namespace {

constexpr int kRowChunk = 16;

double sinc_weight(long j, int d) {
    if (j == 0) return 1.0;
    if (j % d == 0) return 0.0;
    const double x = kPi * static_cast<double>(j) / d;
    return std::sin(x) / x;
}

RMat sinc_matrix(const CellTable& t) {
    RMat k(t.cells, t.cells);
    for (int c = 0; c < t.cells; ++c)
        for (int c2 = 0; c2 < t.cells; ++c2) k(c, c2) = sinc_weight(c2 - c, t.d);
    return k;
}

std::vector<std::vector<int>> cells_by_residue(const CellTable& t) {
    std::vector<std::vector<int>> out(t.d);
    for (int c = 0; c < t.cells; ++c) out[t.residue[c]].push_back(c);
    return out;
}

// Unweighted contribution of node i to the single-mode SSD.
CMat node_fold(const RMat& re, const RMat& im, const CellTable& t, const RMat& k, int i) {
    const RMat& phi = t.phi[i];
    RMat vre = phi.transpose() * (re * phi);
    RMat vim = phi.transpose() * (im * phi);
    CMat s = CMat::Zero(t.d, t.d);
    for (int c = 0; c < t.cells; ++c) {
        const int a = t.residue[c];
        for (int c2 = 0; c2 < t.cells; ++c2) {
            const double w = k(c, c2);
            if (w == 0.0) continue;
            s(a, t.residue[c2]) += w * cplx(vre(c, c2), vim(c, c2));
        }
    }
    return s;
}

RMat tensor_entry(const CellTable& t, const RMat& k, const std::vector<std::vector<int>>& groups, int a, int b) {
    const auto& ca = groups[a];
    const auto& cb = groups[b];
    RMat out = RMat::Zero(t.cutoff, t.cutoff);
    if (ca.empty() || cb.empty()) return out;
    RMat ksub(ca.size(), cb.size());
    for (size_t x = 0; x < ca.size(); ++x)
        for (size_t y = 0; y < cb.size(); ++y) ksub(x, y) = k(ca[x], cb[y]);
    RMat pa(t.cutoff, ca.size()), pb(t.cutoff, cb.size());
    for (size_t i = 0; i < t.weights.size(); ++i) {
        for (size_t x = 0; x < ca.size(); ++x) pa.col(x) = t.phi[i].col(ca[x]);
        for (size_t y = 0; y < cb.size(); ++y) pb.col(y) = t.phi[i].col(cb[y]);
        out.noalias() += t.weights[i] * (pa * ksub * pb.transpose());
    }
    return out;
}

RMat cell_projector(const CellTable& t, int c) {
    RMat out = RMat::Zero(t.cutoff, t.cutoff);
    for (size_t i = 0; i < t.weights.size(); ++i) {
        const auto col = t.phi[i].col(c);
        out.noalias() += t.weights[i] * (col * col.transpose());
    }
    return out;
}

cplx contract_entry(const CMat& rho, const RMat& op) {
    cplx acc = 0.0;
    for (Eigen::Index j = 0; j < rho.cols(); ++j)
        for (Eigen::Index i = 0; i < rho.rows(); ++i) acc += op(i, j) * rho(i, j);
    return acc;
}

// Rearranges rho so that row index is (mu0, nu0) and column index is (mu1, nu1).
void reshuffle(const CMat& rho, int n, RMat& re, RMat& im) {
    const Eigen::Index n2 = static_cast<Eigen::Index>(n) * n;
    if (rho.rows() != n2 || rho.cols() != n2) throw DimensionMismatch("contract_two: rho is not N^2 x N^2");
    re.resize(n2, n2);
    im.resize(n2, n2);
    for (int m0 = 0; m0 < n; ++m0)
        for (int v0 = 0; v0 < n; ++v0)
            for (int m1 = 0; m1 < n; ++m1)
                for (int v1 = 0; v1 < n; ++v1) {
                    const cplx z = rho(m0 * n + m1, v0 * n + v1);
                    re(m0 * n + v0, m1 * n + v1) = z.real();
                    im(m0 * n + v0, m1 * n + v1) = z.imag();
                }
}

RMat stack_ops(const std::vector<RMat>& ops, int n) {
    RMat s(static_cast<Eigen::Index>(ops.size()), static_cast<Eigen::Index>(n) * n);
    for (size_t p = 0; p < ops.size(); ++p)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) s(static_cast<Eigen::Index>(p), a * n + b) = ops[p](a, b);
    return s;
}

struct TwoModeWork {
    RMat re, im, s0, s1t;
    Eigen::Index chunks = 0;
};

TwoModeWork prepare_two(const CMat& rho, int n, const std::vector<RMat>& ops0, const std::vector<RMat>& ops1) {
    TwoModeWork w;
    reshuffle(rho, n, w.re, w.im);
    w.s0 = stack_ops(ops0, n);
    w.s1t = stack_ops(ops1, n).transpose();
    w.chunks = (w.s0.rows() + kRowChunk - 1) / kRowChunk;
    return w;
}

void two_mode_chunk(const TwoModeWork& w, Eigen::Index chunk, CMat& out) {
    const Eigen::Index r0 = chunk * kRowChunk;
    const Eigen::Index rows = std::min<Eigen::Index>(kRowChunk, w.s0.rows() - r0);
    const auto s0 = w.s0.middleRows(r0, rows);
    RMat ore = (s0 * w.re) * w.s1t;
    RMat oim = (s0 * w.im) * w.s1t;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < ore.cols(); ++c) out(r0 + r, c) = cplx(ore(r, c), oim(r, c));
}

}  // namespace

CellTable make_cell_table(int cutoff, int d, long first_cell, int cells, const QuadRule& offsets) {
    CellTable t;
    t.d = d;
    t.cutoff = cutoff;
    t.spacing = lattice_spacing(d);
    t.first_cell = first_cell;
    t.cells = cells;
    t.offsets = offsets.x;
    t.weights = offsets.w;
    for (int c = 0; c < cells; ++c) t.residue.push_back(static_cast<int>(mod_floor(first_cell + c, d)));
    for (double o : offsets.x) {
        std::vector<double> xs(cells);
        for (int c = 0; c < cells; ++c) xs[c] = t.spacing * static_cast<double>(first_cell + c) + o;
        t.phi.push_back(hermite_table(cutoff, xs));
    }
    return t;
}

namespace serial {

CMat ssd_single_mode(const CMat& rho, const CellTable& t) {
    const RMat k = sinc_matrix(t);
    const RMat re = rho.real(), im = rho.imag();
    CMat sigma = CMat::Zero(t.d, t.d);
    for (size_t i = 0; i < t.weights.size(); ++i) sigma += t.weights[i] * node_fold(re, im, t, k, static_cast<int>(i));
    return sigma;
}

std::vector<RMat> ssd_mode_tensor(const CellTable& t) {
    const RMat k = sinc_matrix(t);
    const auto groups = cells_by_residue(t);
    std::vector<RMat> out(static_cast<size_t>(t.d) * t.d);
    for (int a = 0; a < t.d; ++a)
        for (int b = 0; b < t.d; ++b) out[a * t.d + b] = tensor_entry(t, k, groups, a, b);
    return out;
}

std::vector<RMat> cell_projectors(const CellTable& t) {
    std::vector<RMat> out(t.cells);
    for (int c = 0; c < t.cells; ++c) out[c] = cell_projector(t, c);
    return out;
}

CVec contract_one(const CMat& rho, const std::vector<RMat>& ops) {
    CVec out(static_cast<Eigen::Index>(ops.size()));
    for (size_t p = 0; p < ops.size(); ++p) out(static_cast<Eigen::Index>(p)) = contract_entry(rho, ops[p]);
    return out;
}

CMat contract_two(const CMat& rho, int cutoff, const std::vector<RMat>& ops0, const std::vector<RMat>& ops1) {
    const TwoModeWork w = prepare_two(rho, cutoff, ops0, ops1);
    CMat out(w.s0.rows(), w.s1t.cols());
    for (Eigen::Index c = 0; c < w.chunks; ++c) two_mode_chunk(w, c, out);
    return out;
}

}  // namespace serial

namespace omp {

CMat ssd_single_mode(const CMat& rho, const CellTable& t) {
    const RMat k = sinc_matrix(t);
    const RMat re = rho.real(), im = rho.imag();
    const int m = static_cast<int>(t.weights.size());
    std::vector<CMat> parts(m);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < m; ++i) parts[i] = node_fold(re, im, t, k, i);
    CMat sigma = CMat::Zero(t.d, t.d);
    for (int i = 0; i < m; ++i) sigma += t.weights[i] * parts[i];
    return sigma;
}

std::vector<RMat> ssd_mode_tensor(const CellTable& t) {
    const RMat k = sinc_matrix(t);
    const auto groups = cells_by_residue(t);
    const int d = t.d;
    std::vector<RMat> out(static_cast<size_t>(d) * d);
#pragma omp parallel for schedule(dynamic)
    for (int ab = 0; ab < d * d; ++ab) out[ab] = tensor_entry(t, k, groups, ab / d, ab % d);
    return out;
}

std::vector<RMat> cell_projectors(const CellTable& t) {
    std::vector<RMat> out(t.cells);
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < t.cells; ++c) out[c] = cell_projector(t, c);
    return out;
}

CVec contract_one(const CMat& rho, const std::vector<RMat>& ops) {
    const int n = static_cast<int>(ops.size());
    CVec out(n);
#pragma omp parallel for schedule(dynamic)
    for (int p = 0; p < n; ++p) out(p) = contract_entry(rho, ops[p]);
    return out;
}

CMat contract_two(const CMat& rho, int cutoff, const std::vector<RMat>& ops0, const std::vector<RMat>& ops1) {
    const TwoModeWork w = prepare_two(rho, cutoff, ops0, ops1);
    CMat out(w.s0.rows(), w.s1t.cols());
    const long chunks = static_cast<long>(w.chunks);
#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < chunks; ++c) two_mode_chunk(w, c, out);
    return out;
}

}  // namespace omp

CMat ssd_single_mode(const CMat& rho, const CellTable& t, ExecPolicy p) {
    return p == ExecPolicy::Serial ? serial::ssd_single_mode(rho, t) : omp::ssd_single_mode(rho, t);
}

std::vector<RMat> ssd_mode_tensor(const CellTable& t, ExecPolicy p) {
    return p == ExecPolicy::Serial ? serial::ssd_mode_tensor(t) : omp::ssd_mode_tensor(t);
}

std::vector<RMat> cell_projectors(const CellTable& t, ExecPolicy p) {
    return p == ExecPolicy::Serial ? serial::cell_projectors(t) : omp::cell_projectors(t);
}

CVec contract_one(const CMat& rho, const std::vector<RMat>& ops, ExecPolicy p) {
    return p == ExecPolicy::Serial ? serial::contract_one(rho, ops) : omp::contract_one(rho, ops);
}

CMat contract_two(const CMat& rho, int cutoff, const std::vector<RMat>& ops0, const std::vector<RMat>& ops1,
                  ExecPolicy p) {
    return p == ExecPolicy::Serial ? serial::contract_two(rho, cutoff, ops0, ops1)
                                   : omp::contract_two(rho, cutoff, ops0, ops1);
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace cvdv::kernels
