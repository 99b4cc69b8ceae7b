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

#include "cvdv/ssd.hpp"

#include <Eigen/Eigenvalues>

#include "cvdv/kernels.hpp"

using nlohmann::json;

namespace cvdv {

namespace {

kernels::CellTable table_for(const CvState& s, int d, const QuadratureConfig& cfg, int nodes, long* radius) {
    if (d < 2) throw ValidationError("ssd: d must be at least 2");
    if (s.modes < 1 || s.modes > 2) throw ResourceCapExceeded("ssd supports one or two modes");
    const double l = lattice_spacing(d);
    const QuadRule rule = cfg.rule == QuadratureRule::GaussLegendre ? gauss_legendre(nodes, -l / 2, l / 2)
                                                                    : midpoint_rule(nodes, -l / 2, l / 2);
    long first = window_first_cell(d);
    long cells = d;
    if (!cfg.window) {
        const double support = cfg.q_support > 0 ? cfg.q_support : position_support(s.cutoff);
        const long reach = static_cast<long>(std::ceil(support / l)) + 1;
        first = -reach;
        cells = 2 * reach + 1;
    }
    if (radius) *radius = (cells + d - 1) / d;
    return kernels::make_cell_table(s.cutoff, d, first, static_cast<int>(cells), rule);
}

CMat ssd_matrix(const CvState& s, int d, const QuadratureConfig& cfg, int nodes, long* radius) {
    const auto t = table_for(s, d, cfg, nodes, radius);
    if (s.modes == 1) return kernels::ssd_single_mode(s.rho, t, cfg.policy);
    const auto tensor = kernels::ssd_mode_tensor(t, cfg.policy);
    const CMat c = kernels::contract_two(s.rho, s.cutoff, tensor, tensor, cfg.policy);
    CMat sigma(d * d, d * d);
    for (int a0 = 0; a0 < d; ++a0)
        for (int b0 = 0; b0 < d; ++b0)
            for (int a1 = 0; a1 < d; ++a1)
                for (int b1 = 0; b1 < d; ++b1) sigma(a0 * d + a1, b0 * d + b1) = c(a0 * d + b0, a1 * d + b1);
    return sigma;
}

// A state tagged with this d's window is measured through the windowed comb; other tags are materialized.
CvState resolve(const CvState& s, int d, QuadratureConfig& cfg) {
    if (s.window_d == d) {
        cfg.window = true;
        return s;
    }
    return materialize(s, cfg.policy);
}

}  // namespace

SsdResult ssd(const CvState& in, int d, const QuadratureConfig& config) {
    QuadratureConfig cfg = config;
    const CvState s = resolve(in, d, cfg);
    if (cfg.M < 1) throw ValidationError("ssd: need at least one quadrature node");
    SsdResult r;
    r.rho.d = d;
    r.rho.n = s.modes;
    r.rho.sigma = ssd_matrix(s, d, cfg, cfg.M, &r.diag.comb_radius);
    const double tr = r.rho.sigma.trace().real();
    if (cfg.refine) {
        const CMat fine = ssd_matrix(s, d, cfg, 2 * cfg.M + 1, nullptr);
        r.diag.refinement_delta = (fine - r.rho.sigma).cwiseAbs().maxCoeff();
    }
    if (cfg.window) {
        if (tr < 1e-12) throw DegenerateNormalization("ssd: window carries no probability");
        r.diag.window_mass = tr;
        r.rho.sigma /= tr;
        r.diag.trace_deficit = 0.0;
    } else {
        r.diag.trace_deficit = std::abs(1.0 - tr);
    }
    r.diag.hermiticity = hermiticity_residual(r.rho.sigma);
    const CMat h = 0.5 * (r.rho.sigma + r.rho.sigma.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
    r.diag.min_eigenvalue = es.eigenvalues().minCoeff();
    if (cfg.refine && r.diag.refinement_delta > cfg.refine_tol)
        throw QuadratureNotConverged("ssd: refinement delta " + std::to_string(r.diag.refinement_delta) +
                                     " exceeds " + std::to_string(cfg.refine_tol));
    return r;
}

std::vector<double> ssd_diagonal(const CvState& in, int d, const QuadratureConfig& config) {
    QuadratureConfig cfg = config;
    const CvState s = resolve(in, d, cfg);
    const auto t = table_for(s, d, cfg, cfg.M, nullptr);
    const auto cells = kernels::cell_projectors(t, cfg.policy);
    std::vector<RMat> folded(d, RMat::Zero(s.cutoff, s.cutoff));
    for (int c = 0; c < t.cells; ++c) folded[t.residue[c]] += cells[c];
    std::vector<double> out;
    if (s.modes == 1) {
        const CVec v = kernels::contract_one(s.rho, folded, cfg.policy);
        for (int a = 0; a < d; ++a) out.push_back(v(a).real());
    } else {
        const CMat v = kernels::contract_two(s.rho, s.cutoff, folded, folded, cfg.policy);
        for (int a0 = 0; a0 < d; ++a0)
            for (int a1 = 0; a1 < d; ++a1) out.push_back(v(a0, a1).real());
    }
    if (cfg.window) {
        double tot = 0.0;
        for (double v : out) tot += v;
        if (tot < 1e-12) throw DegenerateNormalization("ssd_diagonal: window carries no probability");
        for (double& v : out) v /= tot;
    }
    return out;
}

SanitizeResult sanitize(const QuditDensity& q, double max_clip) {
    SanitizeResult r;
    r.rho = q;
    r.hermiticity = hermiticity_residual(q.sigma);
    if (r.hermiticity > 1e-6)
        throw CorrectionTooLarge("sanitize: Hermiticity residual " + std::to_string(r.hermiticity) + " above 1e-6");
    CMat h = 0.5 * (q.sigma + q.sigma.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    RVec ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) < 0.0) {
            r.clipped -= ev(i);
            ev(i) = 0.0;
        }
    if (r.clipped > max_clip)
        throw CorrectionTooLarge("sanitize: clipped eigenvalue mass " + std::to_string(r.clipped) + " above " +
                                 std::to_string(max_clip));
    if (r.clipped > 0.0) h = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    const double tr = h.trace().real();
    if (tr < 1e-12) throw DegenerateNormalization("sanitize: zero trace");
    r.rho.sigma = h / tr;
    return r;
}

json to_json(const SsdDiagnostics& d) {
    return {{"trace_deficit", d.trace_deficit},
            {"hermiticity_residual", d.hermiticity},
            {"min_eigenvalue", d.min_eigenvalue},
            {"refinement_delta", d.refinement_delta},
            {"window_mass", d.window_mass},
            {"comb_radius", d.comb_radius}};
}

json to_json(const QuditDensity& q) {
    json j;
    j["d"] = q.d;
    j["n"] = q.n;
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < q.sigma.rows(); ++i) {
        json rr = json::array(), ii = json::array();
        for (Eigen::Index k = 0; k < q.sigma.cols(); ++k) {
            rr.push_back(q.sigma(i, k).real());
            ii.push_back(q.sigma(i, k).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    j["real"] = re;
    j["imag"] = im;
    return j;
}

}  // namespace cvdv
