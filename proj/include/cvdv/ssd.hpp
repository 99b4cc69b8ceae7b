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

#include <nlohmann/json.hpp>

#include "cvdv/common.hpp"
#include "cvdv/fock.hpp"

namespace cvdv {

enum class QuadratureRule { GaussLegendre, Midpoint };

struct QuadratureConfig {
    int M = 31;  // nodes per cell along the shift axis
    QuadratureRule rule = QuadratureRule::GaussLegendre;
    double q_support = 0.0;  // 0 selects sqrt(2 N) + 5
    bool refine = true;      // also evaluate at 2M+1 nodes and report the change
    double refine_tol = 1e-5;
    /// Restrict the comb to the cut-off window; the result is SSD(Lambda rho Lambda) / Tr(Lambda rho).
    bool window = false;
    ExecPolicy policy = ExecPolicy::Parallel;
};

struct QuditDensity {
    int d = 2;
    int n = 1;
    CMat sigma;
};

struct SsdDiagnostics {
    double trace_deficit = 0.0;
    double hermiticity = 0.0;
    double min_eigenvalue = 0.0;
    double refinement_delta = 0.0;
    double window_mass = 1.0;  // Tr(Lambda rho) when the window option is set
    long comb_radius = 0;      // m_max in units of d cells
};

struct SsdResult {
    QuditDensity rho;
    SsdDiagnostics diag;
};

SsdResult ssd(const CvState& s, int d, const QuadratureConfig& cfg = {});

/// <a| SSD(rho) |a> from the one-dimensional shift integral; index a0*d^{n-1}+... over labels a in Z_d.
std::vector<double> ssd_diagonal(const CvState& s, int d, const QuadratureConfig& cfg = {});

struct SanitizeResult {
    QuditDensity rho;
    double clipped = 0.0;  // total negative eigenvalue mass removed
    double hermiticity = 0.0;
};

/// Hermitizes, clips negative eigenvalues and renormalizes. Throws CorrectionTooLarge above 1e-4 clipped mass.
SanitizeResult sanitize(const QuditDensity& q, double max_clip = 1e-4);

nlohmann::json to_json(const SsdDiagnostics& d);
nlohmann::json to_json(const QuditDensity& q);

}  // namespace cvdv
