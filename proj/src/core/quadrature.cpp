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

#include "cvdv/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <memory>

namespace cvdv {

QuadRule gauss_legendre(int m, double a, double b) {
    if (m < 1) throw ValidationError("gauss_legendre: need at least one node");
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
        gsl_integration_glfixed_table_alloc(static_cast<size_t>(m)), &gsl_integration_glfixed_table_free);
    if (!table) throw Error("gauss_legendre: GSL table allocation failed");
    QuadRule r;
    r.x.resize(m);
    r.w.resize(m);
    for (int i = 0; i < m; ++i) gsl_integration_glfixed_point(a, b, static_cast<size_t>(i), &r.x[i], &r.w[i], table.get());
    return r;
}

QuadRule midpoint_rule(int m, double a, double b) {
    if (m < 1) throw ValidationError("midpoint_rule: need at least one node");
    QuadRule r;
    const double h = (b - a) / m;
    for (int i = 0; i < m; ++i) {
        r.x.push_back(a + (i + 0.5) * h);
        r.w.push_back(h);
    }
    return r;
}

void hermite_functions(int n, double x, double* out) {
    if (n <= 0) return;
    out[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    if (n == 1) return;
    out[1] = std::sqrt(2.0) * x * out[0];
    for (int k = 1; k + 1 < n; ++k)
        out[k + 1] = std::sqrt(2.0 / (k + 1)) * x * out[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * out[k - 1];
}

RMat hermite_table(int n, const std::vector<double>& xs) {
    RMat t(n, static_cast<Eigen::Index>(xs.size()));
    for (size_t j = 0; j < xs.size(); ++j) hermite_functions(n, xs[j], t.col(static_cast<Eigen::Index>(j)).data());
    return t;
}

}  // namespace cvdv
