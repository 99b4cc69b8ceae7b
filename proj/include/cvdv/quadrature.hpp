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

#include <vector>

#include "cvdv/common.hpp"

namespace cvdv {

struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

QuadRule gauss_legendre(int m, double a, double b);
QuadRule midpoint_rule(int m, double a, double b);

/// Writes psi_0(x) .. psi_{n-1}(x), the normalized harmonic-oscillator eigenfunctions.
void hermite_functions(int n, double x, double* out);

/// Column j holds psi_0..psi_{n-1} evaluated at xs[j].
RMat hermite_table(int n, const std::vector<double>& xs);

}  // namespace cvdv
