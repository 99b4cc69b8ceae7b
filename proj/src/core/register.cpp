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

#include "cvdv/common.hpp"

namespace cvdv {

long ipow(long base, int exp) {
    long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

void left_apply_local(CMat& m, const CMat& A, int target, int modes, int dim) {
    if (m.rows() != ipow(dim, modes)) throw DimensionMismatch("left_apply_local: register size mismatch");
    const long inner = ipow(dim, modes - 1 - target);
    const long outer = ipow(dim, target);
    if (inner == 1) {
        for (long o = 0; o < outer; ++o) m.middleRows(o * dim, dim) = (A * m.middleRows(o * dim, dim)).eval();
        return;
    }
    const CMat at = A.transpose();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        cplx* col = m.col(j).data();
        for (long o = 0; o < outer; ++o) {
            Eigen::Map<CMat> x(col + o * dim * inner, inner, dim);
            x = (x * at).eval();
        }
    }
}

void conjugate_local(CMat& rho, const CMat& A, int target, int modes, int dim) {
    left_apply_local(rho, A, target, modes, dim);
    rho.adjointInPlace();
    left_apply_local(rho, A, target, modes, dim);
    rho.adjointInPlace();
}

void apply_phase_mask(CMat& rho, const CVec& phase) {
    if (phase.size() != rho.rows()) throw DimensionMismatch("phase mask length does not match the density matrix");
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
        const cplx cj = std::conj(phase(j));
        for (Eigen::Index i = 0; i < rho.rows(); ++i) rho(i, j) *= phase(i) * cj;
    }
}

}  // namespace cvdv
