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

// Hot loops shared by the SSD and the binned position measurements.
//
// Every kernel exists twice: `serial` is the reference, `omp` distributes
// independent output slots over threads. Both evaluate each slot with the
// same floating-point sequence, so their results agree bitwise.

#pragma once

#include <vector>

#include "cvdv/common.hpp"
#include "cvdv/quadrature.hpp"

namespace cvdv::kernels {

/// Fock-basis position samples on a run of consecutive cells of width l.
/// Cell c (absolute index first_cell + c) spans l*(first_cell + c) + [-l/2, l/2];
/// node i sits at offset `offsets[i]` inside every cell.
struct CellTable {
    int d = 2;
    int cutoff = 1;
    double spacing = 1.0;
    long first_cell = 0;
    int cells = 0;
    std::vector<double> offsets;
    std::vector<double> weights;
    std::vector<RMat> phi;      // per node: cutoff x cells
    std::vector<int> residue;   // per cell: absolute index mod d

    long cell_index(int c) const { return first_cell + c; }
};

CellTable make_cell_table(int cutoff, int d, long first_cell, int cells, const QuadRule& offsets);

namespace serial {
/// sigma_ab = sum_i w_i sum_{c=a, c'=b mod d} sinc(pi (c'-c)/d) rho(x_ic, x_ic').
CMat ssd_single_mode(const CMat& rho, const CellTable& t);
/// Entry a*d+b maps a one-mode density matrix to sigma_ab via sum_{mu nu} T(mu,nu) rho(mu,nu).
std::vector<RMat> ssd_mode_tensor(const CellTable& t);
/// Per cell: sum_i w_i psi(x_ic) psi(x_ic)^T.
std::vector<RMat> cell_projectors(const CellTable& t);
/// out[p] = sum_{mu nu} ops[p](mu,nu) rho(mu,nu).
CVec contract_one(const CMat& rho, const std::vector<RMat>& ops);
/// out(p0,p1) = sum ops0[p0](mu0,nu0) ops1[p1](mu1,nu1) rho(mu0*N+mu1, nu0*N+nu1).
CMat contract_two(const CMat& rho, int cutoff, const std::vector<RMat>& ops0, const std::vector<RMat>& ops1);
}  // namespace serial

namespace omp {
CMat ssd_single_mode(const CMat& rho, const CellTable& t);
std::vector<RMat> ssd_mode_tensor(const CellTable& t);
std::vector<RMat> cell_projectors(const CellTable& t);
CVec contract_one(const CMat& rho, const std::vector<RMat>& ops);
CMat contract_two(const CMat& rho, int cutoff, const std::vector<RMat>& ops0, const std::vector<RMat>& ops1);
}  // namespace omp

CMat ssd_single_mode(const CMat& rho, const CellTable& t, ExecPolicy p);
std::vector<RMat> ssd_mode_tensor(const CellTable& t, ExecPolicy p);
std::vector<RMat> cell_projectors(const CellTable& t, ExecPolicy p);
CVec contract_one(const CMat& rho, const std::vector<RMat>& ops, ExecPolicy p);
CMat contract_two(const CMat& rho, int cutoff, const std::vector<RMat>& ops0, const std::vector<RMat>& ops1,
                  ExecPolicy p);

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace cvdv::kernels
