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

#include <random>

#include <gtest/gtest.h>

#include "cvdv/kernels.hpp"
#include "oracles.hpp"

namespace cvdv {
namespace {

CMat random_density(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> g;
    CMat a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = cplx(g(rng), g(rng));
    CMat rho = a * a.adjoint();
    return rho / rho.trace().real();
}

kernels::CellTable table(int cutoff, int d, int cells) {
    const double l = lattice_spacing(d);
    return kernels::make_cell_table(cutoff, d, -cells / 2, cells, gauss_legendre(9, -l / 2, l / 2));
}

// The parallel kernels must reproduce the serial reference bit for bit.
TEST(Kernels, SsdSingleModeSerialEqualsParallel) {
    std::mt19937_64 rng(1);
    const auto t = table(24, 8, 24);
    const CMat rho = random_density(rng, 24);
    EXPECT_EQ(kernels::serial::ssd_single_mode(rho, t), kernels::omp::ssd_single_mode(rho, t));
}

TEST(Kernels, CellProjectorsSerialEqualsParallel) {
    const auto t = table(20, 4, 12);
    const auto a = kernels::serial::cell_projectors(t);
    const auto b = kernels::omp::cell_projectors(t);
    ASSERT_EQ(a.size(), b.size());
    for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Kernels, ModeTensorSerialEqualsParallel) {
    const auto t = table(12, 4, 12);
    const auto a = kernels::serial::ssd_mode_tensor(t);
    const auto b = kernels::omp::ssd_mode_tensor(t);
    ASSERT_EQ(a.size(), 16u);
    for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(Kernels, ContractionsSerialEqualsParallel) {
    std::mt19937_64 rng(2);
    const auto t = table(8, 4, 8);
    const auto ops = kernels::serial::cell_projectors(t);
    const CMat rho1 = random_density(rng, 8);
    EXPECT_EQ(kernels::serial::contract_one(rho1, ops), kernels::omp::contract_one(rho1, ops));
    const CMat rho2 = random_density(rng, 64);
    EXPECT_EQ(kernels::serial::contract_two(rho2, 8, ops, ops), kernels::omp::contract_two(rho2, 8, ops, ops));
}

TEST(Kernels, ContractOneIsTraceAgainstEachOperator) {
    std::mt19937_64 rng(3);
    const auto t = table(10, 4, 8);
    const auto ops = kernels::serial::cell_projectors(t);
    const CMat rho = random_density(rng, 10);
    const CVec out = kernels::contract_one(rho, ops, ExecPolicy::Serial);
    for (size_t p = 0; p < ops.size(); ++p) {
        const cplx expect = (ops[p].cast<cplx>().transpose() * rho).trace();
        EXPECT_NEAR(std::abs(out(static_cast<Eigen::Index>(p)) - expect), 0.0, 1e-13);
    }
}

TEST(Kernels, CellProjectorsMatchOracleIntegral) {
    const int d = 4, cutoff = 6;
    const auto t = table(cutoff, d, 4);
    const auto ops = kernels::cell_projectors(t, ExecPolicy::Serial);
    const double l = lattice_spacing(d);
    for (int c = 0; c < t.cells; ++c) {
        const double centre = l * static_cast<double>(t.cell_index(c));
        for (int m = 0; m < cutoff; ++m)
            for (int n = 0; n < cutoff; ++n) {
                double ref = 0.0;
                for (const auto& [x, w] : oracle::simpson(centre - l / 2, centre + l / 2, 200))
                    ref += w * oracle::hermite_fn(m, x) * oracle::hermite_fn(n, x);
                EXPECT_NEAR(ops[static_cast<size_t>(c)](m, n), ref, 1e-10);
            }
    }
}

}  // namespace
}  // namespace cvdv
