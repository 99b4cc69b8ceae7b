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

#include "cvdv/ssd.hpp"
#include "oracles.hpp"

namespace cvdv {
namespace {

constexpr int kN = 60;

CvState from(const oracle::CVec& v) { return pure_state(v, 1, static_cast<int>(v.size())); }

struct Case {
    const char* name;
    oracle::Wave wave;
    oracle::CVec fock;
};

std::vector<Case> cases() {
    const cplx alpha(0.4, -0.3);
    return {{"vacuum", oracle::vacuum_wave(), oracle::coherent_fock(0.0, kN)},
            {"coherent", oracle::coherent_wave(alpha), oracle::coherent_fock(alpha, kN)},
            {"squeezed", oracle::squeezed_wave(0.3), oracle::squeezed_fock(0.3, kN)}};
}

TEST(Ssd, MatchesWavefunctionOracle) {
    for (const auto& c : cases())
        for (int d : {4, 8}) {
            const SsdResult r = ssd(from(c.fock), d);
            EXPECT_LT(oracle::trace_distance(r.rho.sigma, oracle::ssd_pure(c.wave, d)), 1e-6) << c.name << " d=" << d;
        }
}

TEST(Ssd, OutputIsAUnitTraceHermitianMatrix) {
    std::mt19937_64 rng(11);
    const SsdResult r = ssd(from(oracle::random_low_energy(rng, 6, 40)), 8);
    EXPECT_NEAR(r.rho.sigma.trace().real(), 1.0, 1e-6);
    EXPECT_LT(r.diag.hermiticity, 1e-10);
    EXPECT_GT(r.diag.min_eigenvalue, -1e-6);
    EXPECT_LT(r.diag.refinement_delta, 1e-5);
}

TEST(Ssd, DiagonalAgreesWithFullMatrix) {
    std::mt19937_64 rng(12);
    const CvState s = from(oracle::random_low_energy(rng, 5, 40));
    const SsdResult r = ssd(s, 8);
    const auto diag = ssd_diagonal(s, 8);
    for (int a = 0; a < 8; ++a) EXPECT_NEAR(diag[a], r.rho.sigma(a, a).real(), 1e-9);
}

TEST(Ssd, SerialEqualsParallel) {
    std::mt19937_64 rng(13);
    const CvState s = from(oracle::random_low_energy(rng, 5, 30));
    QuadratureConfig a, b;
    a.policy = ExecPolicy::Serial;
    b.policy = ExecPolicy::Parallel;
    EXPECT_EQ(ssd(s, 8, a).rho.sigma, ssd(s, 8, b).rho.sigma);
}

TEST(Ssd, TwoModeProductFactorizes) {
    const oracle::CVec c0 = oracle::coherent_fock(cplx(0.3, 0.1), 16), c1 = oracle::coherent_fock(cplx(-0.2, 0.0), 16);
    const CvState s = pure_state(oracle::kron(c0, c1), 2, 16);
    const SsdResult r = ssd(s, 4);
    const CMat expect = oracle::kron(ssd(from(c0), 4).rho.sigma, ssd(from(c1), 4).rho.sigma);
    EXPECT_LT((r.rho.sigma - expect).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Ssd, WindowOptionMatchesTaggedState) {
    const CvState s = from(oracle::coherent_fock(cplx(0.8, 0.0), kN));
    QuadratureConfig cfg;
    cfg.window = true;
    const SsdResult a = ssd(s, 8, cfg);
    const SsdResult b = ssd(project_window(s, 8), 8);
    EXPECT_LT((a.rho.sigma - b.rho.sigma).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(a.diag.window_mass, 1.0);
}

TEST(Sanitize, ClipsSmallNegativeEigenvalues) {
    QuditDensity q;
    q.d = 2;
    q.sigma = CMat::Zero(2, 2);
    q.sigma(0, 0) = 1.00005;
    q.sigma(1, 1) = -0.00005;
    const SanitizeResult s = sanitize(q);
    EXPECT_NEAR(s.clipped, 5e-5, 1e-15);
    EXPECT_NEAR(s.rho.sigma.trace().real(), 1.0, 1e-15);
    q.sigma(1, 1) = -0.01;
    EXPECT_THROW(sanitize(q), CorrectionTooLarge);
}

}  // namespace
}  // namespace cvdv
