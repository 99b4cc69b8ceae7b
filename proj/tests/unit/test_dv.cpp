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

#include "cvdv/dv.hpp"
#include "oracles.hpp"

namespace cvdv {
namespace {

CMat circuit_unitary(const QuditCircuit& qc) {
    const long dim = ipow(qc.d, qc.n);
    CMat u = CMat::Identity(dim, dim);
    for (const auto& g : qc.gates) {
        CMat local = gate_matrix(g, qc.d);
        if (qc.n == 2 && !is_two_qudit(g.kind))
            local = g.targets[0] == 0 ? kron(local, CMat::Identity(qc.d, qc.d)) : kron(CMat::Identity(qc.d, qc.d), local);
        else if (qc.n == 2 && g.targets[0] == 1) {
            const CMat swap = gate_matrix(make_qudit_gate(QuditGateKind::Swap, 0, 0.0, 1), qc.d);
            local = swap * local * swap;
        }
        u = local * u;
    }
    return u;
}

TEST(QuditGates, FourierMatchesDefinition) {
    for (int d : {2, 5, 8}) EXPECT_LT((fourier_matrix(d) - oracle::fourier(d)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(QuditGates, DiagonalKindsMatchDefinitions) {
    const int d = 8;
    const double s = 0.37;
    EXPECT_LT((gate_matrix(make_qudit_gate(QuditGateKind::Z, 0, s), d) -
               oracle::diag_fn(d, [s](double x) { return s * x; })).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT((gate_matrix(make_qudit_gate(QuditGateKind::P, 0, s), d) -
               oracle::diag_fn(d, [s](double x) { return s * x * x / 2; })).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT((gate_matrix(make_qudit_gate(QuditGateKind::CZ, 0, s, 1), d) - oracle::cz_qudit(d, s)).cwiseAbs().maxCoeff(),
              1e-13);
}

TEST(QuditGates, PhasesAgreeWithMatrices) {
    const int d = 4;
    for (auto k : {QuditGateKind::Z, QuditGateKind::P, QuditGateKind::C, QuditGateKind::CZ}) {
        const QuditGate g = make_qudit_gate(k, 0, 0.3, k == QuditGateKind::CZ ? 1 : -1);
        ASSERT_TRUE(is_diagonal(k));
        const CVec ph = diagonal_phases(g, d);
        EXPECT_LT((CMat(ph.asDiagonal()) - gate_matrix(g, d)).cwiseAbs().maxCoeff(), 1e-15) << qudit_gate_name(k);
    }
}

TEST(QuditGates, AllKindsAreUnitary) {
    const int d = 4;
    for (auto k : {QuditGateKind::Fourier, QuditGateKind::FourierInv, QuditGateKind::Z, QuditGateKind::X,
                   QuditGateKind::P, QuditGateKind::C, QuditGateKind::CZ, QuditGateKind::Swap}) {
        const QuditGate g = make_qudit_gate(k, 0, 0.4, is_two_qudit(k) ? 1 : -1);
        const CMat u = gate_matrix(g, d);
        EXPECT_LT((u.adjoint() * u - CMat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff(), 1e-13)
            << qudit_gate_name(k);
    }
}

TEST(Compile, FourierIsOneGate) {
    const auto gs = compile_gate(CvGate::fourier(0), 8);
    ASSERT_EQ(gs.size(), 1u);
    EXPECT_EQ(gs[0].kind, QuditGateKind::Fourier);
}

TEST(Compile, RotationByQuarterTurnIsFourier) {
    CvCircuit c;
    c.gates = {CvGate::rotation(0, kPi / 2)};
    const CMat u = circuit_unitary(compile(c, 8));
    const CMat f = fourier_matrix(8);
    const cplx phase = (f.adjoint() * u).trace() / 8.0;
    EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
    EXPECT_LT((u - phase * f).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Compile, DisplacementsAreSingleShifts) {
    CvCircuit c;
    c.gates = {CvGate::displace(0, 0.3, -0.2)};
    const QuditCircuit qc = compile(c, 8);
    ASSERT_EQ(qc.gates.size(), 2u);
    EXPECT_EQ(qc.gates[0].kind, QuditGateKind::Z);
    EXPECT_EQ(qc.gates[1].kind, QuditGateKind::X);
    EXPECT_DOUBLE_EQ(qc.gates[0].param, 0.2);
    EXPECT_DOUBLE_EQ(qc.gates[1].param, -0.3);
}

TEST(Compile, ProvenancePointsAtSourceGates) {
    CvCircuit c;
    c.modes = 2;
    c.energy_budget = 1.0;
    c.gates = {CvGate::squeeze(0, 0.1), CvGate::cz(0, 1, 0.2), CvGate::beam_splitter(0, 1, 0.3)};
    const QuditCircuit qc = compile(c, 4);
    const auto prov = qc.provenance();
    ASSERT_EQ(prov.size(), qc.gates.size());
    EXPECT_EQ(prov.front(), 0);
    EXPECT_EQ(prov.back(), 2);
    EXPECT_TRUE(std::is_sorted(prov.begin(), prov.end()));
}

TEST(Apply, MatchesDenseConjugation) {
    std::mt19937_64 rng(21);
    const int d = 4;
    CvCircuit c;
    c.modes = 2;
    c.energy_budget = 2.0;
    c.gates = {CvGate::shear(0, 0.4), CvGate::cz(0, 1, 0.5), CvGate::rotation(1, 0.3), CvGate::mach_zehnder(1, 0, 0.2, 0.6)};
    const QuditCircuit qc = compile(c, d);
    const oracle::CVec v = oracle::random_low_energy(rng, 16, 16);
    QuditDensity s{d, 2, v * v.adjoint()};
    const CMat u = circuit_unitary(qc);
    const QuditDensity out = apply(s, qc);
    EXPECT_LT((out.sigma - u * s.sigma * u.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Measure, LabelsLandInCentredBins) {
    const int d = 8;
    for (int a = 0; a < d; ++a) {
        QuditDensity s{d, 1, CMat::Zero(d, d)};
        s.sigma(a, a) = 1.0;
        const OutcomeDistribution p = pdf_dv(s);
        EXPECT_EQ(p.prob[bin_of_digit(a, d)], 1.0);
        EXPECT_NEAR(p.grid_value(bin_of_digit(a, d)), lattice_spacing(d) * centered_digit(a, d), 1e-14);
    }
}

}  // namespace
}  // namespace cvdv
