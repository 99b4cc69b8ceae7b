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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cvdv/fock.hpp"
#include "oracles.hpp"

namespace cvdv {
namespace {

constexpr int kN = 60;

CvState from(const oracle::CVec& v) { return pure_state(v, 1, static_cast<int>(v.size())); }

double fidelity(const CvState& s, const oracle::CVec& v) {
    const CvState m = materialize(s);
    return (v.adjoint() * m.rho.topLeftCorner(v.size(), v.size()) * v)(0, 0).real();
}

TEST(FockRep, CanonicalCommutatorBelowTopLevel) {
    const FockRep f(12);
    const RMat c = f.a() * f.adag() - f.adag() * f.a();
    EXPECT_LT((c.topLeftCorner(11, 11) - RMat::Identity(11, 11)).cwiseAbs().maxCoeff(), 1e-13);
    const CMat qp = f.q().cast<cplx>() * f.p() - f.p() * f.q().cast<cplx>();
    EXPECT_NEAR(std::abs(qp(3, 3) - cplx(0, 1)), 0.0, 1e-13);
}

TEST(FockGates, UnitaryOnLowLevels) {
    for (const CvGate& g : {CvGate::rotation(0, 0.4), CvGate::squeeze(0, 0.3), CvGate::shear(0, 0.5),
                            CvGate::displace(0, 0.3, -0.2), CvGate::cubic(0, 0.05)}) {
        const CMat u = single_mode_unitary(g, kN);
        const CMat low = (u.adjoint() * u).topLeftCorner(20, 20);
        EXPECT_LT((low - CMat::Identity(20, 20)).cwiseAbs().maxCoeff(), 1e-8) << gate_name(g.kind);
    }
}

TEST(FockGates, DisplaceXOnVacuumIsCoherent) {
    const double s = 0.9;
    const CvState out = apply_cv_gate(initial_vacuum(1, kN), CvGate::displace_x(0, s));
    EXPECT_NEAR(fidelity(out, oracle::coherent_fock(cplx(s / std::sqrt(2.0), 0.0), out.cutoff)), 1.0, 1e-10);
}

TEST(FockGates, DisplaceZOnVacuumIsCoherent) {
    const double s = -0.7;
    const CvState out = apply_cv_gate(initial_vacuum(1, kN), CvGate::displace_z(0, s));
    EXPECT_NEAR(fidelity(out, oracle::coherent_fock(cplx(0.0, s / std::sqrt(2.0)), out.cutoff)), 1.0, 1e-10);
}

TEST(FockGates, RotationRotatesCoherentAmplitude) {
    const cplx alpha(0.6, -0.3);
    const double th = 0.8;
    const CvState out = apply_cv_gate(from(oracle::coherent_fock(alpha, kN)), CvGate::rotation(0, th));
    EXPECT_NEAR(fidelity(out, oracle::coherent_fock(alpha * std::polar(1.0, th), kN)), 1.0, 1e-10);
}

TEST(FockGates, SqueezeMatchesClosedFormFockAmplitudes) {
    for (double r : {0.3, -0.4}) {
        const CvState out = apply_cv_gate(initial_vacuum(1, kN), CvGate::squeeze(0, r));
        EXPECT_NEAR(fidelity(out, oracle::squeezed_fock(r, out.cutoff)), 1.0, 1e-9) << "r=" << r;
    }
}

TEST(FockGates, SqueezeStretchesPositionVariance) {
    const double r = 0.25;
    const CvState out = apply_cv_gate(initial_vacuum(1, kN), CvGate::squeeze(0, r));
    const FockRep f(out.cutoff);
    const double q2 = (out.rho * (f.q() * f.q()).cast<cplx>()).trace().real();
    EXPECT_NEAR(q2, std::exp(2 * r) / 2, 1e-9);
}

TEST(FockGates, TwoModeUnitaryIsUnitaryOnLowBlock) {
    const int n = 10;
    for (const CvGate& g : {CvGate::cz(0, 1, 0.3), CvGate::beam_splitter(0, 1, 0.4), CvGate::mach_zehnder(0, 1, 0.2, 0.5)}) {
        const CMat u = two_mode_unitary(g, n);
        EXPECT_EQ(u.rows(), n * n);
        const CMat uu = u.adjoint() * u;
        EXPECT_NEAR(std::abs(uu(0, 0) - 1.0), 0.0, 1e-10) << gate_name(g.kind);
    }
}

TEST(FockGates, BeamSplitterConservesEnergy) {
    CvState s = initial_vacuum(2, 16);
    s = apply_cv_gate(s, CvGate::displace_x(0, 1.0));
    const double before = energy(s);
    s = apply_cv_gate(s, CvGate::beam_splitter(0, 1, 0.6));
    EXPECT_NEAR(energy(s), before, 1e-9);
}

TEST(FockState, VacuumEnergyAndPadding) {
    const CvState v = initial_vacuum(2, 8);
    EXPECT_NEAR(energy(v), 1.0, 1e-15);
    const CvState p = pad_state(v, 12);
    EXPECT_EQ(p.rho.rows(), 144);
    EXPECT_NEAR(p.rho.trace().real(), 1.0, 1e-15);
    EXPECT_NEAR(energy(p), 1.0, 1e-15);
    EXPECT_THROW(pad_state(v, 4), ValidationError);
}

TEST(FockState, LeakageCountsTopLevels) {
    EXPECT_EQ(leakage_levels(60), 6);
    EXPECT_EQ(leakage_levels(10), 2);
    oracle::CVec top = oracle::CVec::Zero(20);
    top(19) = 1.0;
    EXPECT_NEAR(leakage(from(top)), 1.0, 1e-15);
    EXPECT_EQ(leakage(initial_vacuum(1, 20)), 0.0);
}

TEST(Window, SurvivalOfVacuumMatchesErf) {
    for (int d : {4, 8, 16}) {
        double surv = 0.0;
        const CvState t = project_window(initial_vacuum(1, kN), d, &surv);
        const double l = oracle::spacing(d);
        const double lo = (window_first_cell(d) - 0.5) * l, hi = lo + d * l;
        EXPECT_NEAR(surv, 0.5 * (std::erf(hi) - std::erf(lo)), 1e-10) << "d=" << d;
        EXPECT_EQ(t.window_d, d);
        double again = 0.0;
        project_window(t, d, &again);
        EXPECT_EQ(again, 1.0);
    }
}

TEST(Window, MaterializeGivesNormalizedHermitianState) {
    const CvState t = project_window(from(oracle::coherent_fock(cplx(0.5, 0.2), kN)), 8);
    const CvState m = materialize(t);
    EXPECT_EQ(m.window_d, 0);
    EXPECT_NEAR(m.rho.trace().real(), 1.0, 1e-12);
    EXPECT_LT(hermiticity_residual(m.rho), 1e-15);
    EXPECT_EQ(materialize(m).rho, m.rho);
}

TEST(Window, ResolutionBoundedMaterializeReportsDiscardedMass) {
    oracle::CVec v = oracle::CVec::Zero(40);
    v(0) = std::sqrt(0.9);
    v(35) = std::sqrt(0.1);
    double lost = -1.0;
    const CvState m = materialize(project_window(from(v), 8), ExecPolicy::Serial, 20, &lost);
    EXPECT_NEAR(lost, 0.1, 1e-12);
    EXPECT_EQ(m.cutoff, 40);
    EXPECT_EQ(m.rho.block(20, 20, 20, 20).cwiseAbs().maxCoeff(), 0.0);
}

// Window bins are reported conditional on landing in the window; the rest is overflow.
TEST(Measurement, RealisticBinsMatchErf) {
    const int d = 8;
    const OutcomeDistribution p = pdf_realistic(initial_vacuum(1, kN), d);
    const double l = oracle::spacing(d);
    const double lo = (window_first_cell(d) - 0.5) * l, hi = lo + d * l;
    const double inside = 0.5 * (std::erf(hi) - std::erf(lo));
    EXPECT_NEAR(p.prob[d / 2], std::erf(l / 2) / inside, 1e-10);
    EXPECT_NEAR(p.overflow, 1.0 - inside, 1e-10);
    EXPECT_NEAR(p.total(), 1.0, 1e-12);
}

TEST(Measurement, CutoffEqualsModularOnTaggedStates) {
    std::mt19937_64 rng(5);
    for (int d : {4, 8}) {
        const CvState t = project_window(from(oracle::random_low_energy(rng, 6, 40)), d);
        const auto c = pdf_cutoff(t, d), m = pdf_modular(t, d);
        for (int u = 0; u < d; ++u) EXPECT_NEAR(c.prob[u], m.prob[u], 1e-12);
    }
}

TEST(Measurement, SerialEqualsParallel) {
    std::mt19937_64 rng(6);
    const CvState s = from(oracle::random_low_energy(rng, 8, 30));
    for (auto f : {&pdf_realistic, &pdf_cutoff, &pdf_modular}) {
        const auto a = f(s, 8, ExecPolicy::Serial), b = f(s, 8, ExecPolicy::Parallel);
        EXPECT_EQ(a.prob, b.prob);
    }
}

TEST(Simulation, ModelCRecordsOneSurvivalPerProjection) {
    CvCircuit c;
    c.energy_budget = 2.0;
    c.gates = {CvGate::shear(0, 0.5), CvGate::rotation(0, 0.3)};
    const SimulationResult r = simulate_model(c, 8, Model::C, 40);
    EXPECT_EQ(r.survival.size(), 3u);
    EXPECT_EQ(r.discarded.size(), 2u);
    EXPECT_EQ(r.energies.size(), 3u);
    EXPECT_THROW(simulate_model(c, 8, Model::D, 40), ValidationError);
}

TEST(Simulation, EnergyBudgetIsEnforced) {
    CvCircuit c;
    c.energy_budget = 0.6;
    c.gates = {CvGate::displace_x(0, 2.0)};
    EXPECT_THROW(simulate_model(c, 8, Model::R, 40), EnergyBudgetExceeded);
}

}  // namespace
}  // namespace cvdv
