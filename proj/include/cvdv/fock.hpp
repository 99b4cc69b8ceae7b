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

#include "cvdv/circuit.hpp"
#include "cvdv/common.hpp"
#include "cvdv/distribution.hpp"

namespace cvdv {

/// Ladder and quadrature matrices on Fock levels 0..N-1.
class FockRep {
public:
    explicit FockRep(int cutoff);

    int cutoff() const { return n_; }
    const RMat& a() const { return a_; }
    const RMat& adag() const { return adag_; }
    const RMat& q() const { return q_; }
    const CMat& p() const { return p_; }
    const RMat& number() const { return num_; }

private:
    int n_;
    RMat a_, adag_, q_, num_;
    CMat p_;
};

/// Density matrix on N^modes Fock levels; mode 0 is the most significant index.
/// With window_d > 0 the physical state is Lambda rho Lambda / Tr(Lambda rho) for the window of that d;
/// rho is kept unprojected so window measurements integrate the exact position-space cut.
struct CvState {
    int modes = 1;
    int cutoff = 2;
    CMat rho;
    int window_d = 0;
};

struct FockOptions {
    double leak_tol = 1e-8;
    int cap_single = 256;
    int cap_two = 64;
    bool escalate = true;
    ExecPolicy policy = ExecPolicy::Parallel;
};

CvState initial_vacuum(int n, int cutoff);
CvState pure_state(const CVec& psi, int modes, int cutoff);
/// Embeds the state into a larger cutoff (zero padding per mode).
CvState pad_state(const CvState& s, int cutoff);

double energy(const CvState& s);
/// Population in the top max(2, N/10) levels of any mode.
double leakage(const CvState& s);
int leakage_levels(int cutoff);

/// Hermitian generator G with U = exp(iG), restricted to N levels after evaluation on N+4.
CMat single_mode_generator(const CvGate& g, int cutoff);
CMat single_mode_unitary(const CvGate& g, int cutoff);
/// Dense N^2 x N^2 unitary on modes (0, 1) for CZ, BeamSplitter and MachZehnder.
CMat two_mode_unitary(const CvGate& g, int cutoff);

/// Applies the gate at the state's current cutoff without leakage checks.
CvState apply_cv_gate_fixed(const CvState& s, const CvGate& g);
/// Applies the gate, doubling the cutoff while the gate raises the leakage by more than the tolerance.
CvState apply_cv_gate(const CvState& s, const CvGate& g, const FockOptions& opt = {});

/// Cells of the cut-off window [-floor(d/2), ceil(d/2) - 1].
inline long window_first_cell(int d) { return -(d / 2); }

/// Fock matrix of the position projector onto the window, 16-node Gauss-Legendre per bin.
RMat window_projector(int cutoff, int d, ExecPolicy p = ExecPolicy::Parallel);
/// Position projector onto bin c (absolute cell index), K~ in the Fock basis.
RMat bin_projector(int cutoff, int d, long cell);
/// Marks the state as cut to the window; survival receives Tr(Lambda rho).
CvState project_window(const CvState& s, int d, double* survival = nullptr, ExecPolicy p = ExecPolicy::Parallel);
/// Galerkin form Lambda_N rho Lambda_N / trace of a window-tagged state; identity on untagged states.
/// With 0 < resolution < cutoff the state is first truncated to `resolution` levels per mode, so the
/// projector's slowly decaying Fock tail stays below the base cutoff; the dropped mass goes to `discarded`.
CvState materialize(const CvState& s, ExecPolicy p = ExecPolicy::Parallel, int resolution = 0,
                    double* discarded = nullptr);

OutcomeDistribution pdf_realistic(const CvState& s, int d, ExecPolicy p = ExecPolicy::Parallel);
OutcomeDistribution pdf_cutoff(const CvState& s, int d, ExecPolicy p = ExecPolicy::Parallel);
OutcomeDistribution pdf_modular(const CvState& s, int d, ExecPolicy p = ExecPolicy::Parallel);

/// Position radius beyond which Fock levels below N carry negligible mass.
double position_support(int cutoff);

struct SimulationResult {
    CvState state;
    std::vector<double> energies;  // entry 0 is the input, then one per gate
    std::vector<double> survival;  // model C: one per projection (before each gate and before measurement)
    std::vector<double> discarded;  // model C: mass above the base cutoff dropped before each gate
};

/// Model R applies gates directly; model C interlaces the window projection.
SimulationResult simulate_model(const CvCircuit& c, int d, Model m, int cutoff, const FockOptions& opt = {});

}  // namespace cvdv
