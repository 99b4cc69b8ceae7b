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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvdv/budget.hpp"
#include "cvdv/circuit.hpp"
#include "cvdv/distribution.hpp"
#include "cvdv/dv.hpp"
#include "cvdv/fock.hpp"
#include "cvdv/ssd.hpp"

namespace cvdv {

inline constexpr double kTvdFloor = 5e-6;
inline constexpr int kReportSchemaVersion = 1;

/// Half the L1 distance over the shared grid; overflow mass is not part of the grid.
double tvd(const OutcomeDistribution& p, const OutcomeDistribution& q);

struct ExperimentConfig {
    CvCircuit circuit;
    std::string circuit_source = "inline";
    int d = 0;             // 0 selects d from epsilon
    double epsilon = 0.0;  // used only when d == 0
    int cutoff = 60;
    QuadratureConfig quad;
    std::vector<Model> models{Model::R, Model::C, Model::M, Model::D};
    bool deterministic = true;  // omit wall-clock timings from the report
    bool unsafe_large = false;
    bool corrupt_dv = false;  // appends X_d(l) on qudit 0 to the compiled circuit
    ExecPolicy policy = ExecPolicy::Parallel;
    FockOptions fock;
    BudgetOptions budget;
};

/// Throws ValidationError or ResourceCapExceeded; returns the resolved d.
int validate_config(const ExperimentConfig& cfg);

struct PairResult {
    Model a = Model::R;
    Model b = Model::C;
    double tvd = 0.0;
    double bound = 0.0;
    bool pass = true;
};

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

struct CompareReport {
    int d = 0;
    nlohmann::json inputs;
    std::vector<OutcomeDistribution> distributions;
    std::vector<PairResult> pairs;
    BudgetReport budget;
    std::vector<double> energies_r, energies_c, survival_c, discarded_c;
    int final_cutoff_r = 0, final_cutoff_c = 0;
    SsdDiagnostics ssd;
    double sanitize_clipped = 0.0;
    int dv_gates = 0;
    std::vector<StageTiming> timings;
    std::string failed_stage;
    std::string error;
    bool pass = false;
};

/// Runs every selected model and checks each pair against the summed ladder bounds
/// (eps_RC between R and C, 0 between C and M, the per-gate sum between M and D).
CompareReport run_compare(const ExperimentConfig& cfg);

nlohmann::json to_json(const OutcomeDistribution& p);
nlohmann::json to_json(const CompareReport& r, bool include_timings);
nlohmann::json to_json(const ExperimentConfig& cfg, int d);

/// DV side of the ladder: SSD of the window-projected vacuum, compiled circuit, computational-basis PDF.
struct DvRun {
    OutcomeDistribution pdf;
    SsdDiagnostics ssd;
    double clipped = 0.0;
    int gates = 0;
};
DvRun run_dv(const CvCircuit& c, int d, int cutoff, const QuadratureConfig& quad, bool corrupt = false);

}  // namespace cvdv
