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

#include "cvdv/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

using nlohmann::json;

namespace cvdv {

namespace {

int ladder_position(Model m) { return static_cast<int>(m); }

json quad_json(const QuadratureConfig& q) {
    return {{"M", q.M},
            {"rule", q.rule == QuadratureRule::GaussLegendre ? "gauss-legendre" : "midpoint"},
            {"q_support", q.q_support},
            {"refine", q.refine},
            {"refine_tol", q.refine_tol}};
}

}  // namespace

double tvd(const OutcomeDistribution& p, const OutcomeDistribution& q) {
    if (p.d != q.d || p.modes != q.modes || p.prob.size() != q.prob.size())
        throw DimensionMismatch("tvd: distributions live on different grids");
    double s = 0.0;
    for (size_t i = 0; i < p.prob.size(); ++i) s += std::abs(p.prob[i] - q.prob[i]);
    return 0.5 * s;
}

int validate_config(const ExperimentConfig& cfg) {
    check_structure(cfg.circuit);
    std::vector<Model> m = cfg.models;
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    if (m.size() < 2) throw ValidationError("select at least two models to compare");
    int d = cfg.d;
    if (d == 0) {
        if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw ValidationError("give d >= 2 or epsilon in (0, 1)");
        const long K = std::max<long>(1, count_elementary(cfg.circuit).K);
        const long chosen = choose_dimension(cfg.epsilon, K, cfg.circuit.modes, cfg.circuit.energy_budget);
        if (chosen > 64 && !cfg.unsafe_large)
            throw ResourceCapExceeded("epsilon selects d=" + std::to_string(chosen) + ", above the desk-scale cap 64");
        if (chosen > (1L << 20))
            throw ResourceCapExceeded("epsilon selects d=" + std::to_string(chosen) + ", above the hard limit 2^20");
        d = static_cast<int>(chosen);
    }
    if (d < 2) throw ValidationError("d must be at least 2");
    if (cfg.cutoff < 2) throw ValidationError("Fock cutoff must be at least 2");
    if (!cfg.unsafe_large) {
        if (cfg.circuit.modes > 2) throw ResourceCapExceeded("n > 2 needs --unsafe-large");
        if (d > 64) throw ResourceCapExceeded("d > 64 needs --unsafe-large");
        if (cfg.cutoff > 200) throw ResourceCapExceeded("N_F > 200 needs --unsafe-large");
    }
    const auto v = validate_parameters(cfg.circuit);
    if (!v.pass) {
        std::string msg = "parameter caps violated:";
        for (const auto& x : v.violations) msg += " gate " + std::to_string(x.gate_index) + " (" + x.message + ")";
        throw ValidationError(msg);
    }
    return d;
}

DvRun run_dv(const CvCircuit& c, int d, int cutoff, const QuadratureConfig& quad, bool corrupt) {
    const SsdResult s = ssd(project_window(initial_vacuum(c.modes, cutoff), d, nullptr, quad.policy), d, quad);
    const SanitizeResult clean = sanitize(s.rho);
    QuditCircuit qc = compile(c, d);
    if (corrupt) qc.gates.push_back(make_qudit_gate(QuditGateKind::X, 0, lattice_spacing(d)));
    DvRun r;
    r.ssd = s.diag;
    r.clipped = clean.clipped;
    r.gates = static_cast<int>(qc.gates.size());
    r.pdf = pdf_dv(apply(clean.rho, qc));
    return r;
}

CompareReport run_compare(const ExperimentConfig& cfg) {
    CompareReport rep;
    rep.d = validate_config(cfg);
    const int d = rep.d;
    rep.inputs = to_json(cfg, d);
    rep.budget = budget_report(cfg.circuit, d, cfg.budget);

    auto wants = [&](Model m) { return std::find(cfg.models.begin(), cfg.models.end(), m) != cfg.models.end(); };
    FockOptions fo = cfg.fock;
    fo.policy = cfg.policy;
    QuadratureConfig quad = cfg.quad;
    quad.policy = cfg.policy;

    auto stage = [&](const std::string& name, const std::function<void()>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        rep.timings.push_back({name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});
    };

    std::vector<OutcomeDistribution> dist;
    std::string current;
    try {
        if (wants(Model::R)) {
            current = "model R";
            stage(current, [&] {
                const auto sim = simulate_model(cfg.circuit, d, Model::R, cfg.cutoff, fo);
                rep.energies_r = sim.energies;
                rep.final_cutoff_r = sim.state.cutoff;
                dist.push_back(pdf_realistic(sim.state, d, cfg.policy));
            });
        }
        if (wants(Model::C) || wants(Model::M)) {
            current = "model C";
            stage(current, [&] {
                const auto sim = simulate_model(cfg.circuit, d, Model::C, cfg.cutoff, fo);
                rep.energies_c = sim.energies;
                rep.survival_c = sim.survival;
                rep.discarded_c = sim.discarded;
                rep.final_cutoff_c = sim.state.cutoff;
                if (wants(Model::C)) dist.push_back(pdf_cutoff(sim.state, d, cfg.policy));
                if (wants(Model::M)) dist.push_back(pdf_modular(sim.state, d, cfg.policy));
            });
        }
        if (wants(Model::D)) {
            current = "model D";
            stage(current, [&] {
                const DvRun r = run_dv(cfg.circuit, d, cfg.cutoff, quad, cfg.corrupt_dv);
                rep.ssd = r.ssd;
                rep.sanitize_clipped = r.clipped;
                rep.dv_gates = r.gates;
                dist.push_back(r.pdf);
            });
        }
    } catch (const std::exception& e) {
        rep.failed_stage = current;
        rep.error = e.what();
        rep.distributions = dist;
        rep.pass = false;
        return rep;
    }
    std::sort(dist.begin(), dist.end(), [](const auto& a, const auto& b) { return a.model < b.model; });
    rep.distributions = dist;

    const double segment[3] = {rep.budget.eps_rc, 0.0, rep.budget.gate_sum};
    rep.pass = true;
    for (size_t i = 0; i < dist.size(); ++i)
        for (size_t j = i + 1; j < dist.size(); ++j) {
            PairResult pr;
            pr.a = dist[i].model;
            pr.b = dist[j].model;
            pr.tvd = tvd(dist[i], dist[j]);
            for (int s = ladder_position(pr.a); s < ladder_position(pr.b); ++s) pr.bound += segment[s];
            pr.pass = pr.tvd <= pr.bound + kTvdFloor;
            rep.pass = rep.pass && pr.pass;
            rep.pairs.push_back(pr);
        }
    return rep;
}

json to_json(const OutcomeDistribution& p) {
    json grid = json::array();
    for (int u = 0; u < p.d; ++u) grid.push_back(p.grid_value(u));
    return {{"model", model_name(p.model)}, {"d", p.d}, {"modes", p.modes}, {"grid", grid},
            {"prob", p.prob}, {"overflow", p.overflow}};
}

json to_json(const ExperimentConfig& cfg, int d) {
    json models = json::array();
    for (Model m : cfg.models) models.push_back(model_name(m));
    return {{"circuit", to_json(cfg.circuit)},
            {"circuit_source", cfg.circuit_source},
            {"d", d},
            {"epsilon", cfg.epsilon},
            {"cutoff", cfg.cutoff},
            {"quadrature", quad_json(cfg.quad)},
            {"models", models},
            {"deterministic", cfg.deterministic},
            {"unsafe_large", cfg.unsafe_large},
            {"corrupt_dv", cfg.corrupt_dv},
            {"leak_tol", cfg.fock.leak_tol},
            {"cubic_constant", cfg.budget.cubic == CubicConstant::Derivation ? 4 : 1},
            {"md_variant", cfg.budget.md_variant == GapVariant::Proof ? "proof" : "statement"}};
}

json to_json(const CompareReport& r, bool include_timings) {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["inputs"] = r.inputs;
    j["pass"] = r.pass;
    if (!r.failed_stage.empty()) {
        j["failed_stage"] = r.failed_stage;
        j["error"] = r.error;
    }
    j["pairs"] = json::array();
    for (const auto& p : r.pairs)
        j["pairs"].push_back({{"a", model_name(p.a)},
                              {"b", model_name(p.b)},
                              {"tvd", p.tvd},
                              {"bound", p.bound},
                              {"floor", kTvdFloor},
                              {"pass", p.pass}});
    j["budget"] = to_json(r.budget);
    j["energy"] = {{"model_R", r.energies_r}, {"model_C", r.energies_c}, {"worst_case", r.budget.energy_trace}};
    j["diagnostics"] = {{"survival_C", r.survival_c},
                        {"discarded_C", r.discarded_c},
                        {"final_cutoff_R", r.final_cutoff_r},
                        {"final_cutoff_C", r.final_cutoff_c},
                        {"ssd", to_json(r.ssd)},
                        {"sanitize_clipped", r.sanitize_clipped},
                        {"dv_gates", r.dv_gates}};
    j["distributions"] = json::array();
    for (const auto& p : r.distributions) j["distributions"].push_back(to_json(p));
    if (include_timings) {
        json t = json::object();
        for (const auto& s : r.timings) t[s.stage] = s.seconds;
        j["timings_seconds"] = t;
    }
    return j;
}

}  // namespace cvdv
