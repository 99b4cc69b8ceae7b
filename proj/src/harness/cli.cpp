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

#include "cvdv/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cvdv/budget.hpp"
#include "cvdv/harness.hpp"
#include "cvdv/lowering.hpp"

using nlohmann::json;

namespace cvdv {

namespace {

constexpr const char* kSchemaHelp = R"(Circuit JSON:
  {"modes": n, "energy_budget": E*, "gates": [ {"type": "R", "mode": 0, "theta": 0.3}, ... ]}
  or {"modes": n, "energy_budget": E*, "template": {"squeeze": [...], "rounds": [...]}}
Gate codes: F R P C3 S DX DZ D CZ BS MZ; two-mode gates use "modes": [k, l].
Exit codes: 0 ok, 1 bound violation, 2 usage or validation error, 3 runtime error.
)";

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

void emit(std::ostream& out, const std::string& path, const json& j) {
    const std::string text = j.dump(2) + "\n";
    if (path.empty())
        out << text;
    else
        write_file(path, text);
}

std::vector<Model> parse_models(const std::string& s) {
    std::vector<Model> m;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) m.push_back(parse_model(tok));
    return m;
}

std::string pdf_csv(const OutcomeDistribution& p) {
    std::ostringstream os;
    os.precision(17);
    os << (p.modes == 2 ? "x0,x1,probability\n" : "x,probability\n");
    for (size_t i = 0; i < p.prob.size(); ++i) {
        if (p.modes == 2)
            os << p.grid_value(static_cast<int>(i) / p.d) << "," << p.grid_value(static_cast<int>(i) % p.d);
        else
            os << p.grid_value(static_cast<int>(i));
        os << "," << p.prob[i] << "\n";
    }
    os << "# overflow," << p.overflow << "\n";
    return os.str();
}

struct Common {
    std::string circuit;
    int d = 0;
    double epsilon = 0.0;
    int nf = 60;
    int quad_m = 31;
    std::string quad_rule = "gauss-legendre";
    bool serial = false;
    bool unsafe_large = false;
    bool timings = false;
    std::string out;
};

void add_experiment_flags(CLI::App* sc, Common& c) {
    sc->add_option("--circuit", c.circuit, "circuit JSON file")->required();
    sc->add_option("--d", c.d, "qudit dimension");
    sc->add_option("--epsilon", c.epsilon, "target total error; selects d when --d is absent");
    sc->add_option("--nf", c.nf, "initial Fock cutoff per mode");
    sc->add_option("--quad-m", c.quad_m, "quadrature nodes per cell");
    sc->add_option("--quad-rule", c.quad_rule, "gauss-legendre or midpoint")
        ->check(CLI::IsMember({"gauss-legendre", "midpoint"}));
    sc->add_flag("--serial", c.serial, "use the serial reference kernels");
    sc->add_flag("--unsafe-large", c.unsafe_large, "lift the n<=2, d<=64, N_F<=200 caps");
    sc->add_flag("--timings", c.timings, "include wall-clock timings (breaks bitwise reproducibility)");
    sc->add_option("--out", c.out, "write JSON here instead of stdout");
}

ExperimentConfig make_config(const Common& c) {
    ExperimentConfig cfg;
    cfg.circuit = parse_circuit(read_file(c.circuit));
    cfg.circuit_source = c.circuit;
    cfg.d = c.d;
    cfg.epsilon = c.epsilon;
    cfg.cutoff = c.nf;
    cfg.quad.M = c.quad_m;
    cfg.quad.rule = c.quad_rule == "midpoint" ? QuadratureRule::Midpoint : QuadratureRule::GaussLegendre;
    cfg.unsafe_large = c.unsafe_large;
    cfg.deterministic = !c.timings;
    cfg.policy = c.serial ? ExecPolicy::Serial : ExecPolicy::Parallel;
    return cfg;
}

bool is_usage_error(const std::exception& e) {
    return dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e) ||
           dynamic_cast<const ResourceCapExceeded*>(&e) || dynamic_cast<const DimensionNotPowerOfTwo*>(&e) ||
           dynamic_cast<const TemplateViolation*>(&e) || dynamic_cast<const UnsupportedGate*>(&e);
}

}  // namespace

int selftest(std::ostream& out) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok, double value) {
        out << (ok ? "PASS " : "FAIL ") << name << " (" << value << ")\n";
        failures += ok ? 0 : 1;
    };
    OutcomeDistribution a, b;
    a.d = b.d = 2;
    a.prob = {0.5, 0.5};
    b.prob = {1.0, 0.0};
    check("tvd half", std::abs(tvd(a, b) - 0.5) < 1e-15, tvd(a, b));

    const long d = choose_dimension(0.1, 1, 1, 1.0);
    const bool tight = total_bound_value(1, 1, 1.0, d) <= 0.1 && total_bound_value(1, 1, 1.0, d - 1) > 0.1;
    check("choose_dimension is the smallest admissible d", tight, static_cast<double>(d));

    const auto [qbc, rep] = lower(compile(CvCircuit{1, 0.5, {CvGate::fourier(0)}, 0}, 8), 3);
    const double res = equivalence_check(qbc, make_qudit_gate(QuditGateKind::Fourier, 0));
    check("QFT lowering equals F_8", res < 1e-10, res);

    ExperimentConfig cfg;
    cfg.circuit = CvCircuit{1, 0.5, {}, 0};
    cfg.d = 8;
    cfg.cutoff = 40;
    cfg.models = {Model::M, Model::D};
    const auto r = run_compare(cfg);
    const double t = r.pairs.empty() ? 1.0 : r.pairs[0].tvd;
    check("empty circuit TVD(M, D) at d=8", r.pass && t <= kTvdFloor, t);
    return failures;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"CV to DV circuit compiler with a four-model verification harness"};
    app.footer(kSchemaHelp);
    app.require_subcommand(1);

    Common cc;
    auto* compile_cmd = app.add_subcommand("compile", "compile a CV circuit to a qudit circuit");
    compile_cmd->add_option("--circuit", cc.circuit, "circuit JSON file")->required();
    compile_cmd->add_option("--d", cc.d, "qudit dimension")->required()->check(CLI::PositiveNumber);
    compile_cmd->add_option("--out", cc.out, "write JSON here instead of stdout");

    Common bc;
    long bK = -1, bn = -1;
    double bestar = -1.0;
    std::string bcsv;
    bool cubic_statement = false, md_statement = false;
    auto* budget_cmd = app.add_subcommand("budget", "error budget for a circuit, or d for a target epsilon");
    budget_cmd->add_option("--circuit", bc.circuit, "circuit JSON file");
    budget_cmd->add_option("--d", bc.d, "qudit dimension");
    budget_cmd->add_option("--epsilon", bc.epsilon, "target total error");
    budget_cmd->add_option("--K", bK, "cubic rounds (formula mode)");
    budget_cmd->add_option("--n", bn, "modes (formula mode)");
    budget_cmd->add_option("--estar", bestar, "energy budget (formula mode)");
    budget_cmd->add_option("--csv", bcsv, "also write a per-gate CSV");
    budget_cmd->add_flag("--cubic-statement", cubic_statement, "cubic constant 1 instead of 4");
    budget_cmd->add_flag("--md-statement", md_statement, "use the stated eps_MD form");
    budget_cmd->add_option("--out", bc.out, "write JSON here instead of stdout");

    Common sc;
    std::string smodel = "D", scsv;
    auto* simulate_cmd = app.add_subcommand("simulate", "outcome distribution of one model");
    add_experiment_flags(simulate_cmd, sc);
    simulate_cmd->add_option("--model", smodel, "R, C, M or D")->check(CLI::IsMember({"R", "C", "M", "D"}));
    simulate_cmd->add_option("--csv", scsv, "also write grid and probabilities as CSV");

    Common xc;
    std::string xmodels = "R,C,M,D";
    bool corrupt = false;
    auto* compare_cmd = app.add_subcommand("compare", "run the model ladder and check every pairwise bound");
    add_experiment_flags(compare_cmd, xc);
    compare_cmd->add_option("--models", xmodels, "comma-separated subset of R,C,M,D");
    compare_cmd->add_flag("--corrupt-dv", corrupt, "test hook: append a lattice shift to the DV circuit")
        ->group("");

    Common lc;
    int lk = 0;
    std::string lqasm;
    auto* lower_cmd = app.add_subcommand("lower", "compile and lower to qubit gates with d = 2^k");
    lower_cmd->add_option("--circuit", lc.circuit, "circuit JSON file")->required();
    lower_cmd->add_option("--k", lk, "qubits per mode")->required()->check(CLI::Range(1, 20));
    lower_cmd->add_option("--qasm", lqasm, "also write OpenQASM text");
    lower_cmd->add_option("--out", lc.out, "write JSON here instead of stdout");

    auto* selftest_cmd = app.add_subcommand("selftest", "quick end-to-end checks");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*compile_cmd) {
            const CvCircuit c = parse_circuit(read_file(cc.circuit));
            emit(out, cc.out, to_json(compile(c, cc.d)));
            return kExitOk;
        }
        if (*budget_cmd) {
            BudgetOptions opt;
            opt.cubic = cubic_statement ? CubicConstant::Statement : CubicConstant::Derivation;
            opt.md_variant = md_statement ? GapVariant::Statement : GapVariant::Proof;
            if (bc.circuit.empty()) {
                if (bK < 1 || bn < 1 || bestar <= 0.0 || bc.epsilon <= 0.0)
                    throw ValidationError("formula mode needs --K >= 1, --n >= 1, --estar > 0 and --epsilon > 0");
                const long d = choose_dimension(bc.epsilon, bK, bn, bestar);
                emit(out, bc.out,
                     {{"d", d},
                      {"k", qubits_per_mode(bc.epsilon, bK, bn, bestar)},
                      {"total_bound", total_bound_value(bK, bn, bestar, static_cast<double>(d))}});
                return kExitOk;
            }
            const CvCircuit c = parse_circuit(read_file(bc.circuit));
            long d = bc.d;
            if (d == 0) {
                const long K = count_elementary(c).K;
                if (K < 1 || bc.epsilon <= 0.0) throw ValidationError("give --d, or --epsilon for a circuit with K >= 1");
                d = choose_dimension(bc.epsilon, K, c.modes, c.energy_budget);
            }
            if (d < 2) throw ValidationError("d must be at least 2");
            const BudgetReport r = budget_report(c, static_cast<int>(d), opt);
            if (!bcsv.empty()) write_file(bcsv, to_csv(r));
            emit(out, bc.out, to_json(r));
            return kExitOk;
        }
        if (*simulate_cmd) {
            ExperimentConfig cfg = make_config(sc);
            const Model m = parse_model(smodel);
            cfg.models = {m, m == Model::D ? Model::M : Model::D};
            const int d = validate_config(cfg);
            OutcomeDistribution p;
            FockOptions fo;
            fo.policy = cfg.policy;
            if (m == Model::D) {
                cfg.quad.policy = cfg.policy;
                p = run_dv(cfg.circuit, d, cfg.cutoff, cfg.quad).pdf;
            } else {
                const auto sim = simulate_model(cfg.circuit, d, m == Model::R ? Model::R : Model::C, cfg.cutoff, fo);
                p = m == Model::R   ? pdf_realistic(sim.state, d, cfg.policy)
                    : m == Model::C ? pdf_cutoff(sim.state, d, cfg.policy)
                                    : pdf_modular(sim.state, d, cfg.policy);
            }
            if (!scsv.empty()) write_file(scsv, pdf_csv(p));
            json j = to_json(p);
            j["schema_version"] = kReportSchemaVersion;
            j["inputs"] = to_json(cfg, d);
            emit(out, sc.out, j);
            return kExitOk;
        }
        if (*compare_cmd) {
            ExperimentConfig cfg = make_config(xc);
            cfg.models = parse_models(xmodels);
            cfg.corrupt_dv = corrupt;
            const CompareReport r = run_compare(cfg);
            emit(out, xc.out, to_json(r, !cfg.deterministic));
            if (!cfg.deterministic)
                for (const auto& t : r.timings) err << "timing " << t.stage << " " << t.seconds << " s\n";
            if (!r.failed_stage.empty()) {
                err << "error in " << r.failed_stage << ": " << r.error << "\n";
                return kExitRuntime;
            }
            return r.pass ? kExitOk : kExitBoundViolation;
        }
        if (*lower_cmd) {
            const CvCircuit c = parse_circuit(read_file(lc.circuit));
            const auto [qbc, rep] = lower(compile(c, 1 << lk), lk);
            if (!lqasm.empty()) write_file(lqasm, to_qasm(qbc));
            emit(out, lc.out, {{"report", to_json(rep)}, {"circuit", to_json(qbc)}});
            return kExitOk;
        }
        if (*selftest_cmd) return selftest(out) == 0 ? kExitOk : kExitBoundViolation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        if (is_usage_error(e)) {
            err << kSchemaHelp;
            return kExitUsage;
        }
        return kExitRuntime;
    }
    return kExitUsage;
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return cli_main(args, std::cout, std::cerr);
}

}  // namespace cvdv
