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

#include "cvdv/circuit.hpp"

#include <algorithm>
#include <set>

using nlohmann::json;

namespace cvdv {

namespace {

struct KindInfo {
    GateKind kind;
    const char* code;
    const char* name;
    int params;
    bool two_mode;
    bool passive;
    std::array<const char*, 2> keys;
};

constexpr std::array<KindInfo, 11> kKinds = {{
    {GateKind::Fourier, "F", "Fourier", 0, false, true, {nullptr, nullptr}},
    {GateKind::Rotation, "R", "Rotation", 1, false, true, {"theta", nullptr}},
    {GateKind::Shear, "P", "Shear", 1, false, false, {"s", nullptr}},
    {GateKind::Cubic, "C3", "Cubic", 1, false, false, {"gamma", nullptr}},
    {GateKind::Squeeze, "S", "Squeeze", 1, false, false, {"r", nullptr}},
    {GateKind::DisplaceX, "DX", "DisplaceX", 1, false, false, {"s", nullptr}},
    {GateKind::DisplaceZ, "DZ", "DisplaceZ", 1, false, false, {"s", nullptr}},
    {GateKind::Displace, "D", "Displace", 2, false, false, {"r_q", "r_p"}},
    {GateKind::CZ, "CZ", "CZ", 1, true, false, {"s", nullptr}},
    {GateKind::BeamSplitter, "BS", "BeamSplitter", 1, true, true, {"theta", nullptr}},
    {GateKind::MachZehnder, "MZ", "MachZehnder", 2, true, true, {"theta", "phi"}},
}};

const KindInfo& info(GateKind k) {
    for (const auto& i : kKinds)
        if (i.kind == k) return i;
    throw UnsupportedGate("unknown gate kind");
}

CvGate make(GateKind k, int m0, int m1, double p0, double p1) {
    CvGate g;
    g.kind = k;
    g.modes = {m0, m1};
    g.params = {p0, p1};
    return g;
}

void check_gate(const CvGate& g, int n, const std::string& where) {
    const auto& in = info(g.kind);
    if (g.modes[0] < 0 || g.modes[0] >= n)
        throw ValidationError(where + ": mode index " + std::to_string(g.modes[0]) + " out of range for n=" +
                              std::to_string(n));
    if (in.two_mode) {
        if (g.modes[1] < 0 || g.modes[1] >= n)
            throw ValidationError(where + ": mode index " + std::to_string(g.modes[1]) + " out of range for n=" +
                                  std::to_string(n));
        if (g.modes[0] == g.modes[1]) throw ValidationError(where + ": modes must be distinct");
    }
    for (int i = 0; i < in.params; ++i)
        if (!std::isfinite(g.params[i])) throw ValidationError(where + ": parameter is not finite");
}

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(where + ": bad field '" + key + "': " + e.what());
    }
}

std::array<double, 2> pair_of(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) throw ParseError(where + ": expected a two-element array");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string gate_code(GateKind k) { return info(k).code; }
std::string gate_name(GateKind k) { return info(k).name; }
int param_count(GateKind k) { return info(k).params; }
bool is_two_mode(GateKind k) { return info(k).two_mode; }
bool is_passive(GateKind k) { return info(k).passive; }

GateKind parse_gate_code(const std::string& code) {
    for (const auto& i : kKinds)
        if (code == i.code || code == i.name) return i.kind;
    throw ParseError("unknown gate kind '" + code + "'");
}

CvGate CvGate::fourier(int m) { return make(GateKind::Fourier, m, -1, 0, 0); }
CvGate CvGate::rotation(int m, double theta) { return make(GateKind::Rotation, m, -1, theta, 0); }
CvGate CvGate::shear(int m, double s) { return make(GateKind::Shear, m, -1, s, 0); }
CvGate CvGate::cubic(int m, double gamma) { return make(GateKind::Cubic, m, -1, gamma, 0); }
CvGate CvGate::squeeze(int m, double r) { return make(GateKind::Squeeze, m, -1, r, 0); }
CvGate CvGate::displace_x(int m, double s) { return make(GateKind::DisplaceX, m, -1, s, 0); }
CvGate CvGate::displace_z(int m, double s) { return make(GateKind::DisplaceZ, m, -1, s, 0); }
CvGate CvGate::displace(int m, double rq, double rp) { return make(GateKind::Displace, m, -1, rq, rp); }
CvGate CvGate::cz(int k, int l, double s) { return make(GateKind::CZ, k, l, s, 0); }
CvGate CvGate::beam_splitter(int k, int l, double theta) { return make(GateKind::BeamSplitter, k, l, theta, 0); }
CvGate CvGate::mach_zehnder(int k, int l, double theta, double phi) {
    return make(GateKind::MachZehnder, k, l, theta, phi);
}

void check_structure(const CvCircuit& c) {
    if (c.modes < 1) throw ValidationError("circuit needs at least one mode");
    if (!(c.energy_budget >= 0.5) || !std::isfinite(c.energy_budget))
        throw ValidationError("energy budget must be finite and at least 1/2");
    for (size_t i = 0; i < c.gates.size(); ++i) check_gate(c.gates[i], c.modes, "gate " + std::to_string(i));
}

double squeeze_cap(double estar) { return 0.5 * std::log(2.0 * estar); }
double cubic_cap(double estar) { return 8.0 * std::pow(estar, 1.5); }

ValidationReport validate_parameters(const CvCircuit& c) {
    ValidationReport rep;
    const double rcap = squeeze_cap(c.energy_budget);
    const double gcap = cubic_cap(c.energy_budget);
    for (size_t i = 0; i < c.gates.size(); ++i) {
        const CvGate& g = c.gates[i];
        if (g.kind == GateKind::Squeeze && std::abs(g.params[0]) > rcap) {
            rep.violations.push_back({static_cast<int>(i), g.kind, std::abs(g.params[0]), rcap,
                                      "squeezing e^|r| exceeds sqrt(2 E*)"});
        } else if (g.kind == GateKind::Cubic && std::abs(g.params[0]) > gcap) {
            rep.violations.push_back({static_cast<int>(i), g.kind, std::abs(g.params[0]), gcap,
                                      "cubicity exceeds 8 E*^(3/2)"});
        }
    }
    rep.pass = rep.violations.empty();
    return rep;
}

std::vector<std::array<int, 2>> clements_pairs(int n) {
    std::vector<std::array<int, 2>> out;
    for (int layer = 0; layer < n; ++layer)
        for (int k = layer % 2; k + 1 < n; k += 2) out.push_back({k, k + 1});
    return out;
}

CvCircuit expand_template(const TemplateSpec& spec, int n, double energy_budget) {
    if (n < 1) throw DimensionMismatch("template needs at least one mode");
    if (spec.K < 0) throw DimensionMismatch("template round count must be non-negative");
    const size_t nmz = static_cast<size_t>(n) * (n - 1) / 2;
    if (spec.blocks.size() != static_cast<size_t>(spec.K) + 2)
        throw DimensionMismatch("template needs K+2 passive blocks, got " + std::to_string(spec.blocks.size()));
    if (spec.gammas.size() != static_cast<size_t>(spec.K))
        throw DimensionMismatch("template needs K cubicities, got " + std::to_string(spec.gammas.size()));
    if (spec.squeeze.size() != static_cast<size_t>(n))
        throw DimensionMismatch("template needs n squeezing values, got " + std::to_string(spec.squeeze.size()));
    for (const auto& b : spec.blocks) {
        if (b.mz.size() != nmz || b.rotations.size() != static_cast<size_t>(n) ||
            b.displacements.size() != static_cast<size_t>(n))
            throw DimensionMismatch("passive block sizes do not match n=" + std::to_string(n));
    }
    CvCircuit c;
    c.modes = n;
    c.energy_budget = energy_budget < 0 ? 0.5 * n : energy_budget;
    c.template_rounds = spec.K;
    const auto pairs = clements_pairs(n);
    auto emit_block = [&](const PassiveBlock& b) {
        for (size_t i = 0; i < pairs.size(); ++i)
            c.gates.push_back(CvGate::mach_zehnder(pairs[i][0], pairs[i][1], b.mz[i][0], b.mz[i][1]));
        for (int m = 0; m < n; ++m) c.gates.push_back(CvGate::rotation(m, b.rotations[m]));
        for (int m = 0; m < n; ++m)
            c.gates.push_back(CvGate::displace(m, b.displacements[m][0], b.displacements[m][1]));
    };
    for (int j = 0; j < spec.K; ++j) {
        emit_block(spec.blocks[j]);
        c.gates.push_back(CvGate::cubic(0, spec.gammas[j]));
    }
    emit_block(spec.blocks[spec.K]);
    for (int m = 0; m < n; ++m) c.gates.push_back(CvGate::squeeze(m, spec.squeeze[m]));
    emit_block(spec.blocks[spec.K + 1]);
    return c;
}

GateCount count_elementary(const CvCircuit& c) {
    GateCount gc;
    for (GateKind k : kAllGateKinds) gc.per_kind[k] = 0;
    for (const auto& g : c.gates) ++gc.per_kind[g.kind];
    gc.L = static_cast<long>(c.gates.size());
    gc.K = gc.per_kind[GateKind::Cubic];
    gc.from_template = c.template_rounds > 0;
    if (gc.from_template) gc.template_conformant = gc.L <= 10L * c.template_rounds * c.modes * c.modes;
    return gc;
}

json to_json(const CvGate& g) {
    const auto& in = info(g.kind);
    json j;
    j["type"] = in.code;
    if (in.two_mode)
        j["modes"] = {g.modes[0], g.modes[1]};
    else
        j["mode"] = g.modes[0];
    for (int i = 0; i < in.params; ++i) j[in.keys[i]] = g.params[i];
    return j;
}

CvGate gate_from_json(const json& j, int modes) {
    if (!j.is_object()) throw ParseError("gate entry must be an object");
    const auto kind = parse_gate_code(field<std::string>(j, "type", "gate"));
    const auto& in = info(kind);
    CvGate g;
    g.kind = kind;
    const std::string where = std::string("gate ") + in.code;
    if (in.two_mode) {
        const auto m = field<std::vector<int>>(j, "modes", where);
        if (m.size() != 2) throw ParseError(where + ": 'modes' needs two entries");
        g.modes = {m[0], m[1]};
    } else {
        g.modes = {field<int>(j, "mode", where), -1};
    }
    for (int i = 0; i < in.params; ++i) g.params[i] = field<double>(j, in.keys[i], where);
    check_gate(g, modes, where);
    return g;
}

json to_json(const CvCircuit& c) {
    json j;
    j["modes"] = c.modes;
    j["energy_budget"] = c.energy_budget;
    if (c.template_rounds > 0) j["template_rounds"] = c.template_rounds;
    j["gates"] = json::array();
    for (const auto& g : c.gates) j["gates"].push_back(to_json(g));
    return j;
}

json to_json(const TemplateSpec& t) {
    json j;
    j["K"] = t.K;
    j["rounds"] = json::array();
    for (size_t b = 0; b < t.blocks.size(); ++b) {
        json r;
        r["mz"] = json::array();
        for (const auto& p : t.blocks[b].mz) r["mz"].push_back({p[0], p[1]});
        r["rotations"] = t.blocks[b].rotations;
        r["displacements"] = json::array();
        for (const auto& p : t.blocks[b].displacements) r["displacements"].push_back({p[0], p[1]});
        if (b < t.gammas.size()) r["gamma"] = t.gammas[b];
        j["rounds"].push_back(r);
    }
    j["squeeze"] = t.squeeze;
    return j;
}

TemplateSpec template_from_json(const json& j, int modes) {
    const std::string where = "template";
    TemplateSpec t;
    t.K = field<int>(j, "K", where);
    const auto rounds = field<json>(j, "rounds", where);
    if (!rounds.is_array()) throw ParseError("template: 'rounds' must be an array");
    for (size_t b = 0; b < rounds.size(); ++b) {
        const auto& r = rounds[b];
        const std::string rw = "template round " + std::to_string(b);
        PassiveBlock blk;
        for (const auto& p : r.value("mz", json::array())) blk.mz.push_back(pair_of(p, rw));
        blk.rotations = field<std::vector<double>>(r, "rotations", rw);
        for (const auto& p : field<json>(r, "displacements", rw)) blk.displacements.push_back(pair_of(p, rw));
        if (static_cast<int>(b) < t.K) t.gammas.push_back(field<double>(r, "gamma", rw));
        t.blocks.push_back(std::move(blk));
    }
    t.squeeze = field<std::vector<double>>(j, "squeeze", where);
    (void)modes;
    return t;
}

CvCircuit circuit_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("circuit document must be a JSON object");
    const int n = field<int>(j, "modes", "circuit");
    const double estar = field<double>(j, "energy_budget", "circuit");
    if (n < 1) throw ValidationError("circuit needs at least one mode");
    CvCircuit c;
    if (j.contains("template")) {
        const TemplateSpec t = template_from_json(j.at("template"), n);
        c = expand_template(t, n, estar);
    } else {
        c.modes = n;
        c.energy_budget = estar;
        const auto gates = field<json>(j, "gates", "circuit");
        if (!gates.is_array()) throw ParseError("circuit: 'gates' must be an array");
        for (size_t i = 0; i < gates.size(); ++i) {
            try {
                c.gates.push_back(gate_from_json(gates[i], n));
            } catch (const ValidationError& e) {
                throw ValidationError("gate " + std::to_string(i) + ": " + e.what());
            } catch (const ParseError& e) {
                throw ParseError("gate " + std::to_string(i) + ": " + e.what());
            }
        }
        c.template_rounds = j.value("template_rounds", 0);
    }
    check_structure(c);
    return c;
}

CvCircuit parse_circuit(const std::string& text) { return circuit_from_json(parse_document(text)); }

std::string serialize(const CvCircuit& c) { return to_json(c).dump(2); }

}  // namespace cvdv
