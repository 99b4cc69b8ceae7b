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

#include <array>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cvdv/common.hpp"

namespace cvdv {

enum class GateKind {
    Fourier,
    Rotation,
    Shear,
    Cubic,
    Squeeze,
    DisplaceX,
    DisplaceZ,
    Displace,
    CZ,
    BeamSplitter,
    MachZehnder
};

inline constexpr std::array<GateKind, 11> kAllGateKinds = {
    GateKind::Fourier,   GateKind::Rotation,  GateKind::Shear,    GateKind::Cubic,
    GateKind::Squeeze,   GateKind::DisplaceX, GateKind::DisplaceZ, GateKind::Displace,
    GateKind::CZ,        GateKind::BeamSplitter, GateKind::MachZehnder};

/// Document code: F, R, P, C3, S, DX, DZ, D, CZ, BS, MZ.
std::string gate_code(GateKind k);
std::string gate_name(GateKind k);
GateKind parse_gate_code(const std::string& code);
int param_count(GateKind k);
bool is_two_mode(GateKind k);
bool is_passive(GateKind k);

/// One elementary CV gate. Parameter layout per kind:
///   Rotation theta | Shear s | Cubic gamma | Squeeze r | DisplaceX s | DisplaceZ s
///   Displace (r_q, r_p) | CZ s | BeamSplitter theta | MachZehnder (theta, phi)
struct CvGate {
    GateKind kind = GateKind::Fourier;
    std::array<int, 2> modes{0, -1};
    std::array<double, 2> params{0.0, 0.0};

    static CvGate fourier(int m);
    static CvGate rotation(int m, double theta);
    static CvGate shear(int m, double s);
    static CvGate cubic(int m, double gamma);
    static CvGate squeeze(int m, double r);
    static CvGate displace_x(int m, double s);
    static CvGate displace_z(int m, double s);
    static CvGate displace(int m, double rq, double rp);
    static CvGate cz(int k, int l, double s);
    static CvGate beam_splitter(int k, int l, double theta);
    static CvGate mach_zehnder(int k, int l, double theta, double phi);

    bool operator==(const CvGate&) const = default;
};

struct CvCircuit {
    int modes = 1;
    double energy_budget = 0.5;
    std::vector<CvGate> gates;
    /// Number of cubic rounds K when the circuit came from expand_template, else 0.
    int template_rounds = 0;

    bool operator==(const CvCircuit&) const = default;
};

/// Throws ValidationError on out-of-range or repeated modes, non-finite parameters, n < 1 or E* < 1/2.
void check_structure(const CvCircuit& c);

struct CapViolation {
    int gate_index = 0;
    GateKind kind = GateKind::Fourier;
    double value = 0.0;
    double cap = 0.0;
    std::string message;
};

struct ValidationReport {
    bool pass = true;
    std::vector<CapViolation> violations;
};

/// Largest |r| with e^{|r|} <= sqrt(2 E*).
double squeeze_cap(double estar);
/// 8 E*^{3/2}.
double cubic_cap(double estar);

ValidationReport validate_parameters(const CvCircuit& c);

/// Passive block V_j: Clements mesh, then one rotation and one displacement per mode.
struct PassiveBlock {
    std::vector<std::array<double, 2>> mz;             // (theta, phi), n(n-1)/2 entries
    std::vector<double> rotations;                     // n entries
    std::vector<std::array<double, 2>> displacements;  // (r_q, r_p), n entries
};

struct TemplateSpec {
    int K = 0;
    std::vector<PassiveBlock> blocks;  // K + 2
    std::vector<double> gammas;        // K
    std::vector<double> squeeze;       // n
};

/// Pairs (k, k+1) of the rectangular mesh in application order.
std::vector<std::array<int, 2>> clements_pairs(int n);

/// V_1, C(gamma_1), ..., V_K, C(gamma_K), V_{K+1}, S(s), V_{K+2}; cubic gates act on mode 0.
/// A negative energy budget selects n/2.
CvCircuit expand_template(const TemplateSpec& spec, int n, double energy_budget = -1.0);

struct GateCount {
    long L = 0;
    long K = 0;
    std::map<GateKind, long> per_kind;
    bool from_template = false;
    bool template_conformant = true;
};

GateCount count_elementary(const CvCircuit& c);

nlohmann::json to_json(const CvGate& g);
CvGate gate_from_json(const nlohmann::json& j, int modes);
nlohmann::json to_json(const CvCircuit& c);
nlohmann::json to_json(const TemplateSpec& t);
TemplateSpec template_from_json(const nlohmann::json& j, int modes);

/// Parses a circuit document (gate list or template form).
CvCircuit parse_circuit(const std::string& text);
CvCircuit circuit_from_json(const nlohmann::json& j);
std::string serialize(const CvCircuit& c);

}  // namespace cvdv
