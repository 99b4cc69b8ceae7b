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

#include "cvdv/circuit.hpp"

namespace cvdv {
namespace {

TemplateSpec simple_template(int K, int n) {
    TemplateSpec t;
    t.K = K;
    for (int j = 0; j < K + 2; ++j) {
        PassiveBlock b;
        for (int i = 0; i < n * (n - 1) / 2; ++i) b.mz.push_back({0.1 * (i + 1), -0.2});
        for (int i = 0; i < n; ++i) {
            b.rotations.push_back(0.05 * (j + i));
            b.displacements.push_back({0.01 * i, -0.02 * j});
        }
        t.blocks.push_back(b);
    }
    for (int j = 0; j < K; ++j) t.gammas.push_back(0.03);
    for (int i = 0; i < n; ++i) t.squeeze.push_back(0.1);
    return t;
}

CvCircuit every_kind() {
    CvCircuit c;
    c.modes = 2;
    c.energy_budget = 3.0;
    c.gates = {CvGate::fourier(0),         CvGate::rotation(1, 0.3),   CvGate::shear(0, -0.4),
               CvGate::cubic(1, 0.01),     CvGate::squeeze(0, 0.2),    CvGate::displace_x(1, 0.5),
               CvGate::displace_z(0, -0.5), CvGate::displace(1, 0.1, 0.2), CvGate::cz(0, 1, 0.7),
               CvGate::beam_splitter(1, 0, 0.9), CvGate::mach_zehnder(0, 1, 0.25, -1.5)};
    return c;
}

TEST(GateKind, CodesRoundTrip) {
    for (GateKind k : kAllGateKinds) EXPECT_EQ(parse_gate_code(gate_code(k)), k);
    EXPECT_THROW(parse_gate_code("NOPE"), ParseError);
}

TEST(GateKind, ArityAndParameterCounts) {
    EXPECT_TRUE(is_two_mode(GateKind::CZ));
    EXPECT_TRUE(is_two_mode(GateKind::MachZehnder));
    EXPECT_FALSE(is_two_mode(GateKind::Squeeze));
    EXPECT_EQ(param_count(GateKind::Displace), 2);
    EXPECT_EQ(param_count(GateKind::Fourier), 0);
    EXPECT_TRUE(is_passive(GateKind::BeamSplitter));
    EXPECT_FALSE(is_passive(GateKind::Cubic));
}

TEST(CircuitJson, SerializeParseRoundTripIsExact) {
    const CvCircuit c = every_kind();
    EXPECT_EQ(parse_circuit(serialize(c)), c);
}

TEST(CircuitJson, RandomParametersRoundTripBitwise) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        CvCircuit c;
        c.modes = 2;
        c.energy_budget = 2.5;
        c.gates = {CvGate::rotation(0, u(rng)), CvGate::displace(1, u(rng), u(rng)), CvGate::cz(1, 0, u(rng))};
        EXPECT_EQ(parse_circuit(serialize(c)), c);
    }
}

TEST(CircuitJson, MalformedInputIsAParseError) {
    EXPECT_THROW(parse_circuit("{\"modes\": 1, \"gates\": ["), ParseError);
    EXPECT_THROW(parse_circuit("{\"modes\": 1, \"energy_budget\": 1, \"gates\": [{\"type\": \"Q\", \"mode\": 0}]}"),
                 ParseError);
}

TEST(CheckStructure, RejectsBadCircuits) {
    CvCircuit c;
    c.modes = 2;
    c.energy_budget = 1.0;
    c.gates = {CvGate::cz(0, 0, 1.0)};
    EXPECT_THROW(check_structure(c), ValidationError);
    c.gates = {CvGate::rotation(2, 0.1)};
    EXPECT_THROW(check_structure(c), ValidationError);
    c.gates = {CvGate::rotation(0, std::nan(""))};
    EXPECT_THROW(check_structure(c), ValidationError);
    c.gates = {};
    c.energy_budget = 0.4;
    EXPECT_THROW(check_structure(c), ValidationError);
}

TEST(Caps, ClosedForms) {
    EXPECT_NEAR(squeeze_cap(2.0), std::log(2.0), 1e-15);
    EXPECT_NEAR(cubic_cap(2.0), 8.0 * std::pow(2.0, 1.5), 1e-12);
}

TEST(Caps, ValidationReportsEachViolation) {
    CvCircuit c;
    c.energy_budget = 0.5;
    c.gates = {CvGate::squeeze(0, 0.5), CvGate::cubic(0, 100.0), CvGate::rotation(0, 0.1)};
    const ValidationReport r = validate_parameters(c);
    EXPECT_FALSE(r.pass);
    ASSERT_EQ(r.violations.size(), 2u);
    EXPECT_EQ(r.violations[0].gate_index, 0);
    EXPECT_EQ(r.violations[1].kind, GateKind::Cubic);
}

TEST(Template, ClementsMeshSize) {
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(static_cast<int>(clements_pairs(n).size()), n * (n - 1) / 2);
}

TEST(Template, ExpansionCountsForOneRoundTwoModes) {
    const CvCircuit c = expand_template(simple_template(1, 2), 2);
    const GateCount g = count_elementary(c);
    EXPECT_EQ(g.per_kind.at(GateKind::MachZehnder), 3);
    EXPECT_EQ(g.per_kind.at(GateKind::Rotation), 6);
    EXPECT_EQ(g.per_kind.at(GateKind::Displace), 6);
    EXPECT_EQ(g.per_kind.at(GateKind::Squeeze), 2);
    EXPECT_EQ(g.per_kind.at(GateKind::Cubic), 1);
    EXPECT_EQ(g.K, 1);
    EXPECT_TRUE(g.template_conformant);
    EXPECT_EQ(c.energy_budget, 1.0);
}

TEST(Template, CubicGatesActOnModeZero) {
    const CvCircuit c = expand_template(simple_template(3, 3), 3, 4.0);
    int cubic = 0;
    for (const auto& g : c.gates)
        if (g.kind == GateKind::Cubic) {
            ++cubic;
            EXPECT_EQ(g.modes[0], 0);
        }
    EXPECT_EQ(cubic, 3);
    EXPECT_EQ(c.template_rounds, 3);
}

TEST(Template, JsonRoundTrip) {
    const TemplateSpec t = simple_template(2, 2);
    const TemplateSpec back = template_from_json(to_json(t), 2);
    EXPECT_EQ(expand_template(back, 2), expand_template(t, 2));
}

}  // namespace
}  // namespace cvdv
