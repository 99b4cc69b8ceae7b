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

#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cvdv/cli.hpp"

namespace cvdv {
namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "cvdv");
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kData = CVDV_DATA_DIR;

TEST(Cli, UsageErrorsExitWithTwo) {
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(run({"compile", "--d", "8"}).code, kExitUsage);
    EXPECT_EQ(run({"compile", "--circuit", kData + "/missing.json", "--d", "8"}).code, kExitUsage);
    EXPECT_EQ(run({"compare", "--circuit", kData + "/vacuum.json", "--d", "128"}).code, kExitUsage);
    EXPECT_EQ(run({"lower", "--circuit", kData + "/shear.json", "--k", "0"}).code, kExitUsage);
}

TEST(Cli, BudgetFormulaMode) {
    const CliRun r = run({"budget", "--K", "1", "--n", "1", "--estar", "0.5", "--epsilon", "0.1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["d"], 9105307);
    EXPECT_LE(j["total_bound"].get<double>(), 0.1);
}

TEST(Cli, BudgetCircuitMode) {
    const CliRun r = run({"budget", "--circuit", kData + "/template_k1.json", "--d", "16"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j.contains("gates"));
}

TEST(Cli, CompileEmitsQuditCircuit) {
    const CliRun r = run({"compile", "--circuit", kData + "/shear.json", "--d", "8"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["d"], 8);
    EXPECT_EQ(j["gates"].size(), 1u);
}

TEST(Cli, CompareExitCodes) {
    EXPECT_EQ(run({"compare", "--circuit", kData + "/template_k1.json", "--d", "16"}).code, kExitOk);
    EXPECT_EQ(run({"compare", "--circuit", kData + "/shear.json", "--d", "16", "--models", "M,D", "--corrupt-dv"}).code,
              kExitBoundViolation);
}

TEST(Cli, CompareIsBitwiseReproducible) {
    const std::vector<std::string> args{"compare", "--circuit", kData + "/shear.json", "--d", "8"};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, SimulateSingleModel) {
    const CliRun r = run({"simulate", "--circuit", kData + "/shear.json", "--d", "8", "--model", "D"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("\"prob\""), std::string::npos);
}

TEST(Cli, LowerEmitsQubitCircuit) {
    const CliRun r = run({"lower", "--circuit", kData + "/shear.json", "--k", "2"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("\"qubits\""), std::string::npos);
}

TEST(Cli, Selftest) {
    std::ostringstream out;
    EXPECT_EQ(selftest(out), 0) << out.str();
}

}  // namespace
}  // namespace cvdv
