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

#include <iosfwd>
#include <string>
#include <vector>

namespace cvdv {

enum ExitCode : int { kExitOk = 0, kExitBoundViolation = 1, kExitUsage = 2, kExitRuntime = 3 };

/// Subcommands: compile, budget, simulate, compare, lower, selftest. args[0] is the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

/// Quick end-to-end checks; returns the number of failures.
int selftest(std::ostream& out);

}  // namespace cvdv
