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

#include "cvdv/common.hpp"

namespace cvdv {

/// Which rung of the model ladder produced a distribution.
enum class Model { R, C, M, D };

std::string model_name(Model m);
Model parse_model(const std::string& s);

/// Probabilities over the measurement grid X^n, X = { l*(u - floor(d/2)) : u in Z_d }.
/// Index of outcome (u_0, ..., u_{n-1}) is u_0*d^{n-1} + ... + u_{n-1}.
struct OutcomeDistribution {
    int d = 2;
    int modes = 1;
    Model model = Model::R;
    std::vector<double> prob;
    double overflow = 0.0;

    /// Grid coordinate of bin u along one mode.
    double grid_value(int u) const { return lattice_spacing(d) * (u - d / 2); }
    double total() const;
};

/// Bin index u of a qudit basis label a: u = (a + floor(d/2)) mod d.
inline int bin_of_digit(long a, int d) { return static_cast<int>(mod_floor(a + d / 2, d)); }

}  // namespace cvdv
