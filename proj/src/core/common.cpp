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

#include "cvdv/common.hpp"

#include <Eigen/Eigenvalues>

#include "cvdv/distribution.hpp"

namespace cvdv {

double trace_distance(const CMat& a, const CMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("trace_distance: shape mismatch");
    CMat diff = a - b;
    diff = 0.5 * (diff + diff.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMat> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double hermiticity_residual(const CMat& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

std::string model_name(Model m) {
    switch (m) {
        case Model::R: return "R";
        case Model::C: return "C";
        case Model::M: return "M";
        case Model::D: return "D";
    }
    return "?";
}

Model parse_model(const std::string& s) {
    if (s == "R") return Model::R;
    if (s == "C") return Model::C;
    if (s == "M") return Model::M;
    if (s == "D") return Model::D;
    throw ParseError("unknown model '" + s + "' (expected R, C, M or D)");
}

double OutcomeDistribution::total() const {
    double t = 0.0;
    for (double p : prob) t += p;
    return t;
}

}  // namespace cvdv
