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

#include <gtest/gtest.h>

#include "cvdv/quadrature.hpp"
#include "oracles.hpp"

namespace cvdv {
namespace {

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2mMinus1) {
    for (int m : {1, 4, 16}) {
        const QuadRule r = gauss_legendre(m, -0.7, 1.3);
        for (int k = 0; k < 2 * m; ++k) {
            double sum = 0.0;
            for (size_t i = 0; i < r.x.size(); ++i) sum += r.w[i] * std::pow(r.x[i], k);
            const double exact = (std::pow(1.3, k + 1) - std::pow(-0.7, k + 1)) / (k + 1);
            EXPECT_NEAR(sum, exact, 1e-12 * std::max(1.0, std::abs(exact))) << "m=" << m << " k=" << k;
        }
    }
}

TEST(MidpointRule, WeightsSumToLength) {
    const QuadRule r = midpoint_rule(9, -2.0, 1.0);
    double sum = 0.0;
    for (double w : r.w) sum += w;
    EXPECT_NEAR(sum, 3.0, 1e-14);
    EXPECT_EQ(r.x.size(), 9u);
}

TEST(HermiteFunctions, MatchStdHermite) {
    std::vector<double> out(40);
    for (double x : {-6.0, -1.3, 0.0, 0.4, 2.5, 7.1}) {
        hermite_functions(40, x, out.data());
        for (int n = 0; n < 40; ++n) EXPECT_NEAR(out[n], oracle::hermite_fn(n, x), 1e-11) << "n=" << n << " x=" << x;
    }
}

TEST(HermiteFunctions, OrthonormalUnderQuadrature) {
    const QuadRule r = gauss_legendre(400, -14.0, 14.0);
    const RMat t = hermite_table(30, r.x);
    const RMat gram = t * Eigen::Map<const RVec>(r.w.data(), r.w.size()).asDiagonal() * t.transpose();
    EXPECT_LT((gram - RMat::Identity(30, 30)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(HermiteTable, ColumnsMatchPointwiseEvaluation) {
    const std::vector<double> xs{-1.0, 0.25, 3.0};
    const RMat t = hermite_table(12, xs);
    std::vector<double> col(12);
    for (size_t j = 0; j < xs.size(); ++j) {
        hermite_functions(12, xs[j], col.data());
        for (int n = 0; n < 12; ++n) EXPECT_EQ(t(n, static_cast<Eigen::Index>(j)), col[n]);
    }
}

}  // namespace
}  // namespace cvdv
