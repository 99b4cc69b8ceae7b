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

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cvdv {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;

/// Selects the serial reference kernels or their OpenMP counterparts.
enum class ExecPolicy { Serial, Parallel };

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define CVDV_DEFINE_ERROR(Name) \
    struct Name : Error {       \
        using Error::Error;     \
    }

CVDV_DEFINE_ERROR(ParseError);
CVDV_DEFINE_ERROR(ValidationError);
CVDV_DEFINE_ERROR(DimensionMismatch);
CVDV_DEFINE_ERROR(LeakageExceeded);
CVDV_DEFINE_ERROR(NonFinite);
CVDV_DEFINE_ERROR(EnergyBudgetExceeded);
CVDV_DEFINE_ERROR(DegenerateNormalization);
CVDV_DEFINE_ERROR(QuadratureNotConverged);
CVDV_DEFINE_ERROR(CorrectionTooLarge);
CVDV_DEFINE_ERROR(UnsupportedGate);
CVDV_DEFINE_ERROR(TemplateViolation);
CVDV_DEFINE_ERROR(DimensionNotPowerOfTwo);
CVDV_DEFINE_ERROR(TooLarge);
CVDV_DEFINE_ERROR(ResourceCapExceeded);

#undef CVDV_DEFINE_ERROR

/// Bin width and GKP peak spacing sqrt(2*pi/d).
inline double lattice_spacing(int d) { return std::sqrt(2.0 * kPi / d); }

/// Representative of a mod d in [-floor(d/2), ceil(d/2) - 1].
inline long centered_digit(long a, int d) {
    long h = d / 2;
    long r = (a + h) % d;
    if (r < 0) r += d;
    return r - h;
}

/// Euclidean remainder.
inline long mod_floor(long a, long d) {
    long r = a % d;
    return r < 0 ? r + d : r;
}

/// Half the trace norm of a - b; both must be Hermitian.
double trace_distance(const CMat& a, const CMat& b);

/// Max-abs entry of m - m^dagger.
double hermiticity_residual(const CMat& m);

/// Kronecker product a (x) b.
CMat kron(const CMat& a, const CMat& b);

/// Integer power for register dimensions.
long ipow(long base, int exp);

/// Digit of register index i on subsystem `target`; subsystem 0 is the most significant.
inline long register_digit(long i, int target, int modes, int dim) {
    for (int t = modes - 1; t > target; --t) i /= dim;
    return i % dim;
}

/// m <- A_target m, with A acting on one subsystem of a `modes`-fold register of local dimension dim.
void left_apply_local(CMat& m, const CMat& A, int target, int modes, int dim);
/// rho <- A_target rho A_target^dagger.
void conjugate_local(CMat& rho, const CMat& A, int target, int modes, int dim);
/// rho_IJ *= phase_I conj(phase_J).
void apply_phase_mask(CMat& rho, const CVec& phase);

}  // namespace cvdv
