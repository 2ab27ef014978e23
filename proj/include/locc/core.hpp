// Copyright 2026 The locc-discrim Authors
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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace locc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

enum class ErrorCode {
    DimensionMismatch,
    NotNormalized,
    InvalidPartition,
    ShapeMismatch,
    NotUnitary,
    NotTraceless,
    NotOrthogonal,
    NotMutuallyOrthogonal,
    TooFewParties,
    TooFewStates,
    ParseError,
};

std::string_view error_code_name(ErrorCode code);

class LoccError : public std::runtime_error {
  public:
    LoccError(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/// Every numerical threshold used by the library. Residual checks that act on
/// overlap matrices are relative to ‖M‖_max; state-level checks are absolute.
struct Tolerances {
    double normalization = 1e-9;      // |‖amps‖ - 1|
    double orthogonality = 1e-9;      // |<phi|psi>|
    double unitarity = 1e-12;         // ‖UU† - I‖_max
    double trace = 1e-9;              // |tr M| / ‖M‖_max
    double zerodiag = 1e-9;           // max |diag(U M U†)| / ‖M‖_max
    double equal_skip = 1e-14;        // pair already equal, no rotation
    double branch_overlap = 1e-9;     // per-outcome normalized overlap
    double degenerate_norm = 1e-10;   // conditional vector treated as null
    double reachable_probability = 1e-18;
    double probability_sum = 1e-9;
};

inline const Tolerances &default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

}  // namespace locc
