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

#include "locc/linalg.hpp"

#include <cmath>
#include <limits>

namespace locc {

double max_abs(const CMatrix &m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

double unitarity_error(const CMatrix &u) {
    if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
    const CMatrix gram = u * u.adjoint();
    return max_abs(gram - CMatrix::Identity(u.rows(), u.cols()));
}

bool is_unitary(const CMatrix &u, double tol) { return unitarity_error(u) <= tol; }

}  // namespace locc
