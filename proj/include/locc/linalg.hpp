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

#include <cstddef>

#include "locc/core.hpp"

namespace locc {

/// Largest entry modulus; 0 for an empty matrix.
double max_abs(const CMatrix &m);

/// ‖U·U† − I‖_max, or +inf when U is not square.
double unitarity_error(const CMatrix &u);

bool is_unitary(const CMatrix &u, double tol);

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Smallest power of two ≥ n (1 for n ≤ 1).
constexpr std::size_t next_power_of_two(std::size_t n) {
    std::size_t l = 1;
    while (l < n) l <<= 1;
    return l;
}

/// log2 of a power of two.
constexpr unsigned log2_exact(std::size_t l) {
    unsigned k = 0;
    while ((std::size_t{1} << k) < l) ++k;
    return k;
}

}  // namespace locc
