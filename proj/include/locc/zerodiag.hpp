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
#include <utility>
#include <vector>

#include "locc/core.hpp"

namespace locc {

/// One 2×2 sub-rotation acting on rows/columns {p, q}:
///
///   [[ cos θ,          sin θ · e^{iω} ],
///    [ sin θ · e^{-iω},  −cos θ        ]]
///
/// The block is Hermitian and unitary (its own inverse).
struct RotationStep {
    std::size_t p = 0;
    std::size_t q = 1;
    double theta = 0.0;
    double omega = 0.0;

    Eigen::Matrix2cd block() const;
    /// The n×n matrix equal to the identity outside the {p, q} block.
    CMatrix embed(std::size_t n) const;
};

/// Angles that make the two diagonal entries of U·M·U† equal, for any
/// complex 2×2 M. Returned with p = 0, q = 1.
RotationStep equidiagonalize_2x2(const Eigen::Matrix2cd &m);

/// Left-hand side of the equal-diagonal condition
/// (x − t)·cos 2θ + sin 2θ·(y·e^{-iω} + z·e^{iω}) for M = [[x, y], [z, t]].
Complex equidiagonal_condition(const Eigen::Matrix2cd &m, double theta, double omega);

/// Embeds M in the leading block of an l×l zero matrix, l the smallest power
/// of two ≥ n. Returns M unchanged when n is already a power of two.
CMatrix pad_to_power_of_two(const CMatrix &m);

using PairRound = std::vector<std::pair<std::size_t, std::size_t>>;

/// k rounds over 2^k indices; round r pairs indices that differ only in bit r−1.
std::vector<PairRound> schedule_pairings(unsigned k);

struct ZerodiagResult {
    /// U = step_N ⋯ step_2 · step_1, so U·M_pad·U† applies step_1 first.
    CMatrix u;
    std::vector<RotationStep> steps;
    std::size_t padded_dim = 0;
    std::size_t original_dim = 0;
    /// max |diag(U·M_pad·U†)|, absolute.
    double max_diagonal = 0.0;
    /// ‖M‖_max of the input; lets callers express max_diagonal relatively.
    double scale = 0.0;

    /// k·2^{k−1} = ½·l·log₂l for the padded dimension.
    std::size_t step_bound() const;
};

/// Runs the pairing schedule on the padded matrix, equalizing each pair of
/// diagonal entries. Produces an equidiagonalizing U for any square input;
/// no trace precondition.
ZerodiagResult equidiagonalize_schedule(const CMatrix &m, const Tolerances &tol = default_tolerances());

/// Unitary that zeroes the diagonal of a traceless matrix. Throws
/// NotTraceless when |tr M| > tol.trace·‖M‖_max.
ZerodiagResult zerodiagonalize(const CMatrix &m, const Tolerances &tol = default_tolerances());

}  // namespace locc
