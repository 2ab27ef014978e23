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
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "locc/cascade.hpp"
#include "locc/protocol.hpp"

namespace locc {

/// Pairwise protocol for candidates (first, second); verdict psi keeps
/// `first`, verdict phi keeps `second`.
struct PairProtocol {
    std::size_t first = 0;
    std::size_t second = 1;
    std::variant<LoccProtocol, CascadeProtocol> protocol;
};

/// Multi-copy exclusion strategy. Each round spends one copy on the pairwise
/// protocol for the two lowest-indexed surviving candidates and discards the
/// loser, so every run plays exactly copies_used = n − 1 rounds. As the pair
/// played depends on earlier verdicts, the plan holds a protocol for each
/// pair the rule can reach.
struct ExclusionPlan {
    std::vector<StateVector> states;
    std::vector<PairProtocol> pair_protocols;
    std::size_t copies_used = 0;

    const PairProtocol &protocol_for(std::size_t first, std::size_t second) const;
};

/// Bipartite pairwise protocols over one partition. Throws TooFewStates,
/// ShapeMismatch, NotMutuallyOrthogonal.
ExclusionPlan exclusion_protocol(std::vector<StateVector> states, const Partition &partition,
                                 const Tolerances &tol = default_tolerances());

/// Same, with multipartite cascades over `party_order` as the pairwise step.
ExclusionPlan exclusion_protocol(std::vector<StateVector> states, const std::vector<std::size_t> &party_order,
                                 const Tolerances &tol = default_tolerances());

std::vector<VerdictPath> verdict_paths(const PairProtocol &pair, const StateVector &actual);

struct ExclusionOutcome {
    std::size_t true_index = 0;
    std::size_t paths = 0;             // branch combinations with nonzero probability
    double prob_correct = 0.0;
    double prob_wrong = 0.0;
    double max_soundness_violation = 0.0;  // P(true state excluded) in any round
};

struct ExclusionVerification {
    std::vector<ExclusionOutcome> outcomes;
    std::size_t copies_used = 0;
    bool passed = false;
};

/// Enumerates every branch of every round for every possible true state.
ExclusionVerification verify_exclusion(const ExclusionPlan &plan, const Tolerances &tol = default_tolerances());

struct ExclusionRound {
    std::size_t first = 0;
    std::size_t second = 0;
    std::size_t kept = 0;
    std::size_t excluded = 0;
};

struct ExclusionRun {
    std::vector<ExclusionRound> rounds;
    std::size_t survivor = 0;
};

/// One sampled run with fresh copies of `actual`; round r uses
/// derive_seed(seed, r).
ExclusionRun run_exclusion(const ExclusionPlan &plan, const StateVector &actual, std::uint64_t seed);

}  // namespace locc
