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
#include <string_view>
#include <vector>

#include "locc/protocol.hpp"

namespace locc {

enum class BranchKind {
    Pruned,        // outcome has zero probability under both states
    Forced,        // one conditional state vanished; verdict fixed here
    Discriminate,  // final stage: Bob's binary measurement decides
    Continue,      // remaining parties carry on with a new stage
};

std::string_view branch_kind_name(BranchKind k);

struct CascadeNode;

struct CascadeBranch {
    BranchKind kind = BranchKind::Pruned;
    Verdict forced = Verdict::Psi;
    std::vector<CascadeNode> next;  // one node when kind == Continue
};

/// One measuring party. `protocol` treats the conditional state of `parties`
/// as bipartite: local party 0 (the measurer) against the rest jointly.
struct CascadeNode {
    std::vector<std::size_t> parties;  // global indices, measurer first
    LoccProtocol protocol;
    std::vector<CascadeBranch> branches;  // per Alice outcome
};

struct CascadeProtocol {
    std::vector<std::size_t> party_order;
    std::vector<std::size_t> dims;  // of the original states
    CascadeNode root;

    /// Measurement levels: one per party in the order except the last.
    std::size_t stage_count() const { return party_order.size() - 1; }
    /// Longest root-to-leaf path actually built.
    std::size_t depth() const;
};

/// Sequential one-party-at-a-time protocol. Exactly two parties defer to
/// synthesize_protocol. Throws TooFewParties, InvalidPartition (order not a
/// permutation), NotOrthogonal, ShapeMismatch.
CascadeProtocol cascade_multipartite(const StateVector &psi, const StateVector &phi,
                                     const std::vector<std::size_t> &party_order,
                                     const Tolerances &tol = default_tolerances());

/// Reorders the parties of a state: result party k is input party order[k].
StateVector permute_parties(const StateVector &s, const std::vector<std::size_t> &order);

struct CascadeLeaf {
    std::vector<std::size_t> path;  // Alice outcome at each level
    BranchKind kind = BranchKind::Pruned;
    double prob_psi = 0.0;
    double prob_phi = 0.0;
    double residual = 0.0;
    double error_psi = 0.0;
    double error_phi = 0.0;
};

struct CascadeVerification {
    std::vector<CascadeLeaf> leaves;
    std::size_t stage_count = 0;
    std::size_t depth = 0;
    double max_residual = 0.0;
    double max_unitarity_error = 0.0;
    double error_psi = 0.0;  // total misidentification probability
    double error_phi = 0.0;
    double probability_sum_psi = 0.0;
    double probability_sum_phi = 0.0;
    bool passed = false;
};

/// Exhaustive walk of every branch, recomputing each conditional state from
/// the original psi and phi through the stored bases.
CascadeVerification verify_cascade(const CascadeProtocol &c, const StateVector &psi,
                                   const StateVector &phi, const Tolerances &tol = default_tolerances());

/// Per-path verdict probabilities for one true state; used by the exclusion
/// protocol.
struct VerdictPath {
    std::vector<std::size_t> outcomes;  // Alice outcome per level, then Bob's
    double probability = 0.0;
    Verdict verdict = Verdict::Psi;
};

std::vector<VerdictPath> verdict_paths(const CascadeProtocol &c, const StateVector &actual);
std::vector<VerdictPath> verdict_paths(const LoccProtocol &p, const StateVector &actual);

}  // namespace locc
