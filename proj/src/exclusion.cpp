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

#include "locc/exclusion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace locc {

namespace {

void check_states(const std::vector<StateVector> &states, const Tolerances &tol) {
    if (states.size() < 2) {
        throw LoccError(ErrorCode::TooFewStates, "exclusion needs at least two candidate states");
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].dims() != states.front().dims()) {
            throw LoccError(ErrorCode::ShapeMismatch, "candidate states have different dims");
        }
        for (std::size_t j = i + 1; j < states.size(); ++j) {
            const double overlap = std::abs(inner_product(states[j], states[i]));
            if (overlap > tol.orthogonality) {
                std::ostringstream msg;
                msg << "states " << i << " and " << j << " are not orthogonal (|<" << j << "|" << i
                    << ">| = " << overlap << ")";
                throw LoccError(ErrorCode::NotMutuallyOrthogonal, msg.str());
            }
        }
    }
}

template <class MakePair>
ExclusionPlan build_plan(std::vector<StateVector> states, const Tolerances &tol, MakePair make_pair) {
    check_states(states, tol);
    ExclusionPlan plan;
    // Under the lowest-two rule the survivors after r rounds are {w} ∪ {r+1, ...}
    // with w ≤ r, so every pair (w, r+1) is reachable.
    for (std::size_t j = 1; j < states.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            plan.pair_protocols.push_back(PairProtocol{i, j, make_pair(states[i], states[j])});
        }
    }
    plan.copies_used = states.size() - 1;
    plan.states = std::move(states);
    return plan;
}

std::size_t loser(const PairProtocol &pair, Verdict v) { return v == Verdict::Psi ? pair.second : pair.first; }

std::vector<std::size_t> without(std::vector<std::size_t> survivors, std::size_t excluded) {
    survivors.erase(std::find(survivors.begin(), survivors.end(), excluded));
    return survivors;
}

}  // namespace

const PairProtocol &ExclusionPlan::protocol_for(std::size_t first, std::size_t second) const {
    for (const PairProtocol &p : pair_protocols) {
        if (p.first == first && p.second == second) return p;
    }
    throw LoccError(ErrorCode::InvalidPartition, "no protocol for candidate pair");
}

ExclusionPlan exclusion_protocol(std::vector<StateVector> states, const Partition &partition,
                                 const Tolerances &tol) {
    return build_plan(std::move(states), tol, [&](const StateVector &a, const StateVector &b) {
        return std::variant<LoccProtocol, CascadeProtocol>(synthesize_protocol(a, b, partition, tol));
    });
}

ExclusionPlan exclusion_protocol(std::vector<StateVector> states, const std::vector<std::size_t> &party_order,
                                 const Tolerances &tol) {
    return build_plan(std::move(states), tol, [&](const StateVector &a, const StateVector &b) {
        return std::variant<LoccProtocol, CascadeProtocol>(cascade_multipartite(a, b, party_order, tol));
    });
}

std::vector<VerdictPath> verdict_paths(const PairProtocol &pair, const StateVector &actual) {
    return std::visit([&](const auto &p) { return verdict_paths(p, actual); }, pair.protocol);
}

ExclusionVerification verify_exclusion(const ExclusionPlan &plan, const Tolerances &tol) {
    const std::size_t n = plan.states.size();
    // paths[(pair index, true state)]
    std::map<std::pair<std::size_t, std::size_t>, std::vector<VerdictPath>> paths;
    for (std::size_t pi = 0; pi < plan.pair_protocols.size(); ++pi) {
        for (std::size_t k = 0; k < n; ++k) paths[{pi, k}] = verdict_paths(plan.pair_protocols[pi], plan.states[k]);
    }
    const auto pair_index = [&](std::size_t a, std::size_t b) {
        for (std::size_t pi = 0; pi < plan.pair_protocols.size(); ++pi) {
            if (plan.pair_protocols[pi].first == a && plan.pair_protocols[pi].second == b) return pi;
        }
        throw LoccError(ErrorCode::InvalidPartition, "no protocol for candidate pair");
    };

    ExclusionVerification out;
    out.copies_used = plan.copies_used;
    bool ok = true;
    for (std::size_t k = 0; k < n; ++k) {
        ExclusionOutcome o;
        o.true_index = k;
        const auto recurse = [&](auto &self, const std::vector<std::size_t> &survivors, double prob,
                                 std::size_t rounds) -> void {
            if (survivors.size() == 1) {
                ++o.paths;
                (survivors.front() == k ? o.prob_correct : o.prob_wrong) += prob;
                if (rounds != plan.copies_used) ok = false;
                return;
            }
            const std::size_t pi = pair_index(survivors[0], survivors[1]);
            const PairProtocol &pair = plan.pair_protocols[pi];
            double excluded_true = 0.0;
            for (const VerdictPath &path : paths.at({pi, k})) {
                if (path.probability <= 0.0) continue;
                const std::size_t out_idx = loser(pair, path.verdict);
                if (out_idx == k) excluded_true += path.probability;
                self(self, without(survivors, out_idx), prob * path.probability, rounds + 1);
            }
            o.max_soundness_violation = std::max(o.max_soundness_violation, excluded_true);
        };
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        recurse(recurse, all, 1.0, 0);
        ok = ok && o.prob_wrong <= tol.branch_overlap && o.max_soundness_violation <= tol.branch_overlap &&
             std::abs(o.prob_correct - 1.0) <= tol.probability_sum;
        out.outcomes.push_back(o);
    }
    out.passed = ok && plan.copies_used + 1 == n;
    return out;
}

ExclusionRun run_exclusion(const ExclusionPlan &plan, const StateVector &actual, std::uint64_t seed) {
    std::vector<std::size_t> survivors(plan.states.size());
    for (std::size_t i = 0; i < survivors.size(); ++i) survivors[i] = i;
    ExclusionRun run;
    for (std::uint64_t r = 0; survivors.size() > 1; ++r) {
        const PairProtocol &pair = plan.protocol_for(survivors[0], survivors[1]);
        const std::vector<VerdictPath> paths = verdict_paths(pair, actual);
        std::vector<double> weights;
        weights.reserve(paths.size());
        for (const VerdictPath &p : paths) weights.push_back(p.probability);
        Rng rng(derive_seed(seed, r));
        const Verdict v = paths[rng.categorical(weights)].verdict;
        const std::size_t excluded = loser(pair, v);
        run.rounds.push_back(ExclusionRound{pair.first, pair.second, v == Verdict::Psi ? pair.first : pair.second,
                                            excluded});
        survivors = without(std::move(survivors), excluded);
    }
    run.survivor = survivors.front();
    return run;
}

}  // namespace locc
