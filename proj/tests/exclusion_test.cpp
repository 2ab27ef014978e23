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

#include <cmath>
#include <map>

#include "gtest/gtest.h"

#include "locc/states.hpp"
#include "support/oracles.hpp"

using namespace locc;
using locc::oracle::Gen;

namespace {

std::vector<StateVector> bell_set() {
    std::vector<StateVector> out;
    for (BellState b : kBellStates) out.push_back(bell_state(b));
    return out;
}

// Probability that a bipartite pair protocol returns verdict psi on `s`,
// computed from the Alice rows and Bob probes by explicit loops.
double prob_keep_first(const LoccProtocol &p, const StateVector &s) {
    const auto &a = p.partition.alice();
    const auto &b = p.partition.bob();
    std::size_t na = 1, nb = 1;
    for (std::size_t k : a) na *= s.dims()[k];
    for (std::size_t k : b) nb *= s.dims()[k];
    double keep = 0.0;
    for (std::size_t i = 0; i < p.padded_dim; ++i) {
        std::vector<Complex> bob(nb, 0.0);
        for (std::size_t x = 0; x < na; ++x)
            for (std::size_t y = 0; y < nb; ++y)
                bob[y] += std::conj(p.alice_basis(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(x))) *
                          oracle::amplitude_at(s, a, b, x, y);
        const BobDiscriminator &d = p.discriminators[i];
        const std::vector<Complex> probe(d.probe.data(), d.probe.data() + d.probe.size());
        const double total = std::pow(oracle::norm_of(bob), 2);
        const double click = std::min(std::norm(oracle::dot(probe, bob)), total);
        if (d.on_click == Verdict::Psi) keep += click;
        if (d.on_no_click == Verdict::Psi) keep += total - click;
    }
    return keep;
}

// Survivor distribution of the lowest-two rule, by recursion over verdicts.
void survivor_oracle(const ExclusionPlan &plan, const StateVector &s, std::vector<std::size_t> alive, double prob,
                     std::map<std::size_t, double> &out) {
    if (alive.size() == 1) {
        out[alive.front()] += prob;
        return;
    }
    const PairProtocol &pair = plan.protocol_for(alive[0], alive[1]);
    const double keep = prob_keep_first(std::get<LoccProtocol>(pair.protocol), s);
    auto drop = [&](std::size_t idx) {
        auto next = alive;
        next.erase(std::find(next.begin(), next.end(), idx));
        return next;
    };
    if (keep > 0) survivor_oracle(plan, s, drop(pair.second), prob * keep, out);
    if (1 - keep > 0) survivor_oracle(plan, s, drop(pair.first), prob * (1 - keep), out);
}

void expect_oracle_identifies(const ExclusionPlan &plan) {
    for (std::size_t k = 0; k < plan.states.size(); ++k) {
        std::vector<std::size_t> all(plan.states.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        std::map<std::size_t, double> dist;
        survivor_oracle(plan, plan.states[k], all, 1.0, dist);
        double wrong = 0.0;
        for (const auto &[idx, p] : dist)
            if (idx != k) wrong += p;
        EXPECT_LE(wrong, 1e-9) << "true state " << k;
        EXPECT_NEAR(dist[k], 1.0, 1e-9);
    }
}

ErrorCode code_of(const auto &fn) {
    try {
        fn();
    } catch (const LoccError &e) {
        return e.code();
    }
    return ErrorCode::ParseError;
}

}  // namespace

TEST(exclusion_protocol, two_states_is_plain_discrimination) {
    std::vector<StateVector> s{bell_state(BellState::PhiPlus), bell_state(BellState::PsiPlus)};
    const ExclusionPlan plan = exclusion_protocol(s, Partition::from_alice({0}, 2));
    EXPECT_EQ(plan.copies_used, 1u);
    ASSERT_EQ(plan.pair_protocols.size(), 1u);
    const auto &direct = std::get<LoccProtocol>(plan.pair_protocols[0].protocol);
    EXPECT_EQ(direct.alice_basis, CMatrix::Identity(2, 2));
    const ExclusionVerification v = verify_exclusion(plan);
    EXPECT_TRUE(v.passed);
    expect_oracle_identifies(plan);
}

TEST(exclusion_protocol, four_bell_states_three_copies) {
    const ExclusionPlan plan = exclusion_protocol(bell_set(), Partition::from_alice({0}, 2));
    EXPECT_EQ(plan.copies_used, 3u);
    const ExclusionVerification v = verify_exclusion(plan);
    EXPECT_TRUE(v.passed);
    EXPECT_EQ(v.copies_used, 3u);
    ASSERT_EQ(v.outcomes.size(), 4u);
    for (const ExclusionOutcome &o : v.outcomes) {
        EXPECT_LE(o.prob_wrong, 1e-12);
        EXPECT_NEAR(o.prob_correct, 1.0, 1e-12);
        EXPECT_LE(o.max_soundness_violation, 1e-12);
        EXPECT_GT(o.paths, 0u);
    }
    expect_oracle_identifies(plan);
}

TEST(exclusion_protocol, three_random_states_on_two_qubits) {
    Gen gen(41);
    for (int trial = 0; trial < 10; ++trial) {
        const auto states = oracle::random_orthogonal_set({2, 2}, 3, gen);
        const ExclusionPlan plan = exclusion_protocol(states, Partition::from_alice({0}, 2));
        EXPECT_EQ(plan.copies_used, 2u);
        EXPECT_TRUE(verify_exclusion(plan).passed);
        expect_oracle_identifies(plan);
    }
}

TEST(exclusion_protocol, larger_sets_in_higher_dims) {
    Gen gen(42);
    for (std::size_t n = 2; n <= 6; ++n) {
        const auto states = oracle::random_orthogonal_set({3, 3}, n, gen);
        const ExclusionPlan plan = exclusion_protocol(states, Partition::from_alice({1}, 2));
        EXPECT_EQ(plan.copies_used, n - 1);
        EXPECT_EQ(plan.pair_protocols.size(), n * (n - 1) / 2);
        EXPECT_TRUE(verify_exclusion(plan).passed) << "n = " << n;
        expect_oracle_identifies(plan);
    }
}

TEST(exclusion_protocol, cascade_pairs_over_three_qubits) {
    Gen gen(43);
    const auto states = oracle::random_orthogonal_set({2, 2, 2}, 4, gen);
    const ExclusionPlan plan = exclusion_protocol(states, std::vector<std::size_t>{2, 0, 1});
    EXPECT_EQ(plan.copies_used, 3u);
    for (const PairProtocol &p : plan.pair_protocols) EXPECT_TRUE(std::holds_alternative<CascadeProtocol>(p.protocol));
    const ExclusionVerification v = verify_exclusion(plan);
    EXPECT_TRUE(v.passed);
    for (const ExclusionOutcome &o : v.outcomes) EXPECT_LE(o.prob_wrong, 1e-9);
}

TEST(exclusion_protocol, errors) {
    EXPECT_EQ(code_of([] { exclusion_protocol({bell_state(BellState::PhiPlus)}, Partition::from_alice({0}, 2)); }),
              ErrorCode::TooFewStates);
    Gen gen(44);
    std::vector<StateVector> s{bell_state(BellState::PhiPlus), oracle::random_state({2, 2}, gen)};
    EXPECT_EQ(code_of([&] { exclusion_protocol(s, Partition::from_alice({0}, 2)); }),
              ErrorCode::NotMutuallyOrthogonal);
    std::vector<StateVector> mixed{bell_state(BellState::PhiPlus), ghz_state(3, true)};
    EXPECT_EQ(code_of([&] { exclusion_protocol(mixed, Partition::from_alice({0}, 2)); }), ErrorCode::ShapeMismatch);
}

TEST(run_exclusion, sampled_runs_always_find_truth) {
    const ExclusionPlan plan = exclusion_protocol(bell_set(), Partition::from_alice({0}, 2));
    for (std::size_t k = 0; k < 4; ++k) {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const ExclusionRun run = run_exclusion(plan, plan.states[k], seed);
            ASSERT_EQ(run.survivor, k);
            ASSERT_EQ(run.rounds.size(), 3u);
            for (const ExclusionRound &r : run.rounds) ASSERT_NE(r.excluded, k);
        }
    }
}

TEST(run_exclusion, deterministic_for_seed) {
    Gen gen(45);
    const auto states = oracle::random_orthogonal_set({2, 3}, 5, gen);
    const ExclusionPlan plan = exclusion_protocol(states, Partition::from_alice({0}, 2));
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ExclusionRun a = run_exclusion(plan, states[2], seed);
        const ExclusionRun b = run_exclusion(plan, states[2], seed);
        ASSERT_EQ(a.rounds.size(), b.rounds.size());
        for (std::size_t r = 0; r < a.rounds.size(); ++r) ASSERT_EQ(a.rounds[r].excluded, b.rounds[r].excluded);
        ASSERT_EQ(a.survivor, 2u);
    }
}
