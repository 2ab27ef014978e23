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

#include "locc/cascade.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "locc/states.hpp"
#include "support/oracles.hpp"

using namespace locc;
using locc::oracle::Gen;

namespace {

StateVector basis_state(std::vector<std::size_t> dims, std::size_t index) {
    std::vector<Complex> amps(oracle::product(dims), 0.0);
    amps[index] = 1.0;
    return validate_state(RawState{std::move(dims), std::move(amps)});
}

// Remaining-party amplitudes carried down the tree, indexed by digits of the
// parties still present (in measurement order).
struct Residual {
    std::vector<std::size_t> parties;  // global indices
    std::vector<Complex> amps;
};

Residual initial(const StateVector &s, const std::vector<std::size_t> &order) {
    Residual r{order, std::vector<Complex>(s.size())};
    for (std::size_t flat = 0; flat < s.size(); ++flat) {
        const auto digits = oracle::group_digits(flat, order, s.dims());
        std::vector<std::size_t> global(s.dims().size());
        for (std::size_t k = 0; k < order.size(); ++k) global[order[k]] = digits[k];
        r.amps[flat] = s[oracle::flat_index(global, s.dims())];
    }
    return r;
}

// Projects the leading party onto row `i` of `basis`.
Residual contract(const Residual &r, const std::vector<std::size_t> &dims, const CMatrix &basis, std::size_t i) {
    const std::size_t d0 = dims[r.parties.front()];
    const std::size_t rest = r.amps.size() / d0;
    Residual out{{r.parties.begin() + 1, r.parties.end()}, std::vector<Complex>(rest, 0.0)};
    for (std::size_t a = 0; a < d0; ++a)
        for (std::size_t b = 0; b < rest; ++b)
            out.amps[b] += std::conj(basis(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a))) *
                           r.amps[a * rest + b];
    return out;
}

struct OracleTotals {
    double prob_psi = 0.0;
    double prob_phi = 0.0;
    double max_residual = 0.0;
    double error = 0.0;
    std::size_t leaves = 0;
};

void oracle_walk(const CascadeNode &node, const Residual &psi, const Residual &phi, const std::vector<std::size_t> &dims,
                 OracleTotals &t) {
    ASSERT_EQ(node.parties, psi.parties);
    for (std::size_t i = 0; i < node.branches.size(); ++i) {
        const Residual e = contract(psi, dims, node.protocol.alice_basis, i);
        const Residual v = contract(phi, dims, node.protocol.alice_basis, i);
        const CascadeBranch &b = node.branches[i];
        if (b.kind == BranchKind::Continue) {
            ASSERT_EQ(b.next.size(), 1u);
            oracle_walk(b.next.front(), e, v, dims, t);
            continue;
        }
        ++t.leaves;
        const double pe = oracle::norm_of(e.amps), pv = oracle::norm_of(v.amps);
        t.prob_psi += pe * pe;
        t.prob_phi += pv * pv;
        if (b.kind == BranchKind::Forced) {
            t.error += b.forced == Verdict::Psi ? pv * pv : pe * pe;
        } else if (b.kind == BranchKind::Pruned) {
            t.error += pe * pe + pv * pv;
        } else {
            ASSERT_EQ(e.parties.size(), 1u);
            if (pe > 1e-10 && pv > 1e-10)
                t.max_residual = std::max(t.max_residual, std::abs(oracle::dot(v.amps, e.amps)) / (pe * pv));
        }
    }
}

OracleTotals oracle_check(const CascadeProtocol &c, const StateVector &psi, const StateVector &phi) {
    OracleTotals t;
    oracle_walk(c.root, initial(psi, c.party_order), initial(phi, c.party_order), psi.dims(), t);
    return t;
}

std::vector<std::size_t> shuffled(std::size_t n, Gen &gen) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), gen.engine());
    return order;
}

}  // namespace

TEST(cascade_multipartite, ghz_pair_two_stages) {
    const StateVector psi = ghz_state(3, true);
    const StateVector phi = ghz_state(3, false);
    const CascadeProtocol c = cascade_multipartite(psi, phi, {0, 1, 2});
    EXPECT_EQ(c.stage_count(), 2u);
    EXPECT_EQ(c.depth(), 2u);
    const CascadeVerification v = verify_cascade(c, psi, phi);
    EXPECT_TRUE(v.passed);
    EXPECT_LE(v.max_residual, 1e-12);
    const OracleTotals t = oracle_check(c, psi, phi);
    EXPECT_LE(t.max_residual, 1e-12);
    EXPECT_LE(t.error, 1e-12);
    EXPECT_NEAR(t.prob_psi, 1.0, 1e-12);
    for (const CascadeBranch &b : c.root.branches) EXPECT_EQ(b.kind, BranchKind::Continue);
}

TEST(cascade_multipartite, first_party_decides) {
    const StateVector psi = basis_state({2, 2, 2}, 0);  // |000>
    const StateVector phi = basis_state({2, 2, 2}, 4);  // |100>
    const CascadeProtocol c = cascade_multipartite(psi, phi, {0, 1, 2});
    EXPECT_EQ(c.stage_count(), 2u);
    EXPECT_EQ(c.depth(), 1u);
    ASSERT_EQ(c.root.branches.size(), 2u);
    EXPECT_EQ(c.root.branches[0].kind, BranchKind::Forced);
    EXPECT_EQ(c.root.branches[0].forced, Verdict::Psi);
    EXPECT_EQ(c.root.branches[1].kind, BranchKind::Forced);
    EXPECT_EQ(c.root.branches[1].forced, Verdict::Phi);
    EXPECT_TRUE(verify_cascade(c, psi, phi).passed);
}

TEST(cascade_multipartite, two_parties_defer_to_bipartite) {
    const StateVector psi = bell_state(BellState::PhiPlus);
    const StateVector phi = bell_state(BellState::PsiMinus);
    const CascadeProtocol c = cascade_multipartite(psi, phi, {0, 1});
    const LoccProtocol direct = synthesize_protocol(psi, phi, Partition::from_alice({0}, 2));
    EXPECT_EQ(c.stage_count(), 1u);
    EXPECT_EQ(c.root.protocol.alice_basis, direct.alice_basis);
    for (const CascadeBranch &b : c.root.branches) EXPECT_EQ(b.kind, BranchKind::Discriminate);
    EXPECT_TRUE(verify_cascade(c, psi, phi).passed);
}

TEST(cascade_multipartite, errors) {
    const auto code = [](const auto &fn) {
        try {
            fn();
        } catch (const LoccError &e) {
            return e.code();
        }
        return ErrorCode::ParseError;
    };
    const StateVector one = validate_state(RawState{{2}, {1.0, 0.0}});
    const StateVector other = validate_state(RawState{{2}, {0.0, 1.0}});
    EXPECT_EQ(code([&] { cascade_multipartite(one, other, {0}); }), ErrorCode::TooFewParties);
    const StateVector g = ghz_state(3, true);
    EXPECT_EQ(code([&] { cascade_multipartite(g, g, {0, 1, 2}); }), ErrorCode::NotOrthogonal);
    const StateVector h = ghz_state(3, false);
    EXPECT_EQ(code([&] { cascade_multipartite(g, h, {0, 1}); }), ErrorCode::InvalidPartition);
    EXPECT_EQ(code([&] { cascade_multipartite(g, h, {0, 1, 1}); }), ErrorCode::InvalidPartition);
    EXPECT_EQ(code([&] { cascade_multipartite(g, bell_state(BellState::PhiPlus), {0, 1, 2}); }),
              ErrorCode::ShapeMismatch);
}

TEST(permute_parties, matches_digit_oracle) {
    Gen gen(31);
    const StateVector s = oracle::random_state({2, 3, 4}, gen);
    const std::vector<std::size_t> order{2, 0, 1};
    const StateVector p = permute_parties(s, order);
    EXPECT_EQ(p.dims(), (std::vector<std::size_t>{4, 2, 3}));
    const Residual r = initial(s, order);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(p[i], r.amps[i]);
}

TEST(cascade_multipartite, random_qubit_property) {
    Gen gen(32);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t parties = trial < 25 ? 3 : 4;
        const std::vector<std::size_t> dims(parties, 2);
        const auto [psi, phi] = oracle::random_orthogonal_pair(dims, gen);
        const auto order = shuffled(parties, gen);
        const CascadeProtocol c = cascade_multipartite(psi, phi, order);
        ASSERT_EQ(c.stage_count(), parties - 1);
        ASSERT_EQ(c.depth(), parties - 1);
        const CascadeVerification v = verify_cascade(c, psi, phi);
        ASSERT_TRUE(v.passed) << "trial " << trial;
        ASSERT_LE(v.max_residual, 1e-9);
        const OracleTotals t = oracle_check(c, psi, phi);
        ASSERT_LE(t.max_residual, 1e-9);
        ASSERT_LE(t.error, 1e-9);
        ASSERT_NEAR(t.prob_psi, 1.0, 1e-9);
        ASSERT_NEAR(t.prob_phi, 1.0, 1e-9);
        ASSERT_EQ(t.leaves, v.leaves.size());
    }
}

TEST(cascade_multipartite, mixed_dimensions) {
    Gen gen(33);
    for (int trial = 0; trial < 10; ++trial) {
        const std::vector<std::size_t> dims{gen.integer(2, 3), gen.integer(2, 3), gen.integer(2, 3)};
        const auto [psi, phi] = oracle::random_orthogonal_pair(dims, gen);
        const CascadeProtocol c = cascade_multipartite(psi, phi, shuffled(3, gen));
        ASSERT_TRUE(verify_cascade(c, psi, phi).passed);
        ASSERT_LE(oracle_check(c, psi, phi).max_residual, 1e-9);
    }
}

TEST(verdict_paths, cascade_probabilities_sum_and_are_correct) {
    Gen gen(34);
    const auto [psi, phi] = oracle::random_orthogonal_pair({2, 2, 2}, gen);
    const CascadeProtocol c = cascade_multipartite(psi, phi, {1, 2, 0});
    double total = 0.0, wrong = 0.0;
    for (const VerdictPath &p : verdict_paths(c, psi)) {
        total += p.probability;
        if (p.verdict != Verdict::Psi) wrong += p.probability;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_LE(wrong, 1e-9);
    wrong = 0.0;
    for (const VerdictPath &p : verdict_paths(c, phi))
        if (p.verdict != Verdict::Phi) wrong += p.probability;
    EXPECT_LE(wrong, 1e-9);
}

TEST(verify_cascade, detects_tampered_basis) {
    const StateVector psi = ghz_state(3, true);
    const StateVector phi = ghz_state(3, false);
    CascadeProtocol c = cascade_multipartite(psi, phi, {0, 1, 2});
    c.root.protocol.alice_basis = CMatrix::Identity(2, 2);
    EXPECT_FALSE(verify_cascade(c, psi, phi).passed);
}
