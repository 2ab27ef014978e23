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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "locc/core.hpp"
#include "locc/rng.hpp"
#include "locc/statespace.hpp"
#include "locc/zerodiag.hpp"

namespace locc {

enum class Verdict { Psi = 0, Phi = 1 };

std::string_view verdict_name(Verdict v);

/// Bob's two-outcome measurement for one Alice outcome: a projector onto
/// `probe` ("click") and its complement.
struct BobDiscriminator {
    CVector eta;  // conditional (unnormalized) Bob vector under psi
    CVector nu;   // ... under phi
    CVector probe;
    Verdict on_click = Verdict::Psi;
    Verdict on_no_click = Verdict::Phi;
    /// One of eta, nu is null: the Alice outcome alone fixes the verdict.
    bool degenerate = false;
    /// Both are null; the outcome never occurs.
    bool unreachable = false;

    Verdict verdict(int bob_outcome) const { return bob_outcome == 0 ? on_click : on_no_click; }
};

BobDiscriminator make_discriminator(CVector eta, CVector nu, const Tolerances &tol = default_tolerances());

struct LoccProtocol {
    Partition partition;
    std::vector<std::size_t> dims;
    /// Row i holds the components of Alice's i-th measurement vector in the
    /// padded computational basis.
    CMatrix alice_basis;
    std::size_t padded_dim = 0;
    std::size_t original_dim = 0;
    std::vector<BobDiscriminator> discriminators;
    ZerodiagResult provenance;
};

/// Throws NotOrthogonal, ShapeMismatch, InvalidPartition.
LoccProtocol synthesize_protocol(const StateVector &psi, const StateVector &phi,
                                 const Partition &partition,
                                 const Tolerances &tol = default_tolerances());

/// Bob's conditional vectors for each Alice outcome: row i is
/// Σ_j conj(B_ij) · C_j with C the padded coefficient matrix of `state`.
CMatrix conditional_bob_vectors(const LoccProtocol &p, const StateVector &state);

/// Exact joint probability of (Alice outcome i, Bob outcome b) for `state`;
/// row i, column b (0 = click, 1 = no click).
Eigen::MatrixX2d branch_probabilities(const LoccProtocol &p, const StateVector &state);

struct BranchCheck {
    std::size_t outcome = 0;
    double prob_psi = 0.0;
    double prob_phi = 0.0;
    double overlap = 0.0;   // |<nu'|eta'>|
    double residual = 0.0;  // overlap / (‖eta'‖·‖nu'‖), 0 on degenerate branches
    bool reachable = false;
    bool degenerate = false;
    /// Probability of this branch ending in the wrong verdict, per true state.
    double error_psi = 0.0;
    double error_phi = 0.0;
};

struct VerificationReport {
    std::vector<BranchCheck> branches;
    double max_residual = 0.0;
    double min_margin = 1.0;
    double max_error_probability = 0.0;
    double probability_sum_psi = 0.0;
    double probability_sum_phi = 0.0;
    double padding_weight = 0.0;
    double unitarity_error = 0.0;
    std::vector<std::size_t> failing_outcomes;
    bool passed = false;
};

/// Recomputes every branch from the protocol's Alice basis and the two
/// states; failures are reported, never thrown.
VerificationReport verify_protocol(const LoccProtocol &p, const StateVector &psi,
                                   const StateVector &phi, const Tolerances &tol = default_tolerances());

struct SampleResult {
    Verdict verdict = Verdict::Psi;
    std::size_t alice_outcome = 0;
    int bob_outcome = 0;
};

SampleResult sample_run(const LoccProtocol &p, const StateVector &actual, Rng &rng);
SampleResult sample_run(const LoccProtocol &p, const StateVector &actual, std::uint64_t seed);

struct BranchTally {
    Verdict actual = Verdict::Psi;
    std::size_t alice_outcome = 0;
    int bob_outcome = 0;
    std::uint64_t count = 0;
    double exact_probability = 0.0;
};

struct SimulationReport {
    std::uint64_t trials = 0;  // per true state
    std::uint64_t seed = 0;
    std::string_view rng_algorithm = Rng::kAlgorithm;
    /// confusion[actual][verdict]
    std::array<std::array<std::uint64_t, 2>, 2> confusion{};
    std::vector<BranchTally> branches;

    std::uint64_t wrong_verdicts() const { return confusion[0][1] + confusion[1][0]; }
};

/// `trials` runs with psi as the true state and `trials` with phi. Run t of
/// state s uses the seed derive_seed(seed, 2t + s).
SimulationReport simulate(const LoccProtocol &p, const StateVector &psi, const StateVector &phi,
                          std::uint64_t trials, std::uint64_t seed);

}  // namespace locc
