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

#include "locc/states.hpp"

#include <cmath>
#include <numbers>

namespace locc {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::array<Complex, 4> bell_amps(BellState b) {
    switch (b) {
        case BellState::PhiPlus: return {kInvSqrt2, 0.0, 0.0, kInvSqrt2};
        case BellState::PhiMinus: return {kInvSqrt2, 0.0, 0.0, -kInvSqrt2};
        case BellState::PsiPlus: return {0.0, kInvSqrt2, kInvSqrt2, 0.0};
        case BellState::PsiMinus: return {0.0, kInvSqrt2, -kInvSqrt2, 0.0};
    }
    return {};
}

// Single-qubit measurement vectors: Z basis for copy 1, X basis for copy 2.
std::array<Complex, 2> basis_vector(bool x_basis, int outcome) {
    if (!x_basis) return outcome == 0 ? std::array<Complex, 2>{1.0, 0.0} : std::array<Complex, 2>{0.0, 1.0};
    return outcome == 0 ? std::array<Complex, 2>{kInvSqrt2, kInvSqrt2}
                        : std::array<Complex, 2>{kInvSqrt2, -kInvSqrt2};
}

}  // namespace

std::string_view bell_name(BellState b) {
    switch (b) {
        case BellState::PhiPlus: return "phi+";
        case BellState::PhiMinus: return "phi-";
        case BellState::PsiPlus: return "psi+";
        case BellState::PsiMinus: return "psi-";
    }
    return "?";
}

StateVector bell_state(BellState b) {
    const auto a = bell_amps(b);
    return validate_state(RawState{{2, 2}, {a.begin(), a.end()}});
}

StateVector ghz_state(std::size_t qubits, bool plus) {
    std::vector<Complex> amps(std::size_t{1} << qubits, 0.0);
    amps.front() = kInvSqrt2;
    amps.back() = plus ? kInvSqrt2 : -kInvSqrt2;
    return validate_state(RawState{std::vector<std::size_t>(qubits, 2), std::move(amps)});
}

std::optional<StateVector> builtin_state(std::string_view name) {
    if (name == "bell_phi_plus") return bell_state(BellState::PhiPlus);
    if (name == "bell_phi_minus") return bell_state(BellState::PhiMinus);
    if (name == "bell_psi_plus") return bell_state(BellState::PsiPlus);
    if (name == "bell_psi_minus") return bell_state(BellState::PsiMinus);
    if (name == "ghz_plus") return ghz_state(3, true);
    if (name == "ghz_minus") return ghz_state(3, false);
    return std::nullopt;
}

std::vector<std::string> builtin_state_names() {
    return {"bell_phi_plus", "bell_phi_minus", "bell_psi_plus", "bell_psi_minus", "ghz_plus", "ghz_minus"};
}

StateVector bell_two_copies(BellState b) {
    const auto a = bell_amps(b);
    std::vector<Complex> amps(16);
    for (std::size_t first = 0; first < 4; ++first) {
        for (std::size_t second = 0; second < 4; ++second) amps[first * 4 + second] = a[first] * a[second];
    }
    return validate_state(RawState{{2, 2, 2, 2}, std::move(amps)});
}

BellState bell_verdict(const std::array<int, 4> &outcomes) {
    const bool psi_family = (outcomes[0] ^ outcomes[1]) != 0;
    const bool minus = (outcomes[2] ^ outcomes[3]) != 0;
    if (psi_family) return minus ? BellState::PsiMinus : BellState::PsiPlus;
    return minus ? BellState::PhiMinus : BellState::PhiPlus;
}

BellDemoReport bell_two_copy_demo(double tol) {
    BellDemoReport report;
    bool ok = true;
    for (BellState truth : kBellStates) {
        const StateVector s = bell_two_copies(truth);
        BellDemoResult result;
        result.truth = truth;
        for (int code = 0; code < 16; ++code) {
            const std::array<int, 4> o{(code >> 3) & 1, (code >> 2) & 1, (code >> 1) & 1, code & 1};
            const auto a1 = basis_vector(false, o[0]);
            const auto b1 = basis_vector(false, o[1]);
            const auto a2 = basis_vector(true, o[2]);
            const auto b2 = basis_vector(true, o[3]);
            Complex amp{0.0, 0.0};
            for (std::size_t idx = 0; idx < 16; ++idx) {
                amp += std::conj(a1[(idx >> 3) & 1]) * std::conj(b1[(idx >> 2) & 1]) *
                       std::conj(a2[(idx >> 1) & 1]) * std::conj(b2[idx & 1]) * s[idx];
            }
            BellBranch branch{o, std::norm(amp), bell_verdict(o)};
            (branch.verdict == truth ? result.prob_correct : result.prob_wrong) += branch.probability;
            result.branches.push_back(branch);
        }
        ok = ok && result.prob_wrong <= tol && std::abs(result.prob_correct - 1.0) <= tol;
        report.results.push_back(std::move(result));
    }
    report.passed = ok && report.copies_used == 2;
    return report;
}

}  // namespace locc
