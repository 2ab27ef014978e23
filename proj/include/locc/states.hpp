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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "locc/statespace.hpp"

namespace locc {

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellState, 4> kBellStates{BellState::PhiPlus, BellState::PhiMinus,
                                                     BellState::PsiPlus, BellState::PsiMinus};

std::string_view bell_name(BellState b);

/// (|00> ± |11>)/√2 and (|01> ± |10>)/√2.
StateVector bell_state(BellState b);

/// (|0…0> ± |1…1>)/√2 over `qubits` qubits.
StateVector ghz_state(std::size_t qubits, bool plus = true);

/// Keyword lookup: bell_phi_plus, bell_phi_minus, bell_psi_plus,
/// bell_psi_minus, ghz_plus, ghz_minus (three qubits).
std::optional<StateVector> builtin_state(std::string_view name);

std::vector<std::string> builtin_state_names();

/// Two copies of a Bell state; parties ordered (A1, B1, A2, B2).
StateVector bell_two_copies(BellState b);

struct BellBranch {
    std::array<int, 4> outcomes{};  // A1, B1 in Z; A2, B2 in X (0 = |+>)
    double probability = 0.0;
    BellState verdict = BellState::PhiPlus;
};

struct BellDemoResult {
    BellState truth = BellState::PhiPlus;
    std::vector<BellBranch> branches;  // all 16 outcome strings
    double prob_correct = 0.0;
    double prob_wrong = 0.0;
};

struct BellDemoReport {
    std::vector<BellDemoResult> results;
    std::size_t copies_used = 2;
    bool passed = false;
};

/// The fixed two-copy protocol: both parties measure copy 1 in the
/// computational basis (parity separates Φ from Ψ) and copy 2 in the ±
/// basis (parity separates + from −). Every branch is enumerated exactly.
BellDemoReport bell_two_copy_demo(double tol = 1e-12);

/// Verdict implied by the four local outcomes of the two-copy protocol.
BellState bell_verdict(const std::array<int, 4> &outcomes);

}  // namespace locc
