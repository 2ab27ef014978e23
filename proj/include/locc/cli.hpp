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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "locc/core.hpp"

namespace locc::cli {

enum class Command { Distinguish, Verify, Simulate, Cascade, Exclude, BellDemo };
enum class Format { Text, Json };

struct RunConfig {
    Command command = Command::Distinguish;
    std::string psi;
    std::string phi;
    std::vector<std::string> states;  // exclude
    std::string protocol_path;        // verify: re-check a saved protocol
    std::vector<std::size_t> alice{0};
    std::vector<std::size_t> order;   // cascade / exclude; empty = 0..n-1
    std::uint64_t trials = 0;
    std::optional<std::uint64_t> seed;
    Tolerances tolerances;
    Format format = Format::Text;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitVerificationFailed = 2;

/// Executes one command. Input and precondition errors are reported as a
/// single "error: ..." line on `err` with exit 1; verification failures exit 2.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

/// Parses argv into a RunConfig and runs it.
int main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace locc::cli
