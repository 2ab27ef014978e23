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
#include <random>
#include <span>
#include <string_view>

namespace locc {

/// SplitMix64 finalizer over (master, index); used to give every trial an
/// independent, reproducible seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Seedable generator with a fixed, documented algorithm so logs reproduce
/// across platforms: mt19937_64 with a 53-bit mantissa fill for doubles.
class Rng {
  public:
    static constexpr std::string_view kAlgorithm = "mt19937_64/splitmix64";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Index drawn with probability weights[i] / Σ weights. Weights need not
    /// be normalized; the last positive weight absorbs rounding.
    std::size_t categorical(std::span<const double> weights);

  private:
    std::mt19937_64 engine_;
};

}  // namespace locc
