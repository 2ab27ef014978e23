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

#include "locc/core.hpp"

namespace locc {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::InvalidPartition: return "InvalidPartition";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::NotTraceless: return "NotTraceless";
        case ErrorCode::NotOrthogonal: return "NotOrthogonal";
        case ErrorCode::NotMutuallyOrthogonal: return "NotMutuallyOrthogonal";
        case ErrorCode::TooFewParties: return "TooFewParties";
        case ErrorCode::TooFewStates: return "TooFewStates";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace locc
