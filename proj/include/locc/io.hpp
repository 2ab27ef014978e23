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

#include <string>
#include <string_view>

#include <json.hpp>

#include "locc/cascade.hpp"
#include "locc/exclusion.hpp"
#include "locc/protocol.hpp"
#include "locc/states.hpp"

namespace locc {

using Json = nlohmann::json;

/// State interchange format: {"dims": [d1, ...], "amps": [[re, im], ...]},
/// amplitudes row-major. Throws ParseError on malformed input or non-finite
/// components, then the usual validate_state errors.
StateVector parse_state(std::string_view text, const Tolerances &tol = default_tolerances());
StateVector read_state_file(const std::string &path, const Tolerances &tol = default_tolerances());

/// A built-in keyword (see builtin_state) or a path to a state file.
StateVector load_state(const std::string &source, const Tolerances &tol = default_tolerances());

Json state_to_json(const StateVector &s);

Json matrix_to_json(const CMatrix &m);
CMatrix matrix_from_json(const Json &j);
Json vector_to_json(const CVector &v);
CVector vector_from_json(const Json &j);

Json protocol_to_json(const LoccProtocol &p);
/// Inverse of protocol_to_json. Throws ParseError.
LoccProtocol protocol_from_json(const Json &j);

Json to_json(const ZerodiagResult &z);
Json to_json(const VerificationReport &r);
Json to_json(const SimulationReport &r);
Json to_json(const CascadeProtocol &c);
Json to_json(const CascadeVerification &r);
Json to_json(const ExclusionVerification &r);
Json to_json(const ExclusionRun &r);
Json to_json(const BellDemoReport &r);

}  // namespace locc
