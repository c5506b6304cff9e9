// Copyright 2026 The photodisc Authors
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

// JSON forms of the library types.
//
//   Interferometer  {"d": 3, "entries": [[re, im], ...] (row-major),
//                    "reck": {"thetas": [...], "omegas": [...]},      optional
//                    "network": [{"offset": k, "block": {...}}]}      optional
//   ReducedState    {"(2,1)": {"weight": w, "block": {"dim": k, "entries": [[re, im], ...]}}, ...}
//   FockArray       [[1, 0], [0, 1]]  (System rows, Label columns)

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "photodisc/combinatorics.hpp"
#include "photodisc/discriminate.hpp"
#include "photodisc/optics.hpp"
#include "photodisc/states.hpp"

namespace photodisc {

using Json = nlohmann::ordered_json;

/// Parses "(2,1)", "2,1" or "21".
Partition parse_partition(const std::string& text);

Json matrix_to_json(const Eigen::MatrixXcd& m);
/// Expects {"dim", "entries"} or {"d", "entries"}.
Eigen::MatrixXcd matrix_from_json(const Json& j);

Json to_json(const Interferometer& u);
/// Accepts entries, or reck parameters alone. When both are present they
/// must agree to 1e-9.
Interferometer interferometer_from_json(const Json& j);

Json to_json(const ReducedState& rho);
ReducedState reduced_state_from_json(const Json& j, int particles, int modes);

FockArray fock_array_from_json(const Json& j);

/// Result document; `problem` describes the run and is copied verbatim.
Json result_to_json(const DiscriminationResult& result, const Json& problem,
                    const std::optional<Rational>& bound);

/// Reads and parses a JSON file; InvalidArgument on I/O or syntax errors.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

std::string to_string(const Rational& r);
/// "19/24" or "3".
Rational parse_rational(const std::string& text);

}  // namespace photodisc
