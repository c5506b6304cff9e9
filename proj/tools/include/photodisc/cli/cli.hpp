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

// Command-line layer: argument handling, named targets and networks, and the
// table reproduction report. The photodisc executable is a thin wrapper over
// run(); tests drive the same functions directly.

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "photodisc/discriminate.hpp"
#include "photodisc/io.hpp"
#include "photodisc/schur_weyl.hpp"

namespace photodisc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// How probabilities of the named states are evaluated.
enum class Pathway {
  kAuto,       // irrep pathway while d^N <= 5^5, permanents above
  kIrrep,
  kPermanent,
};
Pathway parse_pathway(const std::string& text);

struct Context {
  std::filesystem::path cache_dir;
  Pathway pathway = Pathway::kAuto;
  double epsilon = 1e-9;
};

/// Loads (N, d) from the cache directory, building it when missing. Memoised
/// per process.
std::shared_ptr<const SchurWeylTransform> transform_for(int particles, int modes,
                                                        const std::filesystem::path& cache_dir);

/// Success of a named state against coincident rho_i. bad_mode is 0-based.
DiscriminationResult named_success(const Interferometer& u, NamedState target, int bad_mode, const Context& ctx);

/// "qft", "table1" or "reck:<file>" (an interferometer JSON file).
Interferometer parse_network(const std::string& spec, int modes);

/// Closest p/q with q <= max_denominator when it lies within tolerance.
std::optional<Rational> recognise_rational(double x, std::int64_t max_denominator = 1000000,
                                           double tolerance = 1e-10);

/// Reference tables compiled in from data/reference_tables.json.
const Json& embedded_reference();

enum class Status { kPass, kWarn, kFail };

struct Check {
  int table = 0;
  int particles = 0;
  std::string cell;
  std::string computed;
  std::string expected;
  Status status = Status::kPass;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;
  bool failed() const;
  int count(Status s) const;
  void print(std::ostream& out) const;
};

Report reproduce_table1(const Json& reference, int n_min, int n_max, const Context& ctx);
Report reproduce_table2(const Json& reference, int n_min, int n_max, const Context& ctx);

}  // namespace photodisc::cli
