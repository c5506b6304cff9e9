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


#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "photodisc/cache.hpp"
#include "photodisc/cli/cli.hpp"
#include "photodisc/error.hpp"
#include "photodisc/networks.hpp"
#include "photodisc/states.hpp"

namespace photodisc::cli {

Pathway parse_pathway(const std::string& text) {
  if (text == "auto") return Pathway::kAuto;
  if (text == "irrep") return Pathway::kIrrep;
  if (text == "permanent") return Pathway::kPermanent;
  throw InvalidArgument("unknown pathway \"" + text + "\" (expected auto, irrep or permanent)");
}

std::shared_ptr<const SchurWeylTransform> transform_for(int particles, int modes,
                                                        const std::filesystem::path& cache_dir) {
  static std::mutex mutex;
  static std::map<std::pair<std::string, std::pair<int, int>>, std::shared_ptr<const SchurWeylTransform>> memo;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& slot = memo[{cache_dir.string(), {particles, modes}}];
  if (!slot) slot = std::make_shared<const SchurWeylTransform>(load_or_build(particles, modes, cache_dir));
  return slot;
}

namespace {

bool use_irrep(int modes, Pathway pathway) {
  switch (pathway) {
    case Pathway::kIrrep:
      return true;
    case Pathway::kPermanent:
      return false;
    case Pathway::kAuto:
      break;
  }
  return std::pow(static_cast<double>(modes), modes) <= 3125.0;
}

}  // namespace

DiscriminationResult named_success(const Interferometer& u, NamedState target, int bad_mode, const Context& ctx) {
  const int n = u.modes();
  if (!use_irrep(n, ctx.pathway)) return success_probability_permanent(u, target, ctx.epsilon, bad_mode);
  auto t = transform_for(n, n, ctx.cache_dir);
  ReducedState rho(n, n);
  switch (target) {
    case NamedState::kSingly:
      rho = rho_singly(*t, bad_mode == -1 ? n - 1 : bad_mode);
      break;
    case NamedState::kSinglyMixed:
      rho = rho_singly_mixed(*t);
      break;
    case NamedState::kCompletely:
      rho = rho_completely(*t);
      break;
  }
  return success_probability(u, DiscriminationProblem(t, std::move(rho), ctx.epsilon));
}

Interferometer parse_network(const std::string& spec, int modes) {
  if (spec == "qft") return qft(modes);
  if (spec == "table1") return table1_network(modes);
  if (spec.rfind("reck:", 0) == 0) {
    auto u = interferometer_from_json(read_json_file(spec.substr(5)));
    if (u.modes() != modes) {
      throw InvalidArgument("interferometer in " + spec.substr(5) + " has " + std::to_string(u.modes()) +
                            " modes, expected " + std::to_string(modes));
    }
    return u;
  }
  throw InvalidArgument("unknown network \"" + spec + "\" (expected qft, table1 or reck:<file>)");
}

std::optional<Rational> recognise_rational(double x, std::int64_t max_denominator, double tolerance) {
  if (!std::isfinite(x)) return std::nullopt;
  // Continued-fraction convergents.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rest = x;
  for (int i = 0; i < 64; ++i) {
    const double a_real = std::floor(rest);
    if (std::abs(a_real) > 9e15) break;
    const auto a = static_cast<std::int64_t>(a_real);
    const std::int64_t h2 = a * h1 + h0;
    const std::int64_t k2 = a * k1 + k0;
    if (k2 > max_denominator) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    if (std::abs(x - static_cast<double>(h1) / static_cast<double>(k1)) <= tolerance) return Rational(h1, k1);
    const double frac = rest - a_real;
    if (frac < 1e-15) break;
    rest = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace photodisc::cli
