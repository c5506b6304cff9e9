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

// Unambiguous discrimination of a target state from the indistinguishable
// reference with photon counting after an interferometer.
//
// An outcome n joins the discriminating set D when it is not fully bunched
// and Tr[rho_ref M_n(U)] <= epsilon. The success probability is the target
// mass on D.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "photodisc/optics.hpp"
#include "photodisc/scattering.hpp"
#include "photodisc/states.hpp"

namespace photodisc {

using Rational = boost::rational<std::int64_t>;

struct DiscriminationProblem {
  std::shared_ptr<const SchurWeylTransform> transform;
  ReducedState target;
  /// System occupation of the input; the reference is the indistinguishable
  /// state with this occupation.
  Occupation input;
  ReducedState reference;
  double epsilon = 1e-9;

  /// Target against coincident rho_i (requires d = N).
  DiscriminationProblem(std::shared_ptr<const SchurWeylTransform> transform, ReducedState target,
                        double epsilon = 1e-9);
  DiscriminationProblem(std::shared_ptr<const SchurWeylTransform> transform, ReducedState target, Occupation input,
                        double epsilon = 1e-9);
  int particles() const { return transform->particles(); }
  int modes() const { return transform->modes(); }
};

struct OutcomeScore {
  Occupation outcome;
  double target = 0.0;    // Tr[rho_target M_n]
  double residual = 0.0;  // Tr[rho_ref M_n]
  bool discriminating = false;
};

struct DiscriminationResult {
  Interferometer u = Interferometer::identity(1);
  std::vector<Occupation> discriminating;
  double success = 0.0;
  double failure = 1.0;
  /// Every outcome, bunched included, canonical order.
  std::vector<OutcomeScore> per_outcome;
  std::uint64_t seed = 0;
  int restarts = 0;
  /// Rescored success of each restart, restart order.
  std::vector<double> restart_scores;
  /// Cost after each optimisation stage of the winning restart.
  std::vector<double> cost_trace;
};

/// Tr[rho_ref M_n(U)].
double constraint_residual(const Interferometer& u, const Occupation& outcome, const DiscriminationProblem& problem);

DiscriminationResult success_probability(const Interferometer& u, const DiscriminationProblem& problem);
/// Success restricted to a single outcome: D = {n} when its residual <= epsilon.
DiscriminationResult single_outcome_success(const Interferometer& u, const Occupation& outcome,
                                            const DiscriminationProblem& problem);

enum class NamedState { kSingly, kSinglyMixed, kCompletely };

/// Permanent pathway for a named target against coincident rho_i (d = N).
/// Needs no Schur-Weyl transform. bad_mode is 0-based, -1 meaning the last
/// mode; it is ignored for the other targets.
DiscriminationResult success_probability_permanent(const Interferometer& u, NamedState target,
                                                   double epsilon = 1e-9, int bad_mode = -1);

Rational bound_singly(int particles);
Rational bound_completely(int particles);
/// 1 - n_L! / N!.
Rational bound_general(const Occupation& label_occupation);
double to_double(const Rational& r);

/// -sum over non-bunched n of exp(-xi p_ref(n)) p_target(n).
double penalized_cost(const Interferometer& u, const DiscriminationProblem& problem, double xi);
/// eta p_ref(1) + penalized_cost: pushes the coincidence outcome into D.
double forced_coincidence_cost(const Interferometer& u, const DiscriminationProblem& problem, double xi,
                               double eta);
/// -exp(-xi p_ref(n)) p_target(n).
double single_outcome_cost(const Occupation& outcome, const Interferometer& u, const DiscriminationProblem& problem,
                           double xi);

/// The xi ladder used when none is configured.
std::vector<double> default_xi_ladder(int particles);

struct OptimizerConfig {
  enum class Objective { kPenalized, kForcedCoincidence, kSingleOutcome };

  Objective objective = Objective::kPenalized;
  std::optional<Occupation> single_outcome;  // kSingleOutcome only
  double eta = 10.0;                         // kForcedCoincidence only
  int restarts = 20;
  std::uint64_t seed = 1;
  /// Empty means default_xi_ladder(N). kForcedCoincidence uses the last entry
  /// when a single value is wanted; defaults to {6}.
  std::vector<double> xi_ladder;
  double gradient_step = 1e-6;
  int max_iterations = 500;
  double function_tolerance = 1e-13;
  /// Drive near-zero residuals of the candidate set exactly to zero.
  bool polish = true;
  /// Perturb-and-descend steps after each restart.
  int hops = 10;
  double hop_scale = 1.0;
  int jobs = 1;
};

DiscriminationResult optimize(const DiscriminationProblem& problem, const OptimizerConfig& config);

}  // namespace photodisc
