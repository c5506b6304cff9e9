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


#include "photodisc/discriminate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "photodisc/cache.hpp"
#include "photodisc/error.hpp"
#include "test_support.hpp"

using namespace photodisc;
using photodisc::testing::haar_unitary;

namespace {

DiscriminationProblem named_problem(int n, NamedState which) {
  const auto t = shared_transform(n, n);
  switch (which) {
    case NamedState::kSingly:
      return DiscriminationProblem(t, rho_singly(*t));
    case NamedState::kSinglyMixed:
      return DiscriminationProblem(t, rho_singly_mixed(*t));
    case NamedState::kCompletely:
      break;
  }
  return DiscriminationProblem(t, rho_completely(*t));
}

Interferometer rotation(double theta) {
  Eigen::MatrixXcd m(2, 2);
  m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return Interferometer(m);
}

}  // namespace

TEST(bounds, exact_values) {
  EXPECT_EQ(bound_singly(3), Rational(2, 3));
  EXPECT_EQ(bound_completely(3), Rational(5, 6));
  EXPECT_EQ(bound_completely(8), Rational(40319, 40320));
  EXPECT_EQ(bound_general(Occupation{1, 1, 1}), Rational(5, 6));
  EXPECT_EQ(bound_general(Occupation{2, 1}), Rational(2, 3));
  EXPECT_EQ(bound_general(Occupation{3}), Rational(0));
  EXPECT_THROW(bound_singly(1), InvalidArgument);
  EXPECT_DOUBLE_EQ(to_double(Rational(19, 24)), 19.0 / 24.0);
}

TEST(success, hong_ou_mandel) {
  const auto r = success_probability(qft(2), named_problem(2, NamedState::kCompletely));
  ASSERT_EQ(r.discriminating.size(), 1u);
  EXPECT_EQ(r.discriminating[0], (Occupation{1, 1}));
  EXPECT_NEAR(r.success, 0.5, 1e-15);
  EXPECT_NEAR(r.failure, 0.5, 1e-15);
  EXPECT_EQ(r.per_outcome.size(), 3u);
}

TEST(success, tritter_uses_the_six_two_one_outcomes) {
  const auto r = success_probability(qft(3), named_problem(3, NamedState::kCompletely));
  ASSERT_EQ(r.discriminating.size(), 6u);
  for (const auto& s : r.per_outcome) {
    if (!s.discriminating) continue;
    EXPECT_FALSE(s.outcome.is_coincident());
    EXPECT_NEAR(s.target, 1.0 / 9.0, 1e-14);
    EXPECT_LE(s.residual, 1e-15);
  }
  EXPECT_NEAR(r.success, 2.0 / 3.0, 1e-14);
}

TEST(success, never_exceeds_bound) {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 3; ++n) {
    for (const auto which : {NamedState::kSingly, NamedState::kSinglyMixed, NamedState::kCompletely}) {
      const auto problem = named_problem(n, which);
      const double bound =
          to_double(which == NamedState::kCompletely ? bound_completely(n) : bound_singly(n));
      for (int k = 0; k < 5; ++k) {
        EXPECT_LE(success_probability(Interferometer(haar_unitary(n, rng)), problem).success, bound + 1e-12);
      }
      EXPECT_LE(success_probability(qft(n), problem).success, bound + 1e-12);
    }
  }
}

TEST(success, robust_to_epsilon) {
  for (int n = 2; n <= 4; ++n) {
    const auto t = shared_transform(n, n);
    const double a = success_probability(qft(n), DiscriminationProblem(t, rho_completely(*t), 1e-12)).success;
    const double b = success_probability(qft(n), DiscriminationProblem(t, rho_completely(*t), 1e-7)).success;
    EXPECT_NEAR(a, b, 1e-12) << "N=" << n;
  }
}

TEST(success, equivariant_under_output_relabelling) {
  const auto problem = named_problem(3, NamedState::kSingly);
  std::mt19937_64 rng(12);
  const Interferometer u(haar_unitary(3, rng));
  const auto p = mode_permutation({2, 0, 1});
  const Interferometer pu(Eigen::MatrixXcd(p.matrix() * u.matrix()));
  const auto a = success_probability(u, problem);
  const auto b = success_probability(pu, problem);
  EXPECT_NEAR(a.success, b.success, 1e-12);
  EXPECT_EQ(a.discriminating.size(), b.discriminating.size());
}

TEST(success, permanent_pathway_matches_irrep_pathway) {
  std::mt19937_64 rng(21);
  for (int n = 2; n <= 4; ++n) {
    const auto t = shared_transform(n, n);
    std::vector<Interferometer> us = {qft(n), Interferometer(haar_unitary(n, rng))};
    for (const auto& u : us) {
      for (int b = 0; b < n; ++b) {
        const auto irrep = success_probability(u, DiscriminationProblem(t, rho_singly(*t, b)));
        const auto perm = success_probability_permanent(u, NamedState::kSingly, 1e-9, b);
        EXPECT_NEAR(irrep.success, perm.success, 1e-12);
        ASSERT_EQ(irrep.per_outcome.size(), perm.per_outcome.size());
        for (std::size_t k = 0; k < perm.per_outcome.size(); ++k) {
          EXPECT_EQ(irrep.per_outcome[k].outcome, perm.per_outcome[k].outcome);
          EXPECT_NEAR(irrep.per_outcome[k].target, perm.per_outcome[k].target, 1e-12);
          EXPECT_NEAR(irrep.per_outcome[k].residual, perm.per_outcome[k].residual, 1e-12);
        }
      }
      EXPECT_NEAR(success_probability(u, DiscriminationProblem(t, rho_completely(*t))).success,
                  success_probability_permanent(u, NamedState::kCompletely).success, 1e-12);
      EXPECT_NEAR(success_probability(u, DiscriminationProblem(t, rho_singly_mixed(*t))).success,
                  success_probability_permanent(u, NamedState::kSinglyMixed).success, 1e-12);
    }
  }
  EXPECT_THROW(success_probability_permanent(qft(3), NamedState::kSingly, 1e-9, 3), InvalidArgument);
  EXPECT_THROW(success_probability_permanent(qft(3), NamedState::kSingly, 0.0), InvalidArgument);
}

TEST(success, partially_distinguishable_pair) {
  const auto t = shared_transform(2, 2);
  for (const double alpha : {0.0, 0.25, 0.5, 0.9}) {
    const auto rho = mix(rho_indistinguishable(*t), rho_completely(*t), alpha);
    const auto r = success_probability(qft(2), DiscriminationProblem(t, rho));
    EXPECT_NEAR(r.success, (1.0 - alpha) / 2.0, 1e-14) << alpha;
  }
}

TEST(success, single_outcome) {
  const auto problem = named_problem(3, NamedState::kCompletely);
  const auto r = single_outcome_success(qft(3), Occupation{2, 1, 0}, problem);
  ASSERT_EQ(r.discriminating.size(), 1u);
  EXPECT_NEAR(r.success, 1.0 / 9.0, 1e-14);
  EXPECT_EQ(single_outcome_success(qft(3), Occupation{1, 1, 1}, problem).success, 0.0);
  EXPECT_THROW(single_outcome_success(qft(3), Occupation{3, 0, 0}, problem), InvalidArgument);
  EXPECT_THROW(single_outcome_success(qft(3), Occupation{1, 1}, problem), InvalidArgument);
}

TEST(success, three_photons_in_two_modes) {
  const auto t = shared_transform(3, 2);
  Eigen::MatrixXi a(2, 2);
  a << 2, 0, 0, 1;
  const auto rho_s1 = rho_from_fock_array(FockArray(a), *t, *t);
  a << 1, 1, 1, 0;
  const auto rho_s2 = rho_from_fock_array(FockArray(a), *t, *t);
  const Occupation in{2, 1};
  const auto u = rotation(std::acos(std::sqrt(2.0 / 3.0)));
  const double s1 = success_probability(u, DiscriminationProblem(t, rho_s1, in)).success;
  const double s2 = success_probability(u, DiscriminationProblem(t, rho_s2, in)).success;
  EXPECT_NEAR(s1, 4.0 / 9.0, 1e-12);
  EXPECT_NEAR(s2, 2.0 / 9.0, 1e-12);
  EXPECT_LE(s1, to_double(bound_general(Occupation{2, 1})));
}

TEST(cost, closed_forms_at_the_tritter) {
  const auto problem = named_problem(3, NamedState::kCompletely);
  const auto u = qft(3);
  for (const double xi : {1.0, 6.0}) {
    const double expected = -(6.0 / 9.0 + std::exp(-xi / 3.0) * 2.0 / 9.0);
    EXPECT_NEAR(penalized_cost(u, problem, xi), expected, 1e-13);
    EXPECT_NEAR(forced_coincidence_cost(u, problem, xi, 10.0), 10.0 / 3.0 + expected, 1e-13);
  }
  EXPECT_NEAR(single_outcome_cost(Occupation{2, 1, 0}, u, problem, 6.0), -1.0 / 9.0, 1e-14);
  EXPECT_NEAR(single_outcome_cost(Occupation{1, 1, 1}, u, problem, 6.0), -std::exp(-2.0) * 2.0 / 9.0, 1e-13);
  EXPECT_THROW(penalized_cost(u, problem, 0.0), InvalidArgument);
  EXPECT_THROW(forced_coincidence_cost(u, problem, 1.0, -1.0), InvalidArgument);
  EXPECT_THROW(single_outcome_cost(Occupation{3, 0, 0}, u, problem, 1.0), InvalidArgument);
}

TEST(problem, validation) {
  const auto t32 = shared_transform(3, 2);
  EXPECT_THROW(DiscriminationProblem(t32, rho_completely(*shared_transform(3, 3))), DimensionMismatch);
  const auto t = shared_transform(2, 2);
  EXPECT_THROW(DiscriminationProblem(t, rho_completely(*t), 0.0), InvalidArgument);
  EXPECT_THROW(DiscriminationProblem(t, rho_completely(*shared_transform(3, 3)), Occupation{1, 1}),
               DimensionMismatch);
}

TEST(optimize, reaches_hong_ou_mandel) {
  OptimizerConfig config;
  config.restarts = 3;
  config.seed = 5;
  const auto r = optimize(named_problem(2, NamedState::kCompletely), config);
  EXPECT_NEAR(r.success, 0.5, 1e-9);
  EXPECT_EQ(r.restarts, 3);
  EXPECT_EQ(r.restart_scores.size(), 3u);
  EXPECT_FALSE(r.cost_trace.empty());
  EXPECT_NEAR((r.u.matrix().adjoint() * r.u.matrix() - Eigen::MatrixXcd::Identity(2, 2)).norm(), 0.0, 1e-12);
}

TEST(optimize, three_photons_reach_two_thirds) {
  OptimizerConfig config;
  config.restarts = 8;
  config.seed = 1;
  const auto r = optimize(named_problem(3, NamedState::kCompletely), config);
  EXPECT_NEAR(r.success, 2.0 / 3.0, 1e-9);
  EXPECT_LE(r.success, to_double(bound_completely(3)));
}

TEST(optimize, deterministic_across_job_counts) {
  OptimizerConfig config;
  config.restarts = 4;
  config.seed = 77;
  const auto problem = named_problem(3, NamedState::kSingly);
  const auto a = optimize(problem, config);
  const auto b = optimize(problem, config);
  config.jobs = 2;
  const auto c = optimize(problem, config);
  EXPECT_EQ(a.restart_scores, b.restart_scores);
  EXPECT_EQ(a.restart_scores, c.restart_scores);
  EXPECT_EQ(a.success, c.success);
  EXPECT_EQ((a.u.matrix() - c.u.matrix()).norm(), 0.0);
}

TEST(optimize, single_outcome_objective) {
  OptimizerConfig config;
  config.objective = OptimizerConfig::Objective::kSingleOutcome;
  config.single_outcome = Occupation{1, 1, 1};
  config.restarts = 4;
  const auto r = optimize(named_problem(3, NamedState::kCompletely), config);
  EXPECT_NEAR(r.success, 0.5, 1e-6);
  ASSERT_EQ(r.discriminating.size(), 1u);
  EXPECT_EQ(r.discriminating[0], (Occupation{1, 1, 1}));
}

TEST(optimize, rejects_bad_configs) {
  const auto problem = named_problem(2, NamedState::kCompletely);
  OptimizerConfig config;
  config.restarts = 0;
  EXPECT_THROW(optimize(problem, config), InvalidArgument);
  config.restarts = 1;
  config.jobs = 0;
  EXPECT_THROW(optimize(problem, config), InvalidArgument);
  config.jobs = 1;
  config.objective = OptimizerConfig::Objective::kSingleOutcome;
  EXPECT_THROW(optimize(problem, config), InvalidArgument);
}

TEST(xi_ladder, defaults) {
  EXPECT_EQ(default_xi_ladder(3), (std::vector<double>{2, 4, 6, 8, 10}));
  EXPECT_EQ(default_xi_ladder(4).back(), 50.0);
  EXPECT_EQ(default_xi_ladder(5).size(), 9u);
}
