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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <set>
#include <thread>

#include <ceres/ceres.h>

#include "photodisc/error.hpp"

namespace photodisc {

DiscriminationProblem::DiscriminationProblem(std::shared_ptr<const SchurWeylTransform> t, ReducedState target_state,
                                             double eps)
    : DiscriminationProblem(t, std::move(target_state), Occupation::coincident(t->modes()), eps) {
  if (t->modes() != t->particles()) throw InvalidArgument("coincident input needs d = N");
}

DiscriminationProblem::DiscriminationProblem(std::shared_ptr<const SchurWeylTransform> t, ReducedState target_state,
                                             Occupation in, double eps)
    : transform(std::move(t)), target(std::move(target_state)), input(std::move(in)),
      reference(rho_indistinguishable(*transform, input)), epsilon(eps) {
  if (!(epsilon > 0.0)) throw InvalidArgument("constraint tolerance must be positive");
  if (target.particles() != transform->particles() || target.modes() != transform->modes()) {
    throw DimensionMismatch("target state and transform sizes differ");
  }
}

namespace {

struct Tables {
  std::vector<Occupation> outcomes;
  std::vector<double> target;
  std::vector<double> reference;
};

Tables tables(const Interferometer& u, const DiscriminationProblem& problem) {
  const auto& t = *problem.transform;
  const auto tgt = outcome_table(problem.target, u, t);
  const auto ref = outcome_table(problem.reference, u, t);
  Tables out;
  for (std::size_t k = 0; k < tgt.size(); ++k) {
    out.outcomes.push_back(tgt[k].outcome);
    out.target.push_back(tgt[k].total);
    out.reference.push_back(ref[k].total);
  }
  return out;
}

std::size_t outcome_index(const DiscriminationProblem& problem, const Occupation& n) {
  if (n.modes() != problem.modes() || n.total() != problem.particles()) {
    throw InvalidArgument("outcome " + n.to_string() + " does not fit N=" + std::to_string(problem.particles()) +
                          ", d=" + std::to_string(problem.modes()));
  }
  return static_cast<std::size_t>(problem.transform->product_basis().weight_id(n));
}

DiscriminationResult assemble(const Interferometer& u, const Tables& tab, double epsilon,
                              const std::function<bool(std::size_t)>& eligible) {
  DiscriminationResult r;
  r.u = u;
  for (std::size_t k = 0; k < tab.outcomes.size(); ++k) {
    OutcomeScore s{tab.outcomes[k], tab.target[k], tab.reference[k], false};
    s.discriminating = eligible(k) && !s.outcome.is_bunched() && s.residual <= epsilon;
    if (s.discriminating) {
      r.discriminating.push_back(s.outcome);
      r.success += s.target;
    }
    r.per_outcome.push_back(std::move(s));
  }
  r.failure = 1.0 - r.success;
  return r;
}

}  // namespace

double constraint_residual(const Interferometer& u, const Occupation& outcome, const DiscriminationProblem& problem) {
  outcome_index(problem, outcome);
  return outcome_probability(problem.reference, u, outcome, *problem.transform).total;
}

DiscriminationResult success_probability(const Interferometer& u, const DiscriminationProblem& problem) {
  return assemble(u, tables(u, problem), problem.epsilon, [](std::size_t) { return true; });
}

DiscriminationResult single_outcome_success(const Interferometer& u, const Occupation& outcome,
                                            const DiscriminationProblem& problem) {
  const std::size_t idx = outcome_index(problem, outcome);
  if (outcome.is_bunched()) throw InvalidArgument("a fully bunched outcome never discriminates");
  return assemble(u, tables(u, problem), problem.epsilon, [idx](std::size_t k) { return k == idx; });
}

DiscriminationResult success_probability_permanent(const Interferometer& u, NamedState target, double epsilon,
                                                   int bad_mode) {
  if (!(epsilon > 0.0)) throw InvalidArgument("constraint tolerance must be positive");
  const int n = u.modes();
  if (bad_mode == -1) bad_mode = n - 1;
  if (bad_mode < 0 || bad_mode >= n) throw InvalidArgument("bad mode out of range");
  const Occupation in = Occupation::coincident(n);
  Tables tab;
  tab.outcomes = enumerate_outcomes(n, n, false);
  for (const auto& out : tab.outcomes) {
    tab.reference.push_back(indistinguishable_probability(u, in, out));
    double p = 0.0;
    switch (target) {
      case NamedState::kSingly:
        p = singly_probability(u, bad_mode, out);
        break;
      case NamedState::kSinglyMixed:
        for (int b = 0; b < n; ++b) p += singly_probability(u, b, out);
        p /= n;
        break;
      case NamedState::kCompletely:
        p = classical_probability(u, in, out);
        break;
    }
    tab.target.push_back(p);
  }
  return assemble(u, tab, epsilon, [](std::size_t) { return true; });
}

Rational bound_singly(int particles) {
  if (particles < 2) throw InvalidArgument("bounds need N >= 2");
  return Rational(1) - Rational(1, particles);
}

Rational bound_completely(int particles) {
  if (particles < 2) throw InvalidArgument("bounds need N >= 2");
  return Rational(1) - Rational(1, static_cast<std::int64_t>(factorial(particles)));
}

Rational bound_general(const Occupation& label_occupation) {
  return Rational(1) - Rational(static_cast<std::int64_t>(label_occupation.factorial()),
                               static_cast<std::int64_t>(factorial(label_occupation.total())));
}

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

namespace {

double penalized(const Tables& tab, double xi) {
  double c = 0.0;
  for (std::size_t k = 0; k < tab.outcomes.size(); ++k) {
    if (tab.outcomes[k].is_bunched()) continue;
    c -= std::exp(-xi * tab.reference[k]) * tab.target[k];
  }
  return c;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw InvalidArgument(std::string(what) + " must be positive");
}

}  // namespace

double penalized_cost(const Interferometer& u, const DiscriminationProblem& problem, double xi) {
  require_positive(xi, "xi");
  return penalized(tables(u, problem), xi);
}

double forced_coincidence_cost(const Interferometer& u, const DiscriminationProblem& problem, double xi,
                               double eta) {
  require_positive(xi, "xi");
  require_positive(eta, "eta");
  const Tables tab = tables(u, problem);
  const std::size_t idx = outcome_index(problem, Occupation::coincident(problem.modes()));
  return eta * tab.reference[idx] + penalized(tab, xi);
}

double single_outcome_cost(const Occupation& outcome, const Interferometer& u, const DiscriminationProblem& problem,
                           double xi) {
  require_positive(xi, "xi");
  if (outcome.is_bunched()) throw InvalidArgument("a fully bunched outcome never discriminates");
  const std::size_t idx = outcome_index(problem, outcome);
  const Tables tab = tables(u, problem);
  return -std::exp(-xi * tab.reference[idx]) * tab.target[idx];
}

std::vector<double> default_xi_ladder(int particles) {
  switch (particles) {
    case 4:
      return {10, 13, 15, 17, 20, 25, 35, 50};
    case 5:
      return {10, 12, 14, 15, 16, 18, 20, 35, 60};
    default:
      return {2, 4, 6, 8, 10};
  }
}

namespace {

using Objective = std::function<double(const std::vector<double>&)>;

class CentralDifference : public ceres::FirstOrderFunction {
 public:
  CentralDifference(const Objective* f, int n, double h) : f_(f), n_(n), h_(h) {}
  bool Evaluate(const double* parameters, double* cost, double* gradient) const override {
    std::vector<double> x(parameters, parameters + n_);
    *cost = (*f_)(x);
    if (!std::isfinite(*cost)) return false;
    if (gradient) {
      for (int i = 0; i < n_; ++i) {
        const double keep = x[i];
        x[i] = keep + h_;
        const double up = (*f_)(x);
        x[i] = keep - h_;
        const double down = (*f_)(x);
        x[i] = keep;
        gradient[i] = (up - down) / (2.0 * h_);
      }
    }
    return true;
  }
  int NumParameters() const override { return n_; }

 private:
  const Objective* f_;
  int n_;
  double h_;
};

double descend(const Objective& f, std::vector<double>& x, const OptimizerConfig& config) {
  if (x.empty()) return f(x);
  ceres::GradientProblem problem(new CentralDifference(&f, static_cast<int>(x.size()), config.gradient_step));
  ceres::GradientProblemSolver::Options options;
  options.line_search_direction_type = ceres::BFGS;
  options.max_num_iterations = config.max_iterations;
  options.function_tolerance = config.function_tolerance;
  options.gradient_tolerance = 1e-12;
  options.parameter_tolerance = 1e-14;
  options.logging_type = ceres::SILENT;
  options.minimizer_progress_to_stdout = false;
  ceres::GradientProblemSolver::Summary summary;
  ceres::Solve(options, problem, x.data(), &summary);
  return f(x);
}

// Reference amplitudes per(U_in^n) / sqrt(n! in!) of the outcomes in `set`.
struct AmplitudeResidual {
  const std::vector<Occupation>* set;
  Occupation in;
  int modes;
  bool operator()(double const* const* parameters, double* residuals) const {
    std::vector<double> x(parameters[0], parameters[0] + ReckParams::theta_count(modes) + ReckParams::omega_count(modes));
    const Interferometer u = from_reck(ReckParams::unflatten(x, modes), modes);
    for (std::size_t k = 0; k < set->size(); ++k) {
      const Complex a = permanent(occupation_submatrix(u.matrix(), in, (*set)[k])) /
                        std::sqrt(static_cast<double>((*set)[k].factorial() * in.factorial()));
      residuals[2 * k] = a.real();
      residuals[2 * k + 1] = a.imag();
    }
    return true;
  }
};

void project(std::vector<double>& x, const std::vector<Occupation>& set, const Occupation& in, int modes) {
  if (set.empty() || x.empty()) return;
  auto* cost = new ceres::DynamicNumericDiffCostFunction<AmplitudeResidual, ceres::CENTRAL>(
      new AmplitudeResidual{&set, in, modes});
  cost->AddParameterBlock(static_cast<int>(x.size()));
  cost->SetNumResiduals(static_cast<int>(2 * set.size()));
  ceres::Problem problem;
  problem.AddResidualBlock(cost, nullptr, x.data());
  ceres::Solver::Options options;
  options.linear_solver_type = ceres::DENSE_QR;
  options.max_num_iterations = 100;
  options.function_tolerance = 1e-30;
  options.gradient_tolerance = 1e-30;
  options.parameter_tolerance = 1e-16;
  options.logging_type = ceres::SILENT;
  ceres::Solver::Summary summary;
  ceres::Solve(options, &problem, &summary);
}

struct RestartOutcome {
  double success = -1.0;
  std::vector<double> x;
  std::vector<double> trace;
};

class Runner {
 public:
  Runner(const DiscriminationProblem& problem, const OptimizerConfig& config) : problem_(problem), config_(config) {
    modes_ = problem.modes();
    ladder_ = config.xi_ladder;
    if (ladder_.empty()) {
      ladder_ = config.objective == OptimizerConfig::Objective::kPenalized ? default_xi_ladder(problem.particles())
                                                                            : std::vector<double>{6.0};
    }
    for (double xi : ladder_) require_positive(xi, "xi");
    if (config.objective == OptimizerConfig::Objective::kSingleOutcome) {
      if (!config.single_outcome) throw InvalidArgument("single-outcome objective needs an outcome");
      if (config.single_outcome->is_bunched()) throw InvalidArgument("a fully bunched outcome never discriminates");
      single_ = outcome_index(problem, *config.single_outcome);
    }
    if (config.objective == OptimizerConfig::Objective::kForcedCoincidence) {
      require_positive(config.eta, "eta");
      coincident_ = outcome_index(problem, Occupation::coincident(modes_));
    }
  }

  Interferometer unitary(const std::vector<double>& x) const {
    return from_reck(ReckParams::unflatten(x, modes_), modes_);
  }

  Tables evaluate(const std::vector<double>& x) const { return tables(unitary(x), problem_); }

  double objective(const Tables& tab, double xi) const {
    switch (config_.objective) {
      case OptimizerConfig::Objective::kForcedCoincidence:
        return config_.eta * tab.reference[coincident_] + penalized(tab, xi);
      case OptimizerConfig::Objective::kSingleOutcome:
        return -std::exp(-xi * tab.reference[single_]) * tab.target[single_];
      case OptimizerConfig::Objective::kPenalized:
        break;
    }
    return penalized(tab, xi);
  }

  DiscriminationResult score(const std::vector<double>& x) const {
    const Interferometer u = unitary(x);
    if (config_.objective == OptimizerConfig::Objective::kSingleOutcome) {
      return single_outcome_success(u, *config_.single_outcome, problem_);
    }
    return success_probability(u, problem_);
  }

  RestartOutcome run(int index) const {
    std::seed_seq seq{static_cast<std::uint32_t>(config_.seed), static_cast<std::uint32_t>(config_.seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::vector<double> x;
    for (std::size_t k = 0; k < ReckParams::theta_count(modes_); ++k) x.push_back(angle(rng));
    for (std::size_t k = 0; k < ReckParams::omega_count(modes_); ++k) x.push_back(phase(rng));

    RestartOutcome best;
    auto consider = [&](const std::vector<double>& y) {
      const double s = score(y).success;
      if (s > best.success) {
        best.success = s;
        best.x = y;
      }
    };

    std::vector<double> trace;
    for (double xi : ladder_) {
      const Objective f = [&](const std::vector<double>& y) { return objective(evaluate(y), xi); };
      trace.push_back(descend(f, x, config_));
      consider(x);
    }
    const double last_xi = ladder_.back();
    std::normal_distribution<double> jitter(0.0, config_.hop_scale);
    for (int h = 0; h < config_.hops; ++h) {
      std::vector<double> y = x;
      for (double& v : y) v += jitter(rng);
      const Objective f = [&](const std::vector<double>& z) { return objective(evaluate(z), last_xi); };
      const double c = descend(f, y, config_);
      if (c < trace.back()) {
        x = y;
        trace.push_back(c);
      }
      consider(y);
    }
    if (config_.polish) {
      for (const auto& set : candidate_sets(x)) {
        std::vector<double> y = x;
        trace.push_back(polish(y, set));
        consider(y);
      }
    }
    best.trace = std::move(trace);
    return best;
  }

 private:
  std::vector<std::vector<std::size_t>> candidate_sets(const std::vector<double>& x) const {
    const Tables tab = evaluate(x);
    std::set<std::vector<std::size_t>> sets;
    if (config_.objective == OptimizerConfig::Objective::kSingleOutcome) return {{single_}};
    for (double threshold : {1e-2, 1e-4, 1e-6}) {
      std::vector<std::size_t> set;
      for (std::size_t k = 0; k < tab.outcomes.size(); ++k) {
        if (tab.outcomes[k].is_bunched()) continue;
        const bool forced = config_.objective == OptimizerConfig::Objective::kForcedCoincidence && k == coincident_;
        if (forced || tab.reference[k] <= threshold) set.push_back(k);
      }
      if (!set.empty()) sets.insert(set);
    }
    return {sets.begin(), sets.end()};
  }

  // Maximise target mass on a fixed set while pushing its residuals to zero.
  double polish(std::vector<double>& x, const std::vector<std::size_t>& set) const {
    double c = 0.0;
    for (double mu : {1e2, 1e3, 1e4, 1e5, 1e6}) {
      const Objective f = [&](const std::vector<double>& y) {
        const Tables tab = evaluate(y);
        double v = 0.0;
        for (std::size_t k : set) v += -tab.target[k] + mu * tab.reference[k];
        return v;
      };
      c = descend(f, x, config_);
    }
    std::vector<Occupation> outcomes;
    const auto& weights = problem_.transform->product_basis().weights();
    for (std::size_t k : set) outcomes.push_back(weights[k]);
    project(x, outcomes, problem_.input, modes_);
    return c;
  }

  const DiscriminationProblem& problem_;
  const OptimizerConfig& config_;
  int modes_ = 0;
  std::vector<double> ladder_;
  std::size_t single_ = 0;
  std::size_t coincident_ = 0;
};

}  // namespace

DiscriminationResult optimize(const DiscriminationProblem& problem, const OptimizerConfig& config) {
  if (config.restarts < 1) throw InvalidArgument("need at least one restart");
  if (config.jobs < 1) throw InvalidArgument("need at least one job");
  const Runner runner(problem, config);

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (int i = next++; i < config.restarts; i = next++) {
      try {
        outcomes[static_cast<std::size_t>(i)] = runner.run(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int jobs = std::min(config.jobs, config.restarts);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::size_t winner = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i) {
    if (outcomes[i].success > outcomes[winner].success) winner = i;
  }
  DiscriminationResult result = runner.score(outcomes[winner].x);
  result.seed = config.seed;
  result.restarts = config.restarts;
  for (const auto& o : outcomes) result.restart_scores.push_back(o.success);
  result.cost_trace = outcomes[winner].trace;
  return result;
}

}  // namespace photodisc
