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


#include "photodisc/scattering.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "format.hpp"
#include "photodisc/error.hpp"

namespace photodisc {

std::vector<Occupation> enumerate_outcomes(int particles, int modes, bool exclude_bunched) {
  std::vector<Occupation> out;
  for (auto& n : enumerate_occupations(particles, modes)) {
    if (exclude_bunched && n.is_bunched()) continue;
    out.push_back(std::move(n));
  }
  return out;
}

double clip_probability(double p) {
  if (p >= 0.0) return p;
  if (p >= -1e-12) return 0.0;
  throw InternalConsistency("negative probability " + detail::sci(p));
}

namespace {

void check_dims(const ReducedState& rho, const Interferometer& u, const SchurWeylTransform& t) {
  if (rho.particles() != t.particles() || rho.modes() != t.modes()) {
    throw DimensionMismatch("state and transform sizes differ");
  }
  if (u.modes() != t.modes()) throw DimensionMismatch("interferometer and transform mode counts differ");
}

// Per-row probability mass diag(U B U^dag) of one irrep, in copy-1 order.
Eigen::VectorXd irrep_row_mass(const ReducedState::Component& c, const Partition& shape, const Interferometer& u,
                               const SchurWeylTransform& t) {
  std::vector<std::size_t> support;
  for (Eigen::Index k = 0; k < c.block.rows(); ++k) {
    if (c.block.row(k).cwiseAbs().maxCoeff() > 0.0) support.push_back(static_cast<std::size_t>(k));
  }
  const Eigen::MatrixXcd cols = t.irrep_columns(u.matrix(), shape, support);
  Eigen::MatrixXcd sub(static_cast<Eigen::Index>(support.size()), static_cast<Eigen::Index>(support.size()));
  for (std::size_t a = 0; a < support.size(); ++a) {
    for (std::size_t b = 0; b < support.size(); ++b) {
      sub(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          c.block(static_cast<Eigen::Index>(support[a]), static_cast<Eigen::Index>(support[b]));
    }
  }
  const Eigen::MatrixXcd v = cols * sub;
  return (v.array() * cols.conjugate().array()).rowwise().sum().real();
}

}  // namespace

std::vector<OutcomeProbability> outcome_table(const ReducedState& rho, const Interferometer& u,
                                              const SchurWeylTransform& transform) {
  check_dims(rho, u, transform);
  const auto& weights = transform.product_basis().weights();
  std::vector<OutcomeProbability> table(weights.size());
  for (std::size_t w = 0; w < weights.size(); ++w) table[w].outcome = weights[w];
  for (const auto& [shape, c] : rho.components()) {
    const auto& ir = transform.irrep(shape);
    const Eigen::VectorXd mass = irrep_row_mass(*c, shape, u, transform);
    std::vector<double> per_weight(weights.size(), 0.0);
    for (const auto& seg : ir.segments[0]) {
      for (std::size_t k = 0; k < seg.count; ++k) {
        per_weight[seg.weight_id] += mass[static_cast<Eigen::Index>(seg.copy_offset + k)];
      }
    }
    for (std::size_t w = 0; w < weights.size(); ++w) {
      const double p = clip_probability(c->weight * per_weight[w]);
      table[w].per_irrep.emplace_back(shape, p);
      table[w].total += p;
    }
  }
  return table;
}

OutcomeProbability outcome_probability(const ReducedState& rho, const Interferometer& u, const Occupation& outcome,
                                       const SchurWeylTransform& transform) {
  check_dims(rho, u, transform);
  if (outcome.modes() != transform.modes()) throw DimensionMismatch("outcome length differs from mode count");
  if (outcome.total() != transform.particles()) throw InvalidArgument("outcome photon number differs from N");
  const int w = transform.product_basis().weight_id(outcome);
  OutcomeProbability out;
  out.outcome = outcome;
  for (const auto& [shape, c] : rho.components()) {
    const auto& ir = transform.irrep(shape);
    const Eigen::VectorXd mass = irrep_row_mass(*c, shape, u, transform);
    double p = 0.0;
    for (const auto& seg : ir.segments[0]) {
      if (seg.weight_id != w) continue;
      for (std::size_t k = 0; k < seg.count; ++k) p += mass[static_cast<Eigen::Index>(seg.copy_offset + k)];
    }
    p = clip_probability(c->weight * p);
    out.per_irrep.emplace_back(shape, p);
    out.total += p;
  }
  return out;
}

double outcome_probability_oracle(const FockArray& array, const Interferometer& u, const Occupation& outcome) {
  const int ds = array.system_modes();
  const int dl = array.label_modes();
  const int n = array.particles();
  if (u.modes() != ds) throw DimensionMismatch("interferometer and array System sizes differ");
  if (outcome.modes() != ds) throw DimensionMismatch("outcome length differs from mode count");
  if (outcome.total() != n) throw InvalidArgument("outcome photon number differs from the array");
  if (n > kPermanentMaxSize) throw BudgetExceeded("oracle limited to N <= " + std::to_string(kPermanentMaxSize));

  // Input photons as (System, Label) columns of the transfer matrix.
  std::vector<std::pair<int, int>> inputs;
  for (int s = 0; s < ds; ++s) {
    for (int l = 0; l < dl; ++l) inputs.insert(inputs.end(), array.counts()(s, l), {s, l});
  }
  const Occupation labels = array.label_occupation();
  const double a_fact = static_cast<double>(array.factorial());

  // Output array B, filled Label column by Label column.
  Eigen::MatrixXi b = Eigen::MatrixXi::Zero(ds, dl);
  std::vector<int> remaining = outcome.counts();
  double total = 0.0;
  Eigen::MatrixXcd sub(n, n);

  auto evaluate = [&]() {
    std::vector<std::pair<int, int>> outputs;
    double b_fact = 1.0;
    for (int s = 0; s < ds; ++s) {
      for (int l = 0; l < dl; ++l) {
        outputs.insert(outputs.end(), b(s, l), {s, l});
        b_fact *= static_cast<double>(factorial(b(s, l)));
      }
    }
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        sub(r, c) = outputs[r].second == inputs[c].second ? u(outputs[r].first, inputs[c].first) : Complex{};
      }
    }
    total += std::norm(permanent(sub)) / (a_fact * b_fact);
  };

  // Distribute column l's photons over System modes within the remaining row budget.
  std::function<void(int, int, int)> fill = [&](int l, int s, int left) {
    if (l == dl) {
      evaluate();
      return;
    }
    if (s == ds - 1) {
      if (left > remaining[s]) return;
      b(s, l) = left;
      remaining[s] -= left;
      fill(l + 1, 0, l + 1 < dl ? labels[l + 1] : 0);
      remaining[s] += left;
      b(s, l) = 0;
      return;
    }
    for (int k = std::min(left, remaining[s]); k >= 0; --k) {
      b(s, l) = k;
      remaining[s] -= k;
      fill(l, s + 1, left - k);
      remaining[s] += k;
    }
    b(s, l) = 0;
  };
  fill(0, 0, labels[0]);
  return total;
}

double classical_probability(const Interferometer& u, const Occupation& in, const Occupation& out) {
  const Eigen::MatrixXd sq = occupation_submatrix(u.matrix(), in, out).cwiseAbs2();
  return permanent(sq) / static_cast<double>(out.factorial());
}

double indistinguishable_probability(const Interferometer& u, const Occupation& in, const Occupation& out) {
  const Complex a = permanent(occupation_submatrix(u.matrix(), in, out));
  return std::norm(a) / static_cast<double>(in.factorial() * out.factorial());
}

double singly_probability(const Interferometer& u, int bad_mode, const Occupation& out) {
  const int d = u.modes();
  if (bad_mode < 0 || bad_mode >= d) throw InvalidArgument("bad mode out of range");
  if (out.modes() != d || out.total() != d) throw InvalidArgument("outcome must hold one photon per mode");
  std::vector<int> rest(static_cast<std::size_t>(d), 1);
  rest[static_cast<std::size_t>(bad_mode)] = 0;
  const Occupation in(rest);
  double p = 0.0;
  for (int j = 0; j < d; ++j) {
    if (out[j] == 0) continue;
    std::vector<int> counts = out.counts();
    --counts[static_cast<std::size_t>(j)];
    p += std::norm(u(j, bad_mode)) * indistinguishable_probability(u, in, Occupation(counts));
  }
  return p;
}

}  // namespace photodisc
