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


#include "photodisc/states.hpp"

#include <gtest/gtest.h>

#include "photodisc/cache.hpp"
#include "photodisc/error.hpp"

using namespace photodisc;

namespace {

double max_gap(const ReducedState& a, const ReducedState& b) {
  double gap = 0.0;
  for (const auto& [shape, c] : a.components()) {
    const Eigen::MatrixXcd wa = c->weight * c->block;
    if (!b.has(shape)) {
      gap = std::max(gap, wa.cwiseAbs().maxCoeff());
      continue;
    }
    const auto& cb = b.component(shape);
    const Eigen::MatrixXcd wb = cb.weight * cb.block;
    gap = std::max(gap, (wa - wb).cwiseAbs().maxCoeff());
  }
  for (const auto& [shape, c] : b.components()) {
    if (!a.has(shape)) gap = std::max(gap, (c->weight * c->block).cwiseAbs().maxCoeff());
  }
  return gap;
}

double weight_or_zero(const ReducedState& rho, const Partition& p) { return rho.has(p) ? rho.weight(p) : 0.0; }

}  // namespace

TEST(fock_array, constructors) {
  const auto d = FockArray::distinguishable(3);
  EXPECT_EQ(d.particles(), 3);
  EXPECT_EQ(d.label_modes(), 3);
  EXPECT_EQ(d.label_occupation(), Occupation({1, 1, 1}));
  const auto s = FockArray::singly(3, 0);
  EXPECT_EQ(s.label_occupation(), Occupation({2, 1}));
  EXPECT_EQ(s.counts()(0, 1), 1);
  EXPECT_EQ(FockArray::indistinguishable(4).system_occupation(), Occupation::coincident(4));
  Eigen::MatrixXi a(2, 2);
  a << 2, 0, 0, 1;
  EXPECT_EQ(FockArray(a).factorial(), 2u);
  Eigen::MatrixXi neg(1, 1);
  neg << -1;
  EXPECT_THROW(FockArray{neg}, InvalidArgument);
}

TEST(reduced_state, named_states_are_valid) {
  for (int n = 2; n <= 5; ++n) {
    const auto t = shared_transform(n, n);
    EXPECT_LE(rho_indistinguishable(*t).validation_error(), 1e-12);
    EXPECT_LE(rho_completely(*t).validation_error(), 1e-12);
    EXPECT_LE(rho_singly_mixed(*t).validation_error(), 1e-12);
    for (int b = 0; b < n; ++b) EXPECT_LE(rho_singly(*t, b).validation_error(), 1e-12);
  }
}

TEST(reduced_state, indistinguishable_state_is_purely_symmetric) {
  const auto t = shared_transform(3, 3);
  const auto rho = rho_indistinguishable(*t);
  const auto comps = rho.components();
  ASSERT_EQ(comps.size(), 1u);
  EXPECT_EQ(comps[0].first, Partition({3}));
  EXPECT_NEAR(comps[0].second->weight, 1.0, 1e-15);
  const auto& b = comps[0].second->block;
  EXPECT_NEAR(std::abs(b.trace()), 1.0, 1e-12);
  EXPECT_NEAR((b * b - b).cwiseAbs().maxCoeff(), 0.0, 1e-12);  // pure
}

TEST(reduced_state, completely_distinguishable_weights) {
  for (int n = 2; n <= 5; ++n) {
    const auto t = shared_transform(n, n);
    const auto rho = rho_completely(*t);
    for (const auto& p : enumerate_partitions(n, n)) {
      const double expected = static_cast<double>(sym_dim(p) * sym_dim(p)) / static_cast<double>(factorial(n));
      EXPECT_NEAR(weight_or_zero(rho, p), expected, 1e-12) << p.to_string();
    }
  }
}

TEST(reduced_state, singly_distinguishable_weights) {
  for (int n = 2; n <= 5; ++n) {
    const auto t = shared_transform(n, n);
    for (int b = 0; b < n; ++b) {
      const auto rho = rho_singly(*t, b);
      EXPECT_NEAR(weight_or_zero(rho, Partition({n})), 1.0 / n, 1e-12);
      EXPECT_NEAR(weight_or_zero(rho, Partition({n - 1, 1})), (n - 1.0) / n, 1e-12);
      const auto& block = rho.component(Partition({n - 1, 1})).block;
      EXPECT_NEAR((block * block - block).cwiseAbs().maxCoeff(), 0.0, 1e-12);
    }
    EXPECT_THROW(rho_singly(*t, n), InvalidArgument);
  }
}

TEST(reduced_state, mixed_singly_is_the_bad_mode_average) {
  const int n = 4;
  const auto t = shared_transform(n, n);
  ReducedState avg = rho_singly(*t, 0);
  for (int b = 1; b < n; ++b) avg = mix(avg, rho_singly(*t, b), static_cast<double>(b) / (b + 1));
  EXPECT_LE(max_gap(avg, rho_singly_mixed(*t)), 1e-12);
}

TEST(reduced_state, fock_arrays_reproduce_named_states) {
  for (int n = 2; n <= 4; ++n) {
    const auto t = shared_transform(n, n);
    EXPECT_LE(max_gap(rho_from_fock_array(FockArray::indistinguishable(n), *t, *shared_transform(n, 1)),
                      rho_indistinguishable(*t)),
              1e-10);
    EXPECT_LE(max_gap(rho_from_fock_array(FockArray::distinguishable(n), *t, *t), rho_completely(*t)), 1e-10);
    for (int b = 0; b < n; ++b) {
      EXPECT_LE(max_gap(rho_from_fock_array(FockArray::singly(n, b), *t, *shared_transform(n, 2)),
                        rho_singly(*t, b)),
                1e-10)
          << "N=" << n << " bad=" << b;
    }
  }
}

TEST(reduced_state, symmetric_weight_of_coincident_arrays) {
  const auto t = shared_transform(4, 4);
  const auto tl = shared_transform(4, 2);
  Eigen::MatrixXi a(4, 2);
  a << 1, 0, 1, 0, 0, 1, 0, 1;
  const auto rho = rho_from_fock_array(FockArray(a), *t, *tl);
  EXPECT_NEAR(symmetric_weight(Occupation({2, 2})), 4.0 / 24.0, 1e-15);
  EXPECT_NEAR(rho.weight(Partition({4})), 4.0 / 24.0, 1e-12);
  EXPECT_LE(rho.validation_error(), 1e-10);
}

TEST(reduced_state, three_photons_in_two_modes) {
  const auto t = shared_transform(3, 2);
  Eigen::MatrixXi s1(2, 2), s2(2, 2);
  s1 << 2, 0, 0, 1;
  s2 << 1, 1, 1, 0;
  const auto r1 = rho_from_fock_array(FockArray(s1), *t, *t);
  const auto r2 = rho_from_fock_array(FockArray(s2), *t, *t);
  EXPECT_NEAR(r1.weight(Partition({3})), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(r1.weight(Partition({2, 1})), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(r2.weight(Partition({3})), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(r2.weight(Partition({2, 1})), 1.0 / 3.0, 1e-12);
  // A third label on the lone photon gives the same reduced state as s1.
  Eigen::MatrixXi s3(2, 3);
  s3 << 1, 1, 0, 0, 0, 1;
  EXPECT_LE(max_gap(rho_from_fock_array(FockArray(s3), *t, *shared_transform(3, 3)), r1), 1e-10);
}

TEST(reduced_state, set_rejects_malformed_components) {
  ReducedState rho(2, 2);
  EXPECT_THROW(rho.set(Partition({2}), 1.0, Eigen::MatrixXcd::Identity(3, 3)), InvalidArgument);
  Eigen::MatrixXcd not_hermitian = Eigen::MatrixXcd::Zero(3, 3);
  not_hermitian(0, 0) = 1.0;
  not_hermitian(0, 1) = 0.5;
  EXPECT_THROW(rho.set(Partition({2}), 1.0, not_hermitian), InvalidArgument);
  EXPECT_THROW(rho.set(Partition({2}), 1.0, Eigen::MatrixXcd::Identity(2, 2) / 2.0), DimensionMismatch);
  EXPECT_THROW(rho.set(Partition({3}), 1.0, Eigen::MatrixXcd::Identity(1, 1)), DimensionMismatch);
  EXPECT_THROW(rho.set(Partition({2}), -0.5, Eigen::MatrixXcd::Identity(3, 3) / 3.0), InvalidArgument);
  EXPECT_THROW(rho.component(Partition({1, 1})), InvalidArgument);
}

TEST(reduced_state, mix_checks_sizes_and_weights) {
  const auto t2 = shared_transform(2, 2);
  const auto t3 = shared_transform(3, 3);
  EXPECT_THROW(mix(rho_completely(*t2), rho_completely(*t3), 0.5), DimensionMismatch);
  EXPECT_THROW(mix(rho_completely(*t2), rho_indistinguishable(*t2), 1.5), InvalidArgument);
  const auto m = mix(rho_completely(*t2), rho_indistinguishable(*t2), 0.25);
  EXPECT_LE(m.validation_error(), 1e-12);
  EXPECT_NEAR(m.weight(Partition({1, 1})), 0.25 * 0.5, 1e-15);
}
