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


#include "photodisc/optics.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "photodisc/error.hpp"
#include "test_support.hpp"

using namespace photodisc;
using photodisc::testing::brute_permanent;

namespace {

double unitarity_gap(const Eigen::MatrixXcd& u) {
  return (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

ReckParams random_reck(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> theta(0.0, std::numbers::pi / 2);
  std::uniform_real_distribution<double> omega(0.0, 2 * std::numbers::pi);
  ReckParams p;
  for (std::size_t k = 0; k < ReckParams::theta_count(d); ++k) p.thetas.push_back(theta(rng));
  for (std::size_t k = 0; k < ReckParams::omega_count(d); ++k) p.omegas.push_back(omega(rng));
  return p;
}

}  // namespace

TEST(interferometer, rejects_non_unitary_and_non_square) {
  EXPECT_THROW(Interferometer(Eigen::MatrixXcd::Ones(2, 2)), InvalidArgument);
  EXPECT_THROW(Interferometer(Eigen::MatrixXcd::Identity(2, 3)), DimensionMismatch);
  EXPECT_NO_THROW(Interferometer(Eigen::MatrixXcd::Identity(3, 3)));
  EXPECT_EQ(Interferometer::identity(4).modes(), 4);
}

TEST(qft, is_unitary_with_fourier_entries) {
  for (int n = 2; n <= 9; ++n) {
    const auto q = qft(n);
    EXPECT_LE(unitarity_gap(q.matrix()), 1e-12);
    const auto w = std::polar(1.0, 2 * std::numbers::pi / n);
    EXPECT_NEAR(std::abs(q(1, 1) * std::sqrt(n) - w), 0.0, 1e-12);
  }
  EXPECT_THROW(qft(1), InvalidArgument);
}

TEST(qft, tritter_permanent) {
  const auto m = qft(3).matrix();
  const Complex p = permanent(m);
  EXPECT_NEAR(p.real(), -1.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(p.imag(), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(p - brute_permanent(m)), 0.0, 1e-12);
  EXPECT_NEAR(std::norm(p), 1.0 / 3.0, 1e-12);
}

TEST(qft, beamsplitter_permanent_vanishes) {
  EXPECT_NEAR(std::abs(permanent(qft(2).matrix())), 0.0, 1e-15);
}

TEST(permanent, ryser_matches_brute_force) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 8; ++n) {
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
    }
    const Complex expected = brute_permanent(m);
    EXPECT_NEAR(std::abs(permanent(m) - expected), 0.0, 1e-9 * std::max(1.0, std::abs(expected))) << n;
    EXPECT_NEAR(std::abs(permanent_naive(m) - expected), 0.0, 1e-9 * std::max(1.0, std::abs(expected)));
    const Eigen::MatrixXd r = m.real();
    EXPECT_NEAR(permanent(r), brute_permanent(r.cast<Complex>()).real(), 1e-9 * std::max(1.0, std::abs(expected)));
  }
}

TEST(permanent, known_values) {
  EXPECT_DOUBLE_EQ(permanent(Eigen::MatrixXd(Eigen::MatrixXd::Ones(5, 5))), 120.0);
  EXPECT_DOUBLE_EQ(permanent(Eigen::MatrixXd(Eigen::MatrixXd::Identity(6, 6))), 1.0);
  EXPECT_DOUBLE_EQ(permanent(Eigen::MatrixXd(0, 0)), 1.0);
}

TEST(permanent, size_caps) {
  EXPECT_THROW(permanent(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(kPermanentMaxSize + 1, kPermanentMaxSize + 1))), BudgetExceeded);
  EXPECT_THROW(permanent_naive(Eigen::MatrixXcd::Identity(11, 11)), BudgetExceeded);
  EXPECT_THROW(permanent(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(2, 3))), DimensionMismatch);
}

TEST(occupation_submatrix, repeats_rows_and_columns) {
  Eigen::MatrixXcd u(2, 2);
  u << 1.0, 2.0, 3.0, 4.0;
  const auto m = occupation_submatrix(u, Occupation({1, 1}), Occupation({2, 0}));
  Eigen::MatrixXcd expected(2, 2);
  expected << 1.0, 2.0, 1.0, 2.0;
  EXPECT_EQ(m, expected);
  EXPECT_THROW(occupation_submatrix(u, Occupation({1, 1}), Occupation({2, 1})), InvalidArgument);
}

TEST(reck, parameter_counts) {
  EXPECT_EQ(ReckParams::theta_count(4), 6u);
  EXPECT_EQ(ReckParams::omega_count(4), 3u);
  EXPECT_EQ(ReckParams::omega_count(2), 0u);
  std::mt19937_64 rng(2);
  const auto p = random_reck(4, rng);
  const auto flat = p.flatten();
  EXPECT_EQ(flat.size(), 9u);
  const auto back = ReckParams::unflatten(flat, 4);
  EXPECT_EQ(back.thetas, p.thetas);
  EXPECT_EQ(back.omegas, p.omegas);
  EXPECT_THROW(from_reck(ReckParams{{0.1}, {}}, 3), InvalidArgument);
}

TEST(reck, two_modes_is_a_beamsplitter) {
  const auto u = from_reck(ReckParams{{0.3}, {}}, 2);
  EXPECT_LE((u.matrix() - beamsplitter(0.3)).cwiseAbs().maxCoeff(), 1e-15);
  ASSERT_TRUE(u.reck.has_value());
}

TEST(reck, outputs_are_unitary) {
  std::mt19937_64 rng(3);
  for (int d = 2; d <= 8; ++d) {
    const auto u = from_reck(random_reck(d, rng), d);
    EXPECT_LE(unitarity_gap(u.matrix()), 1e-12);
  }
}

TEST(reck, decomposition_reaches_haar_unitaries) {
  std::mt19937_64 rng(4);
  for (int d = 2; d <= 7; ++d) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto u = random_unitary(d, rng);
      const auto dec = reck_decompose(u);
      for (double t : dec.params.thetas) {
        EXPECT_GE(t, -1e-12);
        EXPECT_LE(t, std::numbers::pi / 2 + 1e-12);
      }
      const Eigen::MatrixXcd rebuilt = dec.left_phases.asDiagonal() * from_reck(dec.params, d).matrix() *
                                       dec.right_phases.asDiagonal();
      EXPECT_LE((rebuilt - u).cwiseAbs().maxCoeff(), 1e-12) << "d=" << d;
    }
  }
}

TEST(reck, decomposition_of_the_qft) {
  for (int d = 2; d <= 6; ++d) {
    const auto u = qft(d).matrix();
    const auto dec = reck_decompose(u);
    const Eigen::MatrixXcd rebuilt = dec.left_phases.asDiagonal() * from_reck(dec.params, d).matrix() *
                                     dec.right_phases.asDiagonal();
    EXPECT_LE((rebuilt - u).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(network, blocks_apply_in_list_order) {
  const auto a = qft(2).matrix();
  const auto b = beamsplitter(0.4);
  const auto net = layered_network(3, {{0, a}, {1, b}});
  Eigen::MatrixXcd ea = Eigen::MatrixXcd::Identity(3, 3);
  ea.block(0, 0, 2, 2) = a;
  Eigen::MatrixXcd eb = Eigen::MatrixXcd::Identity(3, 3);
  eb.block(1, 1, 2, 2) = b;
  EXPECT_LE((net.matrix() - eb * ea).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(net.network.size(), 2u);
  EXPECT_THROW(layered_network(3, {{2, a}}), InvalidArgument);
}

TEST(network, mode_permutation_sends_k_to_perm_k) {
  const auto p = mode_permutation({2, 0, 1});
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(3);
  e0(0) = 1.0;
  const Eigen::VectorXcd out = p.matrix() * e0;
  EXPECT_EQ(out(2), Complex(1.0));
  EXPECT_THROW(mode_permutation({0, 0, 1}), InvalidArgument);
}

TEST(random_unitary, is_unitary_and_seeded) {
  std::mt19937_64 a(5), b(5);
  const auto u = random_unitary(5, a);
  EXPECT_LE(unitarity_gap(u), 1e-12);
  EXPECT_EQ(u, random_unitary(5, b));
}
