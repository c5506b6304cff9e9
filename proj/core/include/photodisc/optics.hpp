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

// Linear-optical interferometers and the matrix functions that govern them.
//
// Reck layout. Beamsplitter elements act on neighbouring modes (j, j+1) as
//   E = R(theta) P_j(omega),  R = [[cos, sin], [-sin, cos]],
// where P_j multiplies mode j by exp(i omega). Elements are applied in time
// order, layer by layer. Layer l = 0 .. d-2 is the cascade over pairs
// (d-2, d-1), (d-3, d-2), ..., (l, l+1). Layer 0 carries no phases (they
// would be exterior); every element of later layers carries one. This gives
// d(d-1)/2 angles and (d-1)(d-2)/2 interior phases. Any unitary equals
// D_L * from_reck(params) * D_R for diagonal phase matrices D_L, D_R.

#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "photodisc/combinatorics.hpp"
#include "photodisc/schur_weyl.hpp"

namespace photodisc {

struct ReckParams {
  std::vector<double> thetas;
  std::vector<double> omegas;

  static std::size_t theta_count(int modes) { return static_cast<std::size_t>(modes * (modes - 1) / 2); }
  static std::size_t omega_count(int modes) { return static_cast<std::size_t>((modes - 1) * (modes - 2) / 2); }
  /// Concatenated (thetas, omegas), the optimizer's coordinates.
  std::vector<double> flatten() const;
  static ReckParams unflatten(const std::vector<double>& flat, int modes);
};

class Interferometer;

/// A block applied to the contiguous modes [offset, offset + block.modes()).
struct NetworkBlock {
  int offset = 0;
  Eigen::MatrixXcd block;
};

class Interferometer {
 public:
  /// Rejects matrices that are not square or not unitary to `tolerance`.
  explicit Interferometer(Eigen::MatrixXcd matrix, double tolerance = 1e-12);
  static Interferometer identity(int modes);

  int modes() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Complex operator()(int row, int col) const { return matrix_(row, col); }

  /// Provenance, carried into JSON output when present.
  std::optional<ReckParams> reck;
  std::vector<NetworkBlock> network;

 private:
  Eigen::MatrixXcd matrix_;
};

Interferometer from_reck(const ReckParams& params, int modes);

struct ReckDecomposition {
  ReckParams params;
  Eigen::VectorXcd left_phases;   // diagonal of D_L
  Eigen::VectorXcd right_phases;  // diagonal of D_R
};
/// U = diag(left) * from_reck(params) * diag(right).
ReckDecomposition reck_decompose(const Eigen::MatrixXcd& unitary);

/// Entry (j, k) = omega^{jk} / sqrt(n), omega = exp(2 pi i / n).
Interferometer qft(int modes);
/// 2x2 R(theta) = [[cos, sin], [-sin, cos]].
Eigen::MatrixXcd beamsplitter(double theta);
/// Blocks embedded at their offsets and applied in list order.
Interferometer layered_network(int modes, const std::vector<NetworkBlock>& blocks);
/// Sends mode k to mode perm[k].
Interferometer mode_permutation(const std::vector<int>& perm);
/// Haar-distributed unitary.
Eigen::MatrixXcd random_unitary(int modes, std::mt19937_64& rng);

/// Row j repeated out_j times, column k repeated in_k times, ascending modes.
Eigen::MatrixXcd occupation_submatrix(const Eigen::MatrixXcd& unitary, const Occupation& in, const Occupation& out);

inline constexpr int kPermanentMaxSize = 20;
/// Ryser formula with Gray-code updates, O(2^n n). n <= kPermanentMaxSize.
Complex permanent(const Eigen::MatrixXcd& m);
double permanent(const Eigen::MatrixXd& m);
/// Sum over all n! permutations; for testing, n <= 10.
Complex permanent_naive(const Eigen::MatrixXcd& m);

struct IrrepBlock {
  Partition shape;
  Eigen::MatrixXcd matrix;
  /// (weight, r) labels of rows and columns, copy p = 1.
  std::vector<BasisLabel> labels;
};

IrrepBlock irrep_block(const Interferometer& u, const Partition& shape, const SchurWeylTransform& transform);

}  // namespace photodisc
