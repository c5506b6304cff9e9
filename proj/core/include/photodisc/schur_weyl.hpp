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

// Schur-Weyl change of basis for N qudits of dimension d.
//
// Rows of the transform are labelled |shape, p, weight, r>:
//   shape  - Young diagram labelling the paired U(d) and S_N irreps
//   p      - outer multiplicity (copy of the U(d) irrep), 1..sym_dim(shape)
//   weight - occupation of the weight vector
//   r      - inner multiplicity within the weight space, 1..kostka(shape, weight)
// Rows are ordered by shape (canonical partition order), then p, then weight
// (canonical occupation order), then r. Every row is supported on product
// states of its own weight, so the transform is stored as one dense square
// block per weight.
//
// For d == N the r = 1 vector of shape (N-1,1) at the coincident weight is
// the component of the state whose single distinguishable photon sits in the
// last mode.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "photodisc/combinatorics.hpp"

namespace photodisc {

using Complex = std::complex<double>;

struct BasisLabel {
  Partition shape;
  int outer = 1;
  Occupation weight;
  int inner = 1;

  std::string to_string() const;
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// Product basis of N qudits: index = sum_k mode_k * d^(N-1-k).
class ProductBasis {
 public:
  ProductBasis() = default;
  ProductBasis(int particles, int modes);

  int particles() const { return particles_; }
  int modes() const { return modes_; }
  std::size_t size() const { return size_; }
  std::size_t stride(int particle) const { return strides_[particle]; }
  int mode_of(std::size_t index, int particle) const {
    return static_cast<int>((index / strides_[particle]) % modes_);
  }

  /// Weights in canonical order.
  const std::vector<Occupation>& weights() const { return weights_; }
  int weight_id(const Occupation& w) const;
  int weight_id_of(std::size_t index) const { return weight_of_[index]; }
  std::size_t local_index(std::size_t index) const { return local_[index]; }
  /// Product states of a weight, ascending global index.
  const std::vector<std::size_t>& states(int weight_id) const { return states_[weight_id]; }

 private:
  int particles_ = 0;
  int modes_ = 0;
  std::size_t size_ = 0;
  std::vector<std::size_t> strides_;
  std::vector<Occupation> weights_;
  std::map<Occupation, int> weight_ids_;
  std::vector<int> weight_of_;
  std::vector<std::size_t> local_;
  std::vector<std::vector<std::size_t>> states_;
};

struct BuildOptions {
  /// Largest d^N the dense-per-weight builder accepts.
  std::size_t max_product_dim = 300000;
  /// Residual norm (relative to the candidate) below which a lowered vector
  /// counts as dependent.
  double independence_cutoff = 1e-10;
  /// Unitarity tolerance checked before a transform is returned.
  double orthonormality_tolerance = 1e-12;
};

class SchurWeylTransform {
 public:
  /// Rows of one weight: global row indices (ascending) and the matrix
  /// mapping product states of that weight (ProductBasis::states order)
  /// onto those rows.
  struct WeightBlock {
    std::vector<std::size_t> rows;
    Eigen::MatrixXcd matrix;
  };

  /// Contiguous run of rows of one copy of an irrep that share a weight.
  struct Segment {
    int weight_id = 0;
    std::size_t copy_offset = 0;  // position within the copy
    std::size_t block_row = 0;    // position within the weight block
    std::size_t count = 0;
  };

  struct Irrep {
    Partition shape;
    std::size_t unitary_dim = 0;
    std::size_t sym_dim = 0;
    std::size_t first_row = 0;
    /// segments[p-1] covers copy p.
    std::vector<std::vector<Segment>> segments;

    std::size_t row(int outer, std::size_t copy_offset) const {
      return first_row + static_cast<std::size_t>(outer - 1) * unitary_dim + copy_offset;
    }
  };

  SchurWeylTransform() = default;
  /// Assembles a transform from labels and weight blocks (used by the builder
  /// and the cache loader). Validates the label table against combinatorics.
  SchurWeylTransform(int particles, int modes, std::vector<BasisLabel> labels,
                     std::vector<WeightBlock> blocks);

  int particles() const { return basis_.particles(); }
  int modes() const { return basis_.modes(); }
  std::size_t dim() const { return labels_.size(); }
  const ProductBasis& product_basis() const { return basis_; }
  const std::vector<BasisLabel>& labels() const { return labels_; }
  const BasisLabel& label(std::size_t row) const { return labels_[row]; }
  std::size_t row_of(const BasisLabel& label) const;

  const std::vector<Irrep>& irreps() const { return irreps_; }
  const Irrep& irrep(const Partition& shape) const;
  bool has_irrep(const Partition& shape) const;
  /// Labels of copy p = 1 of an irrep in copy order: (weight, r).
  std::vector<BasisLabel> copy_labels(const Partition& shape) const;
  /// Copy offsets (within copy p = 1) of rows with the given weight.
  std::vector<std::size_t> weight_offsets(const Partition& shape, const Occupation& weight) const;

  const std::vector<WeightBlock>& weight_blocks() const { return blocks_; }
  const WeightBlock& weight_block(int weight_id) const { return blocks_[weight_id]; }

  /// The Schur-Weyl basis vector of a row, expanded in the product basis.
  Eigen::VectorXcd basis_vector(std::size_t row) const;
  /// Full d^N x d^N matrix; refuses above 4096 rows.
  Eigen::MatrixXcd dense() const;
  /// T v for a product-basis vector v.
  Eigen::VectorXcd apply(const Eigen::VectorXcd& product_vector) const;
  /// Components of a product-basis vector on copy p of an irrep.
  Eigen::VectorXcd project_copy(const Eigen::VectorXcd& product_vector, const Partition& shape,
                                int outer = 1) const;

  /// Columns of the irrep matrix U^shape (copy p = 1 coordinates).
  /// An empty column list means all columns.
  Eigen::MatrixXcd irrep_columns(const Eigen::MatrixXcd& unitary, const Partition& shape,
                                 std::span<const std::size_t> columns = {}) const;

 private:
  ProductBasis basis_;
  std::vector<BasisLabel> labels_;
  std::vector<WeightBlock> blocks_;
  std::vector<Irrep> irreps_;
  std::vector<int> row_weight_;
  std::vector<std::size_t> row_position_;
};

/// Builds the transform by highest-weight construction and lowering.
SchurWeylTransform build_transform(int particles, int modes, const BuildOptions& options = {});

/// (U^{\otimes N}) v, applying U to each particle in turn.
Eigen::VectorXcd apply_tensor_power(const Eigen::MatrixXcd& unitary, const Eigen::VectorXcd& v,
                                    int particles);

struct VerificationReport {
  double unitarity = 0.0;          // max |T T^dag - I|
  double weight_preservation = 0.0;
  double off_block_mass = 0.0;     // Frobenius norm outside shape x copy blocks
  double copy_disagreement = 0.0;  // max entry difference between copies
  bool ok(double tolerance) const {
    return unitarity <= tolerance && weight_preservation <= tolerance &&
           off_block_mass <= tolerance && copy_disagreement <= tolerance;
  }
};

/// Checks unitarity, weight preservation and the block structure of
/// T U^{\otimes N} T^dag for the given single-particle unitary.
VerificationReport verify_transform(const SchurWeylTransform& transform, const Eigen::MatrixXcd& unitary);

}  // namespace photodisc
