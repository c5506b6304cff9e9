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

// Reduced System states in the Schur-Weyl basis.
//
// A ReducedState stores, for each irrep lambda, a weight w and a trace-one
// block B in the coordinates of copy p = 1. The full operator is
//   rho = sum_lambda w_lambda * B_lambda (x) (1 / d_(lambda)) 1_p,
// i.e. maximally mixed over outer copies, which is what tracing out the
// Label of any symmetric System-Label state produces.
//
// Mode indices are 0-based; the default bad mode is the last one.

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "photodisc/combinatorics.hpp"
#include "photodisc/schur_weyl.hpp"

namespace photodisc {

/// Photon counts indexed by (System mode, Label mode).
class FockArray {
 public:
  explicit FockArray(Eigen::MatrixXi counts);

  /// One photon per System mode, all in Label mode 0.
  static FockArray indistinguishable(int particles);
  /// One photon per System mode, each in its own Label mode.
  static FockArray distinguishable(int particles);
  /// One photon per System mode; the photon in `bad_mode` carries Label 1.
  static FockArray singly(int particles, int bad_mode);

  const Eigen::MatrixXi& counts() const { return counts_; }
  int system_modes() const { return static_cast<int>(counts_.rows()); }
  int label_modes() const { return static_cast<int>(counts_.cols()); }
  int particles() const { return total_; }
  Occupation system_occupation() const;
  Occupation label_occupation() const;
  /// Product of entry factorials.
  std::uint64_t factorial() const;

 private:
  Eigen::MatrixXi counts_;
  int total_ = 0;
};

class ReducedState {
 public:
  struct Component {
    double weight = 0.0;
    Eigen::MatrixXcd block;
  };

  ReducedState(int particles, int modes) : particles_(particles), modes_(modes) {}

  int particles() const { return particles_; }
  int modes() const { return modes_; }

  /// Adds or replaces an irrep component; rejects malformed blocks.
  void set(const Partition& shape, double weight, Eigen::MatrixXcd block);
  bool has(const Partition& shape) const { return components_.count(shape) > 0; }
  const Component& component(const Partition& shape) const;
  double weight(const Partition& shape) const;
  /// Components in canonical (lexicographically decreasing) partition order.
  std::vector<std::pair<Partition, const Component*>> components() const;

  /// Max violation of: Hermitian blocks, PSD, unit trace, weights summing to 1.
  double validation_error() const;

 private:
  int particles_;
  int modes_;
  std::map<Partition, Component, std::greater<>> components_;
};

ReducedState rho_indistinguishable(const SchurWeylTransform& transform);
/// Indistinguishable photons entering with System occupation `input`.
ReducedState rho_indistinguishable(const SchurWeylTransform& transform, const Occupation& input);
ReducedState rho_completely(const SchurWeylTransform& transform);
ReducedState rho_singly(const SchurWeylTransform& transform, int bad_mode);
ReducedState rho_singly(const SchurWeylTransform& transform);
ReducedState rho_singly_mixed(const SchurWeylTransform& transform);
/// alpha * a + (1 - alpha) * b.
ReducedState mix(const ReducedState& a, const ReducedState& b, double alpha);

/// Symmetrises the System-Label state of the array and traces out the Label.
/// `system` and `label` must be built for (N, d_S) and (N, d_L).
ReducedState rho_from_fock_array(const FockArray& array, const SchurWeylTransform& system,
                                 const SchurWeylTransform& label);

/// n_L! / N!, the symmetric-irrep weight of a coincident array with Label
/// occupation n_L.
double symmetric_weight(const Occupation& label_occupation);

}  // namespace photodisc
