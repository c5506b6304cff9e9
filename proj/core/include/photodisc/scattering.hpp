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

// Photon-counting probabilities Tr[rho M_n(U)].
//
// The irrep pathway sums, for each irrep, w * diag(U^lambda B U^lambda^dag)
// over the rows of weight n. The oracle works in second quantisation on the
// System x Label modes and never touches the Schur-Weyl transform.

#include <vector>

#include "photodisc/combinatorics.hpp"
#include "photodisc/optics.hpp"
#include "photodisc/schur_weyl.hpp"
#include "photodisc/states.hpp"

namespace photodisc {

struct OutcomeProbability {
  Occupation outcome;
  double total = 0.0;
  /// Canonical partition order; only irreps present in the state.
  std::vector<std::pair<Partition, double>> per_irrep;
};

/// All occupations of N photons in d modes, canonical order.
std::vector<Occupation> enumerate_outcomes(int particles, int modes, bool exclude_bunched);

/// Probabilities of every outcome (bunched included), canonical order.
std::vector<OutcomeProbability> outcome_table(const ReducedState& rho, const Interferometer& u,
                                              const SchurWeylTransform& transform);

OutcomeProbability outcome_probability(const ReducedState& rho, const Interferometer& u, const Occupation& outcome,
                                       const SchurWeylTransform& transform);

/// Second-quantised probability of System outcome n for the array A:
/// sum over output arrays B with row sums n and the Label marginals of A of
/// |per(W_A^B)|^2 / (A! B!), W = U (x) 1.
double outcome_probability_oracle(const FockArray& array, const Interferometer& u, const Occupation& outcome);

/// per(|U_in^out|^2) / out!, the distinguishable-particle probability.
double classical_probability(const Interferometer& u, const Occupation& in, const Occupation& out);

/// |per(U_in^out)|^2 / (in! out!), all photons indistinguishable.
double indistinguishable_probability(const Interferometer& u, const Occupation& in, const Occupation& out);

/// Coincident input where the photon entering bad_mode (0-based) is
/// distinguishable from the others: sum_j |U_j,bad|^2 P_{N-1}(out - e_j).
double singly_probability(const Interferometer& u, int bad_mode, const Occupation& out);

/// Clips rounding noise: values in [-1e-12, 0) become 0, anything below
/// raises InternalConsistency.
double clip_probability(double p);

}  // namespace photodisc
