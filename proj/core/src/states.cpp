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

#include <algorithm>
#include <cmath>

#include "format.hpp"
#include "photodisc/error.hpp"
#include "photodisc/optics.hpp"

namespace photodisc {

FockArray::FockArray(Eigen::MatrixXi counts) : counts_(std::move(counts)) {
  if (counts_.rows() < 1 || counts_.cols() < 1) throw InvalidArgument("Fock array must be non-empty");
  if ((counts_.array() < 0).any()) throw InvalidArgument("Fock array entries must be non-negative");
  total_ = counts_.sum();
  if (total_ < 1) throw InvalidArgument("Fock array holds no photons");
}

FockArray FockArray::indistinguishable(int particles) {
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(particles, 1);
  a.col(0).setOnes();
  return FockArray(a);
}

FockArray FockArray::distinguishable(int particles) {
  return FockArray(Eigen::MatrixXi::Identity(particles, particles));
}

FockArray FockArray::singly(int particles, int bad_mode) {
  if (particles < 2 || bad_mode < 0 || bad_mode >= particles) throw InvalidArgument("bad mode out of range");
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(particles, 2);
  a.col(0).setOnes();
  a(bad_mode, 0) = 0;
  a(bad_mode, 1) = 1;
  return FockArray(a);
}

Occupation FockArray::system_occupation() const {
  std::vector<int> rows(static_cast<std::size_t>(counts_.rows()));
  for (Eigen::Index i = 0; i < counts_.rows(); ++i) rows[i] = counts_.row(i).sum();
  return Occupation(rows);
}

Occupation FockArray::label_occupation() const {
  std::vector<int> cols(static_cast<std::size_t>(counts_.cols()));
  for (Eigen::Index j = 0; j < counts_.cols(); ++j) cols[j] = counts_.col(j).sum();
  return Occupation(cols);
}

std::uint64_t FockArray::factorial() const {
  std::uint64_t out = 1;
  for (Eigen::Index i = 0; i < counts_.rows(); ++i) {
    for (Eigen::Index j = 0; j < counts_.cols(); ++j) out *= photodisc::factorial(counts_(i, j));
  }
  return out;
}

void ReducedState::set(const Partition& shape, double weight, Eigen::MatrixXcd block) {
  if (shape.boxes() != particles_) throw DimensionMismatch("shape size differs from photon number");
  const auto dim = static_cast<Eigen::Index>(unitary_dim(shape, modes_));
  if (dim == 0) throw InvalidArgument("shape " + shape.to_string() + " has too many rows for d=" + std::to_string(modes_));
  if (block.rows() != dim || block.cols() != dim) {
    throw DimensionMismatch("block for " + shape.to_string() + " must be " + std::to_string(dim) + "x" +
                            std::to_string(dim));
  }
  if (!(weight >= 0.0)) throw InvalidArgument("irrep weight must be non-negative");
  if ((block - block.adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw InvalidArgument("block for " + shape.to_string() + " is not Hermitian");
  }
  if (std::abs(block.trace() - Complex(1.0)) > 1e-9) {
    throw InvalidArgument("block for " + shape.to_string() + " must have unit trace");
  }
  components_[shape] = Component{weight, std::move(block)};
}

const ReducedState::Component& ReducedState::component(const Partition& shape) const {
  auto it = components_.find(shape);
  if (it == components_.end()) throw InvalidArgument("state has no component " + shape.to_string());
  return it->second;
}

double ReducedState::weight(const Partition& shape) const {
  auto it = components_.find(shape);
  return it == components_.end() ? 0.0 : it->second.weight;
}

std::vector<std::pair<Partition, const ReducedState::Component*>> ReducedState::components() const {
  std::vector<std::pair<Partition, const Component*>> out;
  for (const auto& [shape, c] : components_) out.emplace_back(shape, &c);
  return out;
}

double ReducedState::validation_error() const {
  double err = 0.0;
  double total = 0.0;
  for (const auto& [shape, c] : components_) {
    total += c.weight;
    err = std::max(err, (c.block - c.block.adjoint()).cwiseAbs().maxCoeff());
    err = std::max(err, std::abs(c.block.trace() - 1.0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(c.block, Eigen::EigenvaluesOnly);
    err = std::max(err, std::max(0.0, -eig.eigenvalues().minCoeff()));
  }
  return std::max(err, std::abs(total - 1.0));
}

namespace {

void require_coincident(const SchurWeylTransform& t) {
  if (t.modes() != t.particles()) {
    throw InvalidArgument("named states need a transform with d = N (got N=" + std::to_string(t.particles()) +
                          ", d=" + std::to_string(t.modes()) + ")");
  }
}

Eigen::MatrixXcd coincident_projector(const SchurWeylTransform& t, const Partition& shape) {
  const auto dim = static_cast<Eigen::Index>(unitary_dim(shape, t.modes()));
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t k : t.weight_offsets(shape, Occupation::coincident(t.modes()))) {
    p(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0;
  }
  return p;
}

// Block of (N-1,1) for the bad photon in mode N-1: the r = 1 projector.
Eigen::MatrixXcd last_mode_block(const SchurWeylTransform& t) {
  const Partition shape{t.particles() - 1, 1};
  const auto dim = static_cast<Eigen::Index>(unitary_dim(shape, t.modes()));
  const auto k = static_cast<Eigen::Index>(t.weight_offsets(shape, Occupation::coincident(t.modes())).front());
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(dim, dim);
  b(k, k) = 1.0;
  return b;
}

Eigen::MatrixXcd singly_block(const SchurWeylTransform& t, int bad_mode) {
  Eigen::MatrixXcd b = last_mode_block(t);
  const int last = t.modes() - 1;
  if (bad_mode == last) return b;
  std::vector<int> swap(static_cast<std::size_t>(t.modes()));
  for (int k = 0; k < t.modes(); ++k) swap[k] = k;
  std::swap(swap[bad_mode], swap[last]);
  const Eigen::MatrixXcd p = irrep_block(mode_permutation(swap), Partition{t.particles() - 1, 1}, t).matrix;
  return p * b * p.adjoint();
}

}  // namespace

ReducedState rho_indistinguishable(const SchurWeylTransform& transform) {
  require_coincident(transform);
  const int n = transform.particles();
  ReducedState rho(n, n);
  const Partition sym{n};
  rho.set(sym, 1.0, coincident_projector(transform, sym));
  return rho;
}

ReducedState rho_indistinguishable(const SchurWeylTransform& transform, const Occupation& input) {
  if (input.modes() != transform.modes() || input.total() != transform.particles()) {
    throw DimensionMismatch("input occupation does not fit the transform");
  }
  const Partition sym{transform.particles()};
  const auto dim = static_cast<Eigen::Index>(unitary_dim(sym, transform.modes()));
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(dim, dim);
  const auto k = static_cast<Eigen::Index>(transform.weight_offsets(sym, input).front());
  block(k, k) = 1.0;
  ReducedState rho(transform.particles(), transform.modes());
  rho.set(sym, 1.0, block);
  return rho;
}

ReducedState rho_completely(const SchurWeylTransform& transform) {
  require_coincident(transform);
  const int n = transform.particles();
  const auto total = static_cast<double>(factorial(n));
  ReducedState rho(n, n);
  for (const auto& ir : transform.irreps()) {
    const auto k = static_cast<double>(kostka(ir.shape, Occupation::coincident(n)));
    rho.set(ir.shape, static_cast<double>(ir.sym_dim) * k / total, coincident_projector(transform, ir.shape) / k);
  }
  return rho;
}

ReducedState rho_singly(const SchurWeylTransform& transform, int bad_mode) {
  require_coincident(transform);
  const int n = transform.particles();
  if (n < 2) throw InvalidArgument("singly distinguishable state needs N >= 2");
  if (bad_mode < 0 || bad_mode >= n) throw InvalidArgument("bad mode out of range");
  ReducedState rho(n, n);
  rho.set(Partition{n}, 1.0 / n, coincident_projector(transform, Partition{n}));
  rho.set(Partition{n - 1, 1}, (n - 1.0) / n, singly_block(transform, bad_mode));
  return rho;
}

ReducedState rho_singly(const SchurWeylTransform& transform) {
  return rho_singly(transform, transform.particles() - 1);
}

ReducedState rho_singly_mixed(const SchurWeylTransform& transform) {
  require_coincident(transform);
  const int n = transform.particles();
  if (n < 2) throw InvalidArgument("singly distinguishable state needs N >= 2");
  const Partition shape{n - 1, 1};
  const auto dim = static_cast<Eigen::Index>(unitary_dim(shape, n));
  Eigen::MatrixXcd avg = Eigen::MatrixXcd::Zero(dim, dim);
  for (int b = 0; b < n; ++b) avg += singly_block(transform, b);
  ReducedState rho(n, n);
  rho.set(Partition{n}, 1.0 / n, coincident_projector(transform, Partition{n}));
  rho.set(shape, (n - 1.0) / n, avg / static_cast<double>(n));
  return rho;
}

ReducedState mix(const ReducedState& a, const ReducedState& b, double alpha) {
  if (a.particles() != b.particles() || a.modes() != b.modes()) throw DimensionMismatch("states of different size");
  if (alpha < 0.0 || alpha > 1.0) throw InvalidArgument("mixing weight must lie in [0, 1]");
  std::map<Partition, std::pair<double, Eigen::MatrixXcd>, std::greater<>> acc;
  auto add = [&](const ReducedState& s, double f) {
    for (const auto& [shape, c] : s.components()) {
      auto [it, fresh] = acc.try_emplace(shape, 0.0, Eigen::MatrixXcd::Zero(c->block.rows(), c->block.cols()));
      it->second.first += f * c->weight;
      it->second.second += f * c->weight * c->block;
    }
  };
  add(a, alpha);
  add(b, 1.0 - alpha);
  ReducedState out(a.particles(), a.modes());
  for (auto& [shape, wb] : acc) {
    if (wb.first <= 0.0) continue;
    out.set(shape, wb.first, wb.second / wb.first);
  }
  return out;
}

ReducedState rho_from_fock_array(const FockArray& array, const SchurWeylTransform& system,
                                 const SchurWeylTransform& label) {
  const int n = array.particles();
  if (system.particles() != n || label.particles() != n) throw DimensionMismatch("transform photon number mismatch");
  if (system.modes() != array.system_modes() || label.modes() != array.label_modes()) {
    throw DimensionMismatch("transform mode counts differ from the Fock array shape");
  }

  // Particle list in canonical order; distinct arrangements carry equal amplitude.
  std::vector<std::pair<int, int>> particles;
  for (int s = 0; s < array.system_modes(); ++s) {
    for (int l = 0; l < array.label_modes(); ++l) particles.insert(particles.end(), array.counts()(s, l), {s, l});
  }
  const ProductBasis& sb = system.product_basis();
  const ProductBasis& lb = label.product_basis();
  const int ws = sb.weight_id(array.system_occupation());
  const int wl = lb.weight_id(array.label_occupation());
  const auto& block_s = system.weight_block(ws);
  const auto& block_l = label.weight_block(wl);
  Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(block_s.matrix.cols(), block_l.matrix.cols());
  double count = 0.0;
  do {
    std::size_t x = 0;
    std::size_t y = 0;
    for (int k = 0; k < n; ++k) {
      x += static_cast<std::size_t>(particles[k].first) * sb.stride(k);
      y += static_cast<std::size_t>(particles[k].second) * lb.stride(k);
    }
    psi(static_cast<Eigen::Index>(sb.local_index(x)), static_cast<Eigen::Index>(lb.local_index(y))) += 1.0;
    count += 1.0;
  } while (std::next_permutation(particles.begin(), particles.end()));
  psi /= std::sqrt(count);

  const Eigen::MatrixXcd sw = block_s.matrix * psi * block_l.matrix.transpose();

  // Pairing structure: only (lambda, p) x (lambda, p) entries, identical across p.
  double residual = 0.0;
  Eigen::MatrixXd unpaired = sw.cwiseAbs2();
  std::map<Partition, std::vector<Eigen::MatrixXcd>, std::greater<>> copies;
  const Occupation sys_weight = array.system_occupation();
  const Occupation lab_weight = array.label_occupation();
  for (const auto& ir : system.irreps()) {
    const std::size_t ks = kostka(ir.shape, sys_weight);
    if (ks == 0) continue;
    const std::size_t kl = label.has_irrep(ir.shape) ? kostka(ir.shape, lab_weight) : 0;
    if (kl == 0) continue;
    auto& list = copies[ir.shape];
    for (int p = 1; p <= static_cast<int>(ir.sym_dim); ++p) {
      Eigen::MatrixXcd c(static_cast<Eigen::Index>(ks), static_cast<Eigen::Index>(kl));
      for (std::size_t r = 0; r < ks; ++r) {
        for (std::size_t q = 0; q < kl; ++q) {
          const std::size_t rs = system.row_of({ir.shape, p, sys_weight, static_cast<int>(r) + 1});
          const std::size_t rl = label.row_of({ir.shape, p, lab_weight, static_cast<int>(q) + 1});
          const auto is = std::lower_bound(block_s.rows.begin(), block_s.rows.end(), rs) - block_s.rows.begin();
          const auto il = std::lower_bound(block_l.rows.begin(), block_l.rows.end(), rl) - block_l.rows.begin();
          c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(q)) = sw(is, il);
          unpaired(is, il) = 0.0;
        }
      }
      list.push_back(std::move(c));
    }
  }
  for (const auto& [shape, list] : copies) {
    for (const auto& c : list) residual = std::max(residual, (c - list.front()).cwiseAbs().maxCoeff());
  }
  residual = std::max(residual, std::sqrt(unpaired.sum()));
  if (residual > 1e-9) {
    throw InternalConsistency("symmetric System-Label state violates the irrep pairing by " +
                              detail::sci(residual));
  }

  ReducedState rho(n, system.modes());
  for (const auto& [shape, list] : copies) {
    const Eigen::MatrixXcd small = list.front() * list.front().adjoint();
    const double w = static_cast<double>(list.size()) * small.trace().real();
    if (w <= 1e-14) continue;
    const auto dim = static_cast<Eigen::Index>(unitary_dim(shape, system.modes()));
    const auto offsets = system.weight_offsets(shape, sys_weight);
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t a = 0; a < offsets.size(); ++a) {
      for (std::size_t b = 0; b < offsets.size(); ++b) {
        block(static_cast<Eigen::Index>(offsets[a]), static_cast<Eigen::Index>(offsets[b])) =
            small(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      }
    }
    rho.set(shape, w, block / small.trace().real());
  }
  return rho;
}

double symmetric_weight(const Occupation& label_occupation) {
  return static_cast<double>(label_occupation.factorial()) / static_cast<double>(factorial(label_occupation.total()));
}

}  // namespace photodisc
