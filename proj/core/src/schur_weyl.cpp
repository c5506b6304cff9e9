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


#include "photodisc/schur_weyl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "format.hpp"
#include "photodisc/error.hpp"

namespace photodisc {

std::string BasisLabel::to_string() const {
  std::ostringstream out;
  out << '|' << shape.to_string() << ", p=" << outer << ", " << weight.to_string() << ", r=" << inner << '>';
  return out.str();
}

ProductBasis::ProductBasis(int particles, int modes) : particles_(particles), modes_(modes) {
  if (particles < 1 || modes < 1) throw InvalidArgument("product basis needs N >= 1 and d >= 1");
  size_ = 1;
  strides_.assign(particles, 1);
  for (int k = particles - 1; k >= 0; --k) {
    strides_[k] = size_;
    size_ *= static_cast<std::size_t>(modes);
  }
  weights_ = enumerate_occupations(particles, modes);
  for (std::size_t w = 0; w < weights_.size(); ++w) weight_ids_.emplace(weights_[w], static_cast<int>(w));
  weight_of_.resize(size_);
  local_.resize(size_);
  states_.assign(weights_.size(), {});
  std::vector<int> counts(modes);
  for (std::size_t x = 0; x < size_; ++x) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int k = 0; k < particles; ++k) ++counts[mode_of(x, k)];
    const int w = weight_ids_.at(Occupation(counts));
    weight_of_[x] = w;
    local_[x] = states_[w].size();
    states_[w].push_back(x);
  }
}

int ProductBasis::weight_id(const Occupation& w) const {
  auto it = weight_ids_.find(w);
  if (it == weight_ids_.end()) throw InvalidArgument("weight " + w.to_string() + " not in product basis");
  return it->second;
}

SchurWeylTransform::SchurWeylTransform(int particles, int modes, std::vector<BasisLabel> labels,
                                       std::vector<WeightBlock> blocks)
    : basis_(particles, modes), labels_(std::move(labels)), blocks_(std::move(blocks)) {
  if (labels_.size() != basis_.size()) throw DimensionMismatch("label table does not cover d^N rows");
  if (blocks_.size() != basis_.weights().size()) throw DimensionMismatch("one weight block per weight expected");
  row_weight_.assign(labels_.size(), -1);
  row_position_.assign(labels_.size(), 0);
  for (std::size_t w = 0; w < blocks_.size(); ++w) {
    const auto& block = blocks_[w];
    const std::size_t n = basis_.states(static_cast<int>(w)).size();
    if (block.rows.size() != n || static_cast<std::size_t>(block.matrix.rows()) != n ||
        static_cast<std::size_t>(block.matrix.cols()) != n) {
      throw DimensionMismatch("weight block " + basis_.weights()[w].to_string() + " is not square");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t row = block.rows[i];
      if (row >= labels_.size() || row_weight_[row] != -1) throw InvalidArgument("weight blocks overlap");
      if (i > 0 && row <= block.rows[i - 1]) throw InvalidArgument("weight block rows must ascend");
      if (labels_[row].weight != basis_.weights()[w]) throw InvalidArgument("row weight disagrees with its block");
      row_weight_[row] = static_cast<int>(w);
      row_position_[row] = i;
    }
  }

  std::size_t row = 0;
  while (row < labels_.size()) {
    Irrep ir;
    ir.shape = labels_[row].shape;
    ir.first_row = row;
    std::size_t end = row;
    while (end < labels_.size() && labels_[end].shape == ir.shape) ++end;
    ir.sym_dim = static_cast<std::size_t>(labels_[end - 1].outer);
    if (ir.sym_dim == 0 || (end - row) % ir.sym_dim != 0) throw InvalidArgument("inconsistent outer labels");
    ir.unitary_dim = (end - row) / ir.sym_dim;
    if (ir.sym_dim != sym_dim(ir.shape) || ir.unitary_dim != unitary_dim(ir.shape, modes)) {
      throw InvalidArgument("irrep " + ir.shape.to_string() + " has wrong dimensions");
    }
    ir.segments.resize(ir.sym_dim);
    for (std::size_t p = 0; p < ir.sym_dim; ++p) {
      for (std::size_t k = 0; k < ir.unitary_dim; ++k) {
        const std::size_t r = ir.first_row + p * ir.unitary_dim + k;
        const BasisLabel& lab = labels_[r];
        if (lab.outer != static_cast<int>(p) + 1) throw InvalidArgument("outer labels out of order");
        auto& segs = ir.segments[p];
        if (!segs.empty() && segs.back().weight_id == row_weight_[r]) {
          if (row_position_[r] != segs.back().block_row + segs.back().count) {
            throw InvalidArgument("copy rows of one weight are not contiguous");
          }
          ++segs.back().count;
        } else {
          segs.push_back(Segment{row_weight_[r], k, row_position_[r], 1});
        }
        const std::size_t expected_r = k - segs.back().copy_offset + 1;
        if (static_cast<std::size_t>(lab.inner) != expected_r) throw InvalidArgument("inner labels out of order");
      }
    }
    irreps_.push_back(std::move(ir));
    row = end;
  }
}

const SchurWeylTransform::Irrep& SchurWeylTransform::irrep(const Partition& shape) const {
  for (const auto& ir : irreps_) {
    if (ir.shape == shape) return ir;
  }
  throw InvalidArgument("irrep " + shape.to_string() + " not present for N=" + std::to_string(particles()) +
                        ", d=" + std::to_string(modes()));
}

bool SchurWeylTransform::has_irrep(const Partition& shape) const {
  return std::any_of(irreps_.begin(), irreps_.end(), [&](const Irrep& ir) { return ir.shape == shape; });
}

std::size_t SchurWeylTransform::row_of(const BasisLabel& label) const {
  const Irrep& ir = irrep(label.shape);
  if (label.outer < 1 || static_cast<std::size_t>(label.outer) > ir.sym_dim) {
    throw InvalidArgument("outer label out of range: " + label.to_string());
  }
  const int w = basis_.weight_id(label.weight);
  for (const auto& seg : ir.segments[label.outer - 1]) {
    if (seg.weight_id == w) {
      if (label.inner < 1 || static_cast<std::size_t>(label.inner) > seg.count) break;
      return ir.row(label.outer, seg.copy_offset + static_cast<std::size_t>(label.inner) - 1);
    }
  }
  throw InvalidArgument("no basis vector " + label.to_string());
}

std::vector<BasisLabel> SchurWeylTransform::copy_labels(const Partition& shape) const {
  const Irrep& ir = irrep(shape);
  return {labels_.begin() + static_cast<std::ptrdiff_t>(ir.first_row),
          labels_.begin() + static_cast<std::ptrdiff_t>(ir.first_row + ir.unitary_dim)};
}

std::vector<std::size_t> SchurWeylTransform::weight_offsets(const Partition& shape, const Occupation& weight) const {
  const Irrep& ir = irrep(shape);
  const int w = basis_.weight_id(weight);
  std::vector<std::size_t> out;
  for (const auto& seg : ir.segments[0]) {
    if (seg.weight_id != w) continue;
    for (std::size_t k = 0; k < seg.count; ++k) out.push_back(seg.copy_offset + k);
  }
  return out;
}

Eigen::VectorXcd SchurWeylTransform::basis_vector(std::size_t row) const {
  if (row >= dim()) throw InvalidArgument("row out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis_.size()));
  const int w = row_weight_[row];
  const auto& states = basis_.states(w);
  const auto& block = blocks_[w];
  for (std::size_t j = 0; j < states.size(); ++j) {
    v[static_cast<Eigen::Index>(states[j])] = std::conj(block.matrix(static_cast<Eigen::Index>(row_position_[row]),
                                                                   static_cast<Eigen::Index>(j)));
  }
  return v;
}

Eigen::MatrixXcd SchurWeylTransform::dense() const {
  if (dim() > 4096) throw BudgetExceeded("dense transform above 4096 rows");
  const auto n = static_cast<Eigen::Index>(dim());
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t w = 0; w < blocks_.size(); ++w) {
    const auto& states = basis_.states(static_cast<int>(w));
    const auto& block = blocks_[w];
    for (std::size_t i = 0; i < block.rows.size(); ++i) {
      for (std::size_t j = 0; j < states.size(); ++j) {
        t(static_cast<Eigen::Index>(block.rows[i]), static_cast<Eigen::Index>(states[j])) =
            block.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  return t;
}

namespace {

Eigen::VectorXcd gather(const Eigen::VectorXcd& v, const std::vector<std::size_t>& states) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(states.size()));
  for (std::size_t j = 0; j < states.size(); ++j) out[static_cast<Eigen::Index>(j)] = v[static_cast<Eigen::Index>(states[j])];
  return out;
}

}  // namespace

Eigen::VectorXcd SchurWeylTransform::apply(const Eigen::VectorXcd& product_vector) const {
  if (static_cast<std::size_t>(product_vector.size()) != basis_.size()) throw DimensionMismatch("vector length is not d^N");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(product_vector.size());
  for (std::size_t w = 0; w < blocks_.size(); ++w) {
    const Eigen::VectorXcd local = blocks_[w].matrix * gather(product_vector, basis_.states(static_cast<int>(w)));
    for (std::size_t i = 0; i < blocks_[w].rows.size(); ++i) {
      out[static_cast<Eigen::Index>(blocks_[w].rows[i])] = local[static_cast<Eigen::Index>(i)];
    }
  }
  return out;
}

Eigen::VectorXcd SchurWeylTransform::project_copy(const Eigen::VectorXcd& product_vector, const Partition& shape,
                                                  int outer) const {
  const Irrep& ir = irrep(shape);
  if (outer < 1 || static_cast<std::size_t>(outer) > ir.sym_dim) throw InvalidArgument("outer label out of range");
  Eigen::VectorXcd out(static_cast<Eigen::Index>(ir.unitary_dim));
  for (const auto& seg : ir.segments[outer - 1]) {
    const auto& block = blocks_[seg.weight_id];
    out.segment(static_cast<Eigen::Index>(seg.copy_offset), static_cast<Eigen::Index>(seg.count)) =
        block.matrix.middleRows(static_cast<Eigen::Index>(seg.block_row), static_cast<Eigen::Index>(seg.count)) *
        gather(product_vector, basis_.states(seg.weight_id));
  }
  return out;
}

Eigen::MatrixXcd SchurWeylTransform::irrep_columns(const Eigen::MatrixXcd& unitary, const Partition& shape,
                                                   std::span<const std::size_t> columns) const {
  if (unitary.rows() != modes() || unitary.cols() != modes()) throw DimensionMismatch("unitary size differs from d");
  const Irrep& ir = irrep(shape);
  std::vector<std::size_t> all;
  if (columns.empty()) {
    all.resize(ir.unitary_dim);
    std::iota(all.begin(), all.end(), std::size_t{0});
    columns = all;
  }
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(ir.unitary_dim), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] >= ir.unitary_dim) throw InvalidArgument("irrep column out of range");
    const Eigen::VectorXcd evolved = apply_tensor_power(unitary, basis_vector(ir.row(1, columns[c])), particles());
    out.col(static_cast<Eigen::Index>(c)) = project_copy(evolved, shape, 1);
  }
  return out;
}

Eigen::VectorXcd apply_tensor_power(const Eigen::MatrixXcd& unitary, const Eigen::VectorXcd& v, int particles) {
  const auto d = static_cast<std::size_t>(unitary.rows());
  std::size_t size = 1;
  for (int k = 0; k < particles; ++k) size *= d;
  if (static_cast<std::size_t>(v.size()) != size) throw DimensionMismatch("vector length is not d^N");
  Eigen::VectorXcd out = v;
  std::vector<Complex> gathered(d);
  std::size_t stride = size;
  for (int k = 0; k < particles; ++k) {
    stride /= d;
    const std::size_t span = stride * d;
    for (std::size_t base = 0; base < size; base += span) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        bool nonzero = false;
        for (std::size_t m = 0; m < d; ++m) {
          gathered[m] = out[static_cast<Eigen::Index>(base + inner + m * stride)];
          nonzero = nonzero || gathered[m] != Complex{};
        }
        if (!nonzero) continue;
        for (std::size_t m = 0; m < d; ++m) {
          Complex acc{};
          for (std::size_t m2 = 0; m2 < d; ++m2) {
            acc += unitary(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m2)) * gathered[m2];
          }
          out[static_cast<Eigen::Index>(base + inner + m * stride)] = acc;
        }
      }
    }
  }
  return out;
}

namespace {

// A vector living in a single weight space, in ProductBasis::states order.
struct WeightVector {
  int weight_id = -1;
  Eigen::VectorXcd amplitudes;
};

// E_{j+1,j}: moves one particle from mode j to mode j+1, summed over particles.
WeightVector lower(const ProductBasis& basis, const WeightVector& in, int j) {
  const Occupation& w = basis.weights()[in.weight_id];
  std::vector<int> counts = w.counts();
  --counts[j];
  ++counts[j + 1];
  WeightVector out;
  out.weight_id = basis.weight_id(Occupation(counts));
  out.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.states(out.weight_id).size()));
  const auto& states = basis.states(in.weight_id);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Complex a = in.amplitudes[static_cast<Eigen::Index>(i)];
    if (a == Complex{}) continue;
    for (int k = 0; k < basis.particles(); ++k) {
      if (basis.mode_of(states[i], k) != j) continue;
      const std::size_t target = states[i] + basis.stride(k);
      out.amplitudes[static_cast<Eigen::Index>(basis.local_index(target))] += a;
    }
  }
  return out;
}

// Antisymmetrised column filling of a standard tableau: the particle in row i
// occupies mode i, antisymmetrised within each column.
WeightVector highest_weight_vector(const ProductBasis& basis, const Tableau& syt) {
  const Partition& shape = syt.shape;
  std::vector<std::vector<int>> columns;
  for (int j = 0; j < shape[0]; ++j) {
    std::vector<int> column;
    for (int i = 0; i < shape.column_length(j); ++i) column.push_back(syt.rows[i][j] - 1);
    columns.push_back(std::move(column));
  }

  std::vector<int> padded(basis.modes(), 0);
  for (int i = 0; i < shape.length(); ++i) padded[i] = shape[i];
  WeightVector out;
  out.weight_id = basis.weight_id(Occupation(padded));
  out.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.states(out.weight_id).size()));

  std::vector<int> modes(basis.particles(), 0);
  auto rec = [&](auto&& self, std::size_t col, double sign) -> void {
    if (col == columns.size()) {
      std::size_t index = 0;
      for (int k = 0; k < basis.particles(); ++k) index += static_cast<std::size_t>(modes[k]) * basis.stride(k);
      out.amplitudes[static_cast<Eigen::Index>(basis.local_index(index))] += sign;
      return;
    }
    const auto& column = columns[col];
    std::vector<int> perm(column.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      int inversions = 0;
      for (std::size_t a = 0; a < perm.size(); ++a) {
        for (std::size_t b = a + 1; b < perm.size(); ++b) inversions += perm[a] > perm[b];
      }
      for (std::size_t a = 0; a < column.size(); ++a) modes[column[a]] = perm[a];
      self(self, col + 1, (inversions % 2) ? -sign : sign);
    } while (std::next_permutation(perm.begin(), perm.end()));
  };
  rec(rec, 0, 1.0);
  return out;
}

// How one lowered vector was orthonormalised; replayed verbatim on every copy
// so that all copies carry identical representation matrices.
struct Step {
  std::size_t source = 0;
  int lowering = 0;
  std::vector<std::pair<std::size_t, Complex>> projections;
  double norm = 1.0;
};

struct IrrepCopy {
  std::vector<WeightVector> vectors;  // acceptance order, vectors[0] is the highest weight
};

IrrepCopy replay(const ProductBasis& basis, const WeightVector& highest, const std::vector<Step>& steps) {
  IrrepCopy copy;
  copy.vectors.reserve(steps.size() + 1);
  copy.vectors.push_back(highest);
  for (const Step& s : steps) {
    WeightVector v = lower(basis, copy.vectors[s.source], s.lowering);
    for (const auto& [m, c] : s.projections) v.amplitudes -= c * copy.vectors[m].amplitudes;
    v.amplitudes /= s.norm;
    copy.vectors.push_back(std::move(v));
  }
  return copy;
}

}  // namespace

SchurWeylTransform build_transform(int particles, int modes, const BuildOptions& options) {
  if (particles < 1) throw InvalidArgument("build_transform needs N >= 1");
  if (modes < 1) throw InvalidArgument("build_transform needs d >= 1");
  double product_dim = std::pow(static_cast<double>(modes), particles);
  if (product_dim > static_cast<double>(options.max_product_dim)) {
    throw BudgetExceeded("d^N = " + std::to_string(static_cast<long long>(product_dim)) + " exceeds the cap of " +
                         std::to_string(options.max_product_dim));
  }
  const ProductBasis basis(particles, modes);
  const auto& weights = basis.weights();

  struct Built {
    Partition shape;
    std::vector<IrrepCopy> copies;
  };
  std::vector<Built> built;

  for (const Partition& shape : enumerate_partitions(particles, modes)) {
    // Outer copies: orthonormalised highest weight vectors, one per standard tableau.
    std::vector<WeightVector> highest;
    for (const Tableau& syt : enumerate_syt(shape)) {
      WeightVector v = highest_weight_vector(basis, syt);
      const double raw = v.amplitudes.norm();
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& h : highest) v.amplitudes -= h.amplitudes.dot(v.amplitudes) * h.amplitudes;
      }
      const double residual = v.amplitudes.norm();
      if (residual < options.independence_cutoff * raw) {
        throw NumericDegeneracy("dependent highest weight vector for " + shape.to_string());
      }
      v.amplitudes /= residual;
      highest.push_back(std::move(v));
    }

    // Lower the first copy, recording every Gram-Schmidt step.
    std::vector<std::uint64_t> needed(weights.size());
    for (std::size_t w = 0; w < weights.size(); ++w) needed[w] = kostka(shape, weights[w]);
    std::vector<std::vector<std::size_t>> members(weights.size());
    IrrepCopy first;
    first.vectors.push_back(highest[0]);
    members[highest[0].weight_id].push_back(0);
    std::vector<Step> steps;
    for (std::size_t q = 0; q < first.vectors.size(); ++q) {
      for (int j = 0; j + 1 < modes; ++j) {
        if (weights[first.vectors[q].weight_id][j] == 0) continue;
        WeightVector cand = lower(basis, first.vectors[q], j);
        auto& slot = members[cand.weight_id];
        if (slot.size() >= needed[cand.weight_id]) continue;
        const double raw = cand.amplitudes.norm();
        if (raw < options.independence_cutoff) continue;
        Step step{q, j, {}, 1.0};
        std::vector<Complex> coeffs(slot.size(), Complex{});
        for (int pass = 0; pass < 2; ++pass) {
          for (std::size_t m = 0; m < slot.size(); ++m) {
            const Complex c = first.vectors[slot[m]].amplitudes.dot(cand.amplitudes);
            cand.amplitudes -= c * first.vectors[slot[m]].amplitudes;
            coeffs[m] += c;
          }
        }
        const double residual = cand.amplitudes.norm();
        if (residual < options.independence_cutoff * raw) continue;
        cand.amplitudes /= residual;
        for (std::size_t m = 0; m < slot.size(); ++m) step.projections.emplace_back(slot[m], coeffs[m]);
        step.norm = residual;
        slot.push_back(first.vectors.size());
        first.vectors.push_back(std::move(cand));
        steps.push_back(std::move(step));
      }
    }
    for (std::size_t w = 0; w < weights.size(); ++w) {
      if (members[w].size() != needed[w]) {
        throw NumericDegeneracy("lowering spanned " + std::to_string(members[w].size()) + " of " +
                                std::to_string(needed[w]) + " vectors of weight " + weights[w].to_string() +
                                " in irrep " + shape.to_string());
      }
    }

    Built b{shape, {}};
    b.copies.push_back(std::move(first));
    for (std::size_t p = 1; p < highest.size(); ++p) b.copies.push_back(replay(basis, highest[p], steps));

    // Reorder each copy by (weight, acceptance order).
    for (auto& copy : b.copies) {
      IrrepCopy ordered;
      for (std::size_t w = 0; w < weights.size(); ++w) {
        for (std::size_t m : members[w]) ordered.vectors.push_back(copy.vectors[m]);
      }
      copy = std::move(ordered);
    }

    // Align r = 1 of (N-1,1) at the coincident weight with a distinguishable
    // photon in the last mode.
    if (modes == particles && particles >= 2 && shape == Partition{particles - 1, 1}) {
      const int w1 = basis.weight_id(Occupation::coincident(modes));
      const auto& states = basis.states(w1);
      std::size_t offset = 0;
      for (int w = 0; w < w1; ++w) offset += needed[w];
      const auto k = static_cast<Eigen::Index>(needed[w1]);
      Eigen::MatrixXcd rows(k, static_cast<Eigen::Index>(states.size()));
      for (Eigen::Index r = 0; r < k; ++r) {
        rows.row(r) = b.copies[0].vectors[offset + static_cast<std::size_t>(r)].amplitudes.adjoint();
      }
      const double amp = 1.0 / std::sqrt(static_cast<double>(factorial(particles - 1)));
      Eigen::MatrixXcd mass = Eigen::MatrixXcd::Zero(k, k);
      for (int j = 0; j < particles; ++j) {
        Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(states.size()));
        for (std::size_t x = 0; x < states.size(); ++x) {
          if (basis.mode_of(states[x], j) == modes - 1) bad[static_cast<Eigen::Index>(x)] = amp;
        }
        const Eigen::VectorXcd c = rows * bad;
        mass += c * c.adjoint();
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(mass);
      const Eigen::VectorXd values = eig.eigenvalues();
      if (k > 1 && values[k - 2] > 1e-9 * values[k - 1]) {
        throw InternalConsistency("distinguishable-photon component is not rank one");
      }
      Eigen::VectorXcd v = eig.eigenvectors().col(k - 1);
      Eigen::Index lead = 0;
      v.cwiseAbs().maxCoeff(&lead);
      v *= std::conj(v[lead]) / std::abs(v[lead]);
      // Complete v to an orthonormal basis of the inner multiplicity space.
      Eigen::MatrixXcd rotation(k, k);
      rotation.col(0) = v;
      Eigen::Index filled = 1;
      for (Eigen::Index e = 0; e < k && filled < k; ++e) {
        Eigen::VectorXcd u = Eigen::VectorXcd::Unit(k, e);
        for (int pass = 0; pass < 2; ++pass) {
          for (Eigen::Index m = 0; m < filled; ++m) u -= rotation.col(m).dot(u) * rotation.col(m);
        }
        if (u.norm() < 1e-6) continue;
        rotation.col(filled++) = u.normalized();
      }
      for (auto& copy : b.copies) {
        std::vector<Eigen::VectorXcd> old;
        for (Eigen::Index r = 0; r < k; ++r) old.push_back(copy.vectors[offset + static_cast<std::size_t>(r)].amplitudes);
        for (Eigen::Index i = 0; i < k; ++i) {
          Eigen::VectorXcd nv = Eigen::VectorXcd::Zero(old[0].size());
          for (Eigen::Index r = 0; r < k; ++r) nv += rotation(r, i) * old[static_cast<std::size_t>(r)];
          copy.vectors[offset + static_cast<std::size_t>(i)].amplitudes = nv;
        }
      }
    }
    built.push_back(std::move(b));
  }

  // Assemble labels and per-weight blocks.
  std::vector<BasisLabel> labels;
  std::vector<SchurWeylTransform::WeightBlock> blocks(weights.size());
  std::vector<std::vector<const Eigen::VectorXcd*>> block_vectors(weights.size());
  for (const Built& b : built) {
    for (std::size_t p = 0; p < b.copies.size(); ++p) {
      int last_weight = -1;
      int inner = 0;
      for (const WeightVector& v : b.copies[p].vectors) {
        inner = (v.weight_id == last_weight) ? inner + 1 : 1;
        last_weight = v.weight_id;
        blocks[v.weight_id].rows.push_back(labels.size());
        block_vectors[v.weight_id].push_back(&v.amplitudes);
        labels.push_back(BasisLabel{b.shape, static_cast<int>(p) + 1, weights[v.weight_id], inner});
      }
    }
  }
  for (std::size_t w = 0; w < weights.size(); ++w) {
    const auto n = static_cast<Eigen::Index>(basis.states(static_cast<int>(w)).size());
    auto& block = blocks[w];
    if (static_cast<Eigen::Index>(block.rows.size()) != n) {
      throw NumericDegeneracy("weight " + weights[w].to_string() + " is not spanned");
    }
    block.matrix.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) block.matrix.row(i) = block_vectors[w][static_cast<std::size_t>(i)]->adjoint();
    // Long lowering chains leave ~1e-12 drift; snap to the nearest unitary.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gram(block.matrix * block.matrix.adjoint());
    block.matrix = gram.operatorInverseSqrt() * block.matrix;
    const double deviation =
        (block.matrix * block.matrix.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (deviation > options.orthonormality_tolerance) {
      throw NumericDegeneracy("weight block " + weights[w].to_string() + " deviates from unitarity by " +
                              detail::sci(deviation));
    }
  }
  return SchurWeylTransform(particles, modes, std::move(labels), std::move(blocks));
}

VerificationReport verify_transform(const SchurWeylTransform& transform, const Eigen::MatrixXcd& unitary) {
  VerificationReport report;
  const ProductBasis& basis = transform.product_basis();
  for (std::size_t w = 0; w < transform.weight_blocks().size(); ++w) {
    const auto& block = transform.weight_block(static_cast<int>(w));
    const auto n = block.matrix.rows();
    report.unitarity = std::max(
        report.unitarity, (block.matrix * block.matrix.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff());
    for (std::size_t row : block.rows) {
      if (transform.label(row).weight != basis.weights()[w]) report.weight_preservation = 1.0;
    }
  }

  double off_block_sq = 0.0;
  for (const auto& ir : transform.irreps()) {
    Eigen::MatrixXcd first_copy;
    for (std::size_t p = 1; p <= ir.sym_dim; ++p) {
      Eigen::MatrixXcd copy_block(static_cast<Eigen::Index>(ir.unitary_dim), static_cast<Eigen::Index>(ir.unitary_dim));
      for (std::size_t c = 0; c < ir.unitary_dim; ++c) {
        const std::size_t col_row = ir.row(static_cast<int>(p), c);
        const Eigen::VectorXcd image =
            transform.apply(apply_tensor_power(unitary, transform.basis_vector(col_row), transform.particles()));
        const std::size_t lo = ir.row(static_cast<int>(p), 0);
        const std::size_t hi = lo + ir.unitary_dim;
        for (Eigen::Index r = 0; r < image.size(); ++r) {
          const auto ur = static_cast<std::size_t>(r);
          if (ur >= lo && ur < hi) {
            copy_block(static_cast<Eigen::Index>(ur - lo), static_cast<Eigen::Index>(c)) = image[r];
          } else {
            off_block_sq += std::norm(image[r]);
          }
        }
      }
      if (p == 1) {
        first_copy = copy_block;
      } else {
        report.copy_disagreement = std::max(report.copy_disagreement, (copy_block - first_copy).cwiseAbs().maxCoeff());
      }
    }
  }
  report.off_block_mass = std::sqrt(off_block_sq);
  return report;
}

}  // namespace photodisc
