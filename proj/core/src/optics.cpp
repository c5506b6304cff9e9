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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "format.hpp"
#include "photodisc/error.hpp"

namespace photodisc {

namespace {

struct Element {
  int pair = 0;          // acts on (pair, pair + 1)
  bool phased = false;
};

// Elements in time order, see the layout in optics.hpp.
std::vector<Element> reck_elements(int modes) {
  std::vector<Element> out;
  for (int layer = 0; layer + 1 < modes; ++layer) {
    for (int j = modes - 2; j >= layer; --j) out.push_back({j, layer > 0});
  }
  return out;
}

void apply_element(Eigen::MatrixXcd& u, int j, double theta, Complex phase) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  for (Eigen::Index k = 0; k < u.cols(); ++k) {
    const Complex a = phase * u(j, k);
    const Complex b = u(j + 1, k);
    u(j, k) = c * a + s * b;
    u(j + 1, k) = -s * a + c * b;
  }
}

}  // namespace

std::vector<double> ReckParams::flatten() const {
  std::vector<double> out(thetas);
  out.insert(out.end(), omegas.begin(), omegas.end());
  return out;
}

ReckParams ReckParams::unflatten(const std::vector<double>& flat, int modes) {
  const std::size_t nt = theta_count(modes);
  if (flat.size() != nt + omega_count(modes)) throw InvalidArgument("wrong number of Reck coordinates");
  return ReckParams{{flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(nt)},
                    {flat.begin() + static_cast<std::ptrdiff_t>(nt), flat.end()}};
}

Interferometer::Interferometer(Eigen::MatrixXcd matrix, double tolerance) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) throw DimensionMismatch("interferometer must be square");
  const auto d = matrix_.rows();
  const double deviation = (matrix_ * matrix_.adjoint() - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (!(deviation <= tolerance)) {
    throw InvalidArgument("matrix is not unitary (deviation " + detail::sci(deviation) + ")");
  }
}

Interferometer Interferometer::identity(int modes) {
  if (modes < 1) throw InvalidArgument("mode count must be positive");
  return Interferometer(Eigen::MatrixXcd::Identity(modes, modes));
}

Interferometer from_reck(const ReckParams& params, int modes) {
  if (modes < 1) throw InvalidArgument("mode count must be positive");
  if (params.thetas.size() != ReckParams::theta_count(modes) ||
      params.omegas.size() != ReckParams::omega_count(modes)) {
    throw InvalidArgument("Reck parameter counts do not match d=" + std::to_string(modes) + ": expected " +
                          std::to_string(ReckParams::theta_count(modes)) + " angles and " +
                          std::to_string(ReckParams::omega_count(modes)) + " phases");
  }
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(modes, modes);
  std::size_t t = 0;
  std::size_t w = 0;
  for (const Element& e : reck_elements(modes)) {
    const Complex phase = e.phased ? std::polar(1.0, params.omegas[w++]) : Complex(1.0);
    apply_element(u, e.pair, params.thetas[t++], phase);
  }
  Interferometer out(std::move(u), 1e-10);
  out.reck = params;
  return out;
}

ReckDecomposition reck_decompose(const Eigen::MatrixXcd& unitary) {
  const int d = static_cast<int>(unitary.rows());
  if (unitary.cols() != d || d < 1) throw DimensionMismatch("unitary must be square");
  ReckDecomposition out;
  out.left_phases = Eigen::VectorXcd::Ones(d);
  out.right_phases = Eigen::VectorXcd::Ones(d);

  // Strip the column phases of row 0 into D_R.
  Eigen::MatrixXcd x = unitary;
  for (int k = 0; k < d; ++k) {
    if (std::abs(x(0, k)) > 0.0) out.right_phases[k] = x(0, k) / std::abs(x(0, k));
  }
  x = x * out.right_phases.conjugate().asDiagonal();

  // Layer l is fixed by row l of what remains; later layers never touch mode l.
  std::vector<std::vector<std::pair<double, double>>> layers(static_cast<std::size_t>(std::max(d - 1, 0)));
  for (int l = 0; l + 1 < d; ++l) {
    const Complex last = x(l, d - 1);
    if (std::abs(last) > 0.0) {
      out.left_phases[l] = last / std::abs(last);
      x.row(l) *= std::conj(out.left_phases[l]);
    }
    // Row l of the cascade is [c0 e^{iw0}, s0 c1 e^{iw1}, ..., s0 s1 ... s_{n-2}].
    double remaining = 1.0;
    auto& params = layers[static_cast<std::size_t>(l)];
    for (int k = l; k + 1 < d; ++k) {
      const Complex a = x(l, k);
      double c = remaining > 1e-300 ? std::abs(a) / remaining : 1.0;
      c = std::clamp(c, 0.0, 1.0);
      const double theta = std::acos(c);
      const double omega = (l > 0 && std::abs(a) > 0.0) ? std::arg(a) : 0.0;
      params.emplace_back(theta, omega);
      remaining *= std::sin(theta);
    }
    // Undo the cascade: x <- x * L^{-1}, L applied with pair (l, l+1) last.
    Eigen::MatrixXcd cascade = Eigen::MatrixXcd::Identity(d, d);
    for (int k = d - 2; k >= l; --k) {
      const auto& [theta, omega] = params[static_cast<std::size_t>(k - l)];
      apply_element(cascade, k, theta, l > 0 ? std::polar(1.0, omega) : Complex(1.0));
    }
    x = x * cascade.adjoint();
  }
  out.left_phases[d - 1] = x(d - 1, d - 1);

  for (int l = 0; l + 1 < d; ++l) {
    for (int k = d - 2; k >= l; --k) {
      const auto& [theta, omega] = layers[static_cast<std::size_t>(l)][static_cast<std::size_t>(k - l)];
      out.params.thetas.push_back(theta);
      if (l > 0) {
        double wrapped = std::fmod(omega, 2.0 * std::numbers::pi);
        if (wrapped < 0.0) wrapped += 2.0 * std::numbers::pi;
        out.params.omegas.push_back(wrapped);
      }
    }
  }
  return out;
}

Interferometer qft(int modes) {
  if (modes < 2) throw InvalidArgument("QFT needs at least 2 modes");
  Eigen::MatrixXcd u(modes, modes);
  const double norm = 1.0 / std::sqrt(static_cast<double>(modes));
  for (int j = 0; j < modes; ++j) {
    for (int k = 0; k < modes; ++k) {
      // Reduce jk mod n first so large exponents stay exact.
      const int e = (j * k) % modes;
      u(j, k) = std::polar(norm, 2.0 * std::numbers::pi * e / modes);
    }
  }
  return Interferometer(std::move(u));
}

Eigen::MatrixXcd beamsplitter(double theta) {
  Eigen::MatrixXcd u(2, 2);
  u << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return u;
}

Interferometer layered_network(int modes, const std::vector<NetworkBlock>& blocks) {
  if (modes < 1) throw InvalidArgument("mode count must be positive");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(modes, modes);
  for (const auto& b : blocks) {
    const auto size = static_cast<int>(b.block.rows());
    if (b.block.cols() != size) throw DimensionMismatch("network block must be square");
    if (b.offset < 0 || b.offset + size > modes) {
      throw InvalidArgument("network block at offset " + std::to_string(b.offset) + " does not fit in " +
                            std::to_string(modes) + " modes");
    }
    Eigen::MatrixXcd embedded = Eigen::MatrixXcd::Identity(modes, modes);
    embedded.block(b.offset, b.offset, size, size) = b.block;
    u = embedded * u;
  }
  Interferometer out(std::move(u), 1e-10);
  out.network = blocks;
  return out;
}

Interferometer mode_permutation(const std::vector<int>& perm) {
  const auto d = static_cast<int>(perm.size());
  std::vector<int> seen(perm);
  std::sort(seen.begin(), seen.end());
  for (int k = 0; k < d; ++k) {
    if (seen[k] != k) throw InvalidArgument("not a permutation");
  }
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 0; k < d; ++k) u(perm[k], k) = 1.0;
  return Interferometer(std::move(u));
}

Eigen::MatrixXcd random_unitary(int modes, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd z(modes, modes);
  for (int j = 0; j < modes; ++j) {
    for (int k = 0; k < modes; ++k) z(j, k) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR();
  for (int k = 0; k < modes; ++k) {
    const Complex diag = r(k, k);
    if (std::abs(diag) > 0.0) q.col(k) *= diag / std::abs(diag);
  }
  return q;
}

Eigen::MatrixXcd occupation_submatrix(const Eigen::MatrixXcd& unitary, const Occupation& in, const Occupation& out) {
  const auto d = static_cast<int>(unitary.rows());
  if (in.modes() != d || out.modes() != d) throw DimensionMismatch("occupation length differs from mode count");
  if (in.total() != out.total()) throw InvalidArgument("input and output photon numbers differ");
  std::vector<int> rows;
  std::vector<int> cols;
  for (int j = 0; j < d; ++j) rows.insert(rows.end(), static_cast<std::size_t>(out[j]), j);
  for (int k = 0; k < d; ++k) cols.insert(cols.end(), static_cast<std::size_t>(in[k]), k);
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) m(a, b) = unitary(rows[a], cols[b]);
  }
  return m;
}

namespace {

template <typename Matrix>
typename Matrix::Scalar ryser(const Matrix& m) {
  using Scalar = typename Matrix::Scalar;
  const auto n = static_cast<int>(m.rows());
  if (m.cols() != n) throw DimensionMismatch("permanent of a non-square matrix");
  if (n > kPermanentMaxSize) {
    throw BudgetExceeded("permanent of size " + std::to_string(n) + " exceeds cap " +
                         std::to_string(kPermanentMaxSize));
  }
  if (n == 0) return Scalar(1);
  // Gray-code walk over column subsets; row_sums tracks the current subset.
  std::vector<Scalar> row_sums(static_cast<std::size_t>(n), Scalar(0));
  Scalar total(0);
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t i = 1; i < subsets; ++i) {
    const int bit = std::countr_zero(i);
    const std::uint64_t mask = std::uint64_t{1} << bit;
    const bool adding = !(gray & mask);
    gray ^= mask;
    for (int r = 0; r < n; ++r) {
      if (adding) {
        row_sums[r] += m(r, bit);
      } else {
        row_sums[r] -= m(r, bit);
      }
    }
    Scalar prod(1);
    for (int r = 0; r < n; ++r) prod *= row_sums[r];
    const int size = std::popcount(gray);
    total += ((n - size) % 2 == 0) ? prod : -prod;
  }
  return total;
}

}  // namespace

Complex permanent(const Eigen::MatrixXcd& m) { return ryser(m); }
double permanent(const Eigen::MatrixXd& m) { return ryser(m); }

Complex permanent_naive(const Eigen::MatrixXcd& m) {
  const auto n = static_cast<int>(m.rows());
  if (m.cols() != n) throw DimensionMismatch("permanent of a non-square matrix");
  if (n > 10) throw BudgetExceeded("naive permanent limited to n <= 10");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Complex total{};
  do {
    Complex prod(1.0);
    for (int r = 0; r < n; ++r) prod *= m(r, perm[r]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

IrrepBlock irrep_block(const Interferometer& u, const Partition& shape, const SchurWeylTransform& transform) {
  if (u.modes() != transform.modes()) throw DimensionMismatch("interferometer and transform mode counts differ");
  if (shape.boxes() != transform.particles()) throw DimensionMismatch("shape size differs from photon number");
  IrrepBlock out{shape, transform.irrep_columns(u.matrix(), shape), transform.copy_labels(shape)};
  return out;
}

}  // namespace photodisc
