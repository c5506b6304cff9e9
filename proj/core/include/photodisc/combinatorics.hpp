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

// Partitions, occupations and Young tableaux.
//
// Canonical orders used throughout the library (list positions carry meaning,
// e.g. the outer multiplicity label p is a position in enumerate_syt):
//   partitions  - lexicographically decreasing rows: (3), (2,1), (1,1,1)
//   occupations - lexicographically decreasing counts: (2,0), (1,1), (0,2)
//   tableaux    - lexicographically increasing row-reading word

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace photodisc {

/// Young diagram: weakly decreasing positive row lengths.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> rows);
  Partition(std::initializer_list<int> rows) : Partition(std::vector<int>(rows)) {}

  const std::vector<int>& rows() const { return rows_; }
  int boxes() const { return boxes_; }
  int length() const { return static_cast<int>(rows_.size()); }
  int operator[](int i) const { return i < length() ? rows_[i] : 0; }
  /// Length of column j (0-based).
  int column_length(int j) const;

  bool is_symmetric() const { return length() == 1; }
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    return a.rows_ <=> b.rows_;
  }

 private:
  std::vector<int> rows_;
  int boxes_ = 0;
};

/// Photon counts per mode; also the weight of a U(d) weight vector.
class Occupation {
 public:
  Occupation() = default;
  explicit Occupation(std::vector<int> counts);
  Occupation(std::initializer_list<int> counts) : Occupation(std::vector<int>(counts)) {}

  static Occupation coincident(int modes) { return Occupation(std::vector<int>(modes, 1)); }
  /// Parses "2101" (one digit per mode) or "2,1,0,1".
  static Occupation parse(const std::string& text);

  const std::vector<int>& counts() const { return counts_; }
  int modes() const { return static_cast<int>(counts_.size()); }
  int total() const { return total_; }
  int operator[](int i) const { return counts_[i]; }

  bool is_coincident() const;
  /// All photons in a single mode.
  bool is_bunched() const;
  /// Product of factorials of the counts.
  std::uint64_t factorial() const;
  /// Compact "2101" form when every count is a single digit, otherwise "2,10,0".
  std::string to_string() const;

  friend bool operator==(const Occupation&, const Occupation&) = default;
  friend std::strong_ordering operator<=>(const Occupation& a, const Occupation& b) {
    return a.counts_ <=> b.counts_;
  }

 private:
  std::vector<int> counts_;
  int total_ = 0;
};

/// Row-wise filling of a Young diagram.
struct Tableau {
  Partition shape;
  std::vector<std::vector<int>> rows;

  bool is_semistandard() const;
  bool is_standard() const;
  std::vector<int> reading_word() const;
  /// "12/3" style rendering.
  std::string to_string() const;

  friend bool operator==(const Tableau&, const Tableau&) = default;
};

std::uint64_t factorial(int n);
std::uint64_t binomial(int n, int k);
std::uint64_t multinomial(const Occupation& n);

/// Partitions of n with at most max_rows rows, lexicographically decreasing.
std::vector<Partition> enumerate_partitions(int n, int max_rows);

/// Occupations of n photons in d modes, lexicographically decreasing.
std::vector<Occupation> enumerate_occupations(int n, int d);

/// Dimension of the symmetric group irrep (hook length formula).
std::uint64_t sym_dim(const Partition& shape);

/// Dimension of the U(d) irrep (hook content formula). Zero when the
/// diagram has more than d rows.
std::uint64_t unitary_dim(const Partition& shape, int d);

/// Semistandard tableaux of the given shape and weight, entries 1..modes.
std::vector<Tableau> enumerate_ssyt(const Partition& shape, const Occupation& weight);

/// Number of semistandard tableaux of the given shape and weight.
std::uint64_t kostka(const Partition& shape, const Occupation& weight);

/// Standard tableaux of the given shape, entries 1..boxes.
std::vector<Tableau> enumerate_syt(const Partition& shape);

}  // namespace photodisc
