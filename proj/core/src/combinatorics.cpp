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


#include "photodisc/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "photodisc/error.hpp"

namespace photodisc {

Partition::Partition(std::vector<int> rows) : rows_(std::move(rows)) {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i] < 1) throw InvalidArgument("partition rows must be positive");
    if (i > 0 && rows_[i] > rows_[i - 1]) throw InvalidArgument("partition rows must be weakly decreasing");
  }
  boxes_ = std::accumulate(rows_.begin(), rows_.end(), 0);
}

int Partition::column_length(int j) const {
  int len = 0;
  while (len < length() && rows_[len] > j) ++len;
  return len;
}

std::string Partition::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < rows_.size(); ++i) out << (i ? "," : "") << rows_[i];
  out << ')';
  return out.str();
}

Occupation::Occupation(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_) {
    if (c < 0) throw InvalidArgument("occupation counts must be non-negative");
  }
  total_ = std::accumulate(counts_.begin(), counts_.end(), 0);
}

Occupation Occupation::parse(const std::string& text) {
  std::vector<int> counts;
  if (text.find(',') != std::string::npos) {
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        counts.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw InvalidArgument("bad occupation '" + text + "'");
      }
    }
  } else {
    for (char ch : text) {
      if (ch < '0' || ch > '9') throw InvalidArgument("bad occupation '" + text + "'");
      counts.push_back(ch - '0');
    }
  }
  if (counts.empty()) throw InvalidArgument("empty occupation");
  return Occupation(std::move(counts));
}

bool Occupation::is_coincident() const {
  return std::all_of(counts_.begin(), counts_.end(), [](int c) { return c == 1; });
}

bool Occupation::is_bunched() const {
  return total_ > 0 && std::any_of(counts_.begin(), counts_.end(), [this](int c) { return c == total_; });
}

std::uint64_t Occupation::factorial() const {
  std::uint64_t f = 1;
  for (int c : counts_) f *= photodisc::factorial(c);
  return f;
}

std::string Occupation::to_string() const {
  const bool compact = std::all_of(counts_.begin(), counts_.end(), [](int c) { return c < 10; });
  std::ostringstream out;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (!compact && i) out << ',';
    out << counts_[i];
  }
  return out.str();
}

bool Tableau::is_semistandard() const {
  if (static_cast<int>(rows.size()) != shape.length()) return false;
  for (int i = 0; i < shape.length(); ++i) {
    if (static_cast<int>(rows[i].size()) != shape[i]) return false;
    for (int j = 0; j < shape[i]; ++j) {
      if (j > 0 && rows[i][j] < rows[i][j - 1]) return false;
      if (i > 0 && rows[i][j] <= rows[i - 1][j]) return false;
    }
  }
  return true;
}

bool Tableau::is_standard() const {
  if (!is_semistandard()) return false;
  std::vector<int> word = reading_word();
  std::sort(word.begin(), word.end());
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (word[k] != static_cast<int>(k) + 1) return false;
  }
  // Rows must be strictly increasing as well; distinct entries guarantee it.
  return true;
}

std::vector<int> Tableau::reading_word() const {
  std::vector<int> word;
  for (const auto& row : rows) word.insert(word.end(), row.begin(), row.end());
  return word;
}

std::string Tableau::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out << '/';
    for (int v : rows[i]) out << v;
  }
  return out.str();
}

std::uint64_t factorial(int n) {
  if (n < 0) throw InvalidArgument("factorial of a negative number");
  if (n > 20) throw BudgetExceeded("factorial overflows 64 bits");
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 b = 1;
  for (int i = 1; i <= k; ++i) b = b * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  if (b > std::numeric_limits<std::uint64_t>::max()) throw BudgetExceeded("binomial overflows 64 bits");
  return static_cast<std::uint64_t>(b);
}

std::uint64_t multinomial(const Occupation& n) {
  std::uint64_t m = 1;
  int running = 0;
  for (int c : n.counts()) {
    running += c;
    m *= binomial(running, c);
  }
  return m;
}

std::vector<Partition> enumerate_partitions(int n, int max_rows) {
  if (n < 1 || max_rows < 1) throw InvalidArgument("enumerate_partitions needs n >= 1 and max_rows >= 1");
  std::vector<Partition> out;
  std::vector<int> rows;
  std::function<void(int, int)> rec = [&](int remaining, int cap) {
    if (remaining == 0) {
      out.emplace_back(rows);
      return;
    }
    if (static_cast<int>(rows.size()) == max_rows) return;
    for (int r = std::min(remaining, cap); r >= 1; --r) {
      rows.push_back(r);
      rec(remaining - r, r);
      rows.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::vector<Occupation> enumerate_occupations(int n, int d) {
  if (n < 0 || d < 1) throw InvalidArgument("enumerate_occupations needs n >= 0 and d >= 1");
  std::vector<Occupation> out;
  std::vector<int> counts(d, 0);
  std::function<void(int, int)> rec = [&](int mode, int remaining) {
    if (mode == d - 1) {
      counts[mode] = remaining;
      out.emplace_back(counts);
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      counts[mode] = c;
      rec(mode + 1, remaining - c);
    }
  };
  rec(0, n);
  return out;
}

std::uint64_t sym_dim(const Partition& shape) {
  unsigned __int128 hooks = 1;
  for (int i = 0; i < shape.length(); ++i) {
    for (int j = 0; j < shape[i]; ++j) {
      hooks *= static_cast<unsigned>(shape[i] - j + shape.column_length(j) - i - 1);
    }
  }
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(factorial(shape.boxes())) / hooks);
}

std::uint64_t unitary_dim(const Partition& shape, int d) {
  if (shape.length() > d) return 0;
  unsigned __int128 num = 1;
  unsigned __int128 den = 1;
  for (int i = 0; i < shape.length(); ++i) {
    for (int j = 0; j < shape[i]; ++j) {
      num *= static_cast<unsigned>(d + j - i);
      den *= static_cast<unsigned>(shape[i] - j + shape.column_length(j) - i - 1);
    }
  }
  return static_cast<std::uint64_t>(num / den);
}

namespace {

// Backtracking fill in row-reading order, smallest admissible entry first.
void fill_tableaux(const Partition& shape, std::vector<int>& remaining, std::size_t limit,
                   std::vector<Tableau>* out, std::uint64_t* count) {
  Tableau t{shape, {}};
  for (int i = 0; i < shape.length(); ++i) t.rows.emplace_back(shape[i], 0);
  const int values = static_cast<int>(remaining.size());
  std::function<void(int, int)> rec = [&](int i, int j) {
    if (i == shape.length()) {
      if (out) out->push_back(t);
      if (count) ++*count;
      return;
    }
    const int next_i = (j + 1 == shape[i]) ? i + 1 : i;
    const int next_j = (j + 1 == shape[i]) ? 0 : j + 1;
    int lo = 1;
    if (j > 0) lo = std::max(lo, t.rows[i][j - 1]);
    if (i > 0) lo = std::max(lo, t.rows[i - 1][j] + 1);
    for (int v = lo; v <= values; ++v) {
      if (remaining[v - 1] == 0) continue;
      --remaining[v - 1];
      t.rows[i][j] = v;
      rec(next_i, next_j);
      ++remaining[v - 1];
      if (out && out->size() >= limit) return;
    }
  };
  rec(0, 0);
}

}  // namespace

std::vector<Tableau> enumerate_ssyt(const Partition& shape, const Occupation& weight) {
  if (weight.total() != shape.boxes()) throw InvalidArgument("weight total must equal the number of boxes");
  std::vector<Tableau> out;
  std::vector<int> remaining = weight.counts();
  fill_tableaux(shape, remaining, std::numeric_limits<std::size_t>::max(), &out, nullptr);
  return out;
}

std::uint64_t kostka(const Partition& shape, const Occupation& weight) {
  if (weight.total() != shape.boxes()) throw InvalidArgument("weight total must equal the number of boxes");
  std::uint64_t count = 0;
  std::vector<int> remaining = weight.counts();
  fill_tableaux(shape, remaining, 0, nullptr, &count);
  return count;
}

std::vector<Tableau> enumerate_syt(const Partition& shape) {
  return enumerate_ssyt(shape, Occupation::coincident(shape.boxes()));
}

}  // namespace photodisc
