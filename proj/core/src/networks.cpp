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


#include "photodisc/networks.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "photodisc/error.hpp"

namespace photodisc {
namespace {

struct Layout {
  std::vector<int> qft3_offsets;
  std::vector<std::pair<int, int>> links;
  std::vector<int> relabel;  // empty for none; sends old output k to relabel[k]
};

Layout layout_for(int modes) {
  switch (modes) {
    case 4:
      return {{0}, {{0, 3}}, {0, 2, 3, 1}};
    case 5:
      return {{0}, {{0, 3}, {1, 4}}, {0, 3, 2, 1, 4}};
    case 6:
      return {{0, 3}, {{0, 3}}, {}};
    case 7:
      return {{0, 3}, {{0, 3}, {1, 6}}, {}};
    case 8:
      return {{0, 3}, {{0, 3}, {1, 6}, {4, 7}}, {}};
    default:
      throw InvalidArgument("no tabulated network for " + std::to_string(modes) + " modes (expected 2..8)");
  }
}

}  // namespace

NetworkBlock qft2_link(int a, int b) {
  if (a == b || a < 0 || b < 0) throw InvalidArgument("QFT2 link needs two distinct modes");
  const auto q = qft(2).matrix();
  const int lo = std::min(a, b);
  const int size = std::max(a, b) - lo + 1;
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Identity(size, size);
  const int ia = a - lo;
  const int ib = b - lo;
  block(ia, ia) = q(0, 0);
  block(ia, ib) = q(0, 1);
  block(ib, ia) = q(1, 0);
  block(ib, ib) = q(1, 1);
  return {lo, block};
}

Interferometer table1_network(int modes) {
  if (modes == 2 || modes == 3) {
    auto u = qft(modes);
    u.network = {{0, u.matrix()}};
    return u;
  }
  const auto layout = layout_for(modes);
  std::vector<NetworkBlock> blocks;
  for (int offset : layout.qft3_offsets) blocks.push_back({offset, qft(3).matrix()});
  for (const auto& [a, b] : layout.links) blocks.push_back(qft2_link(a, b));
  if (!layout.relabel.empty()) blocks.push_back({0, mode_permutation(layout.relabel).matrix()});
  return layered_network(modes, blocks);
}

std::string table1_network_description(int modes) {
  if (modes == 2 || modes == 3) return "QFT" + std::to_string(modes);
  const auto layout = layout_for(modes);
  std::string out;
  for (int offset : layout.qft3_offsets) {
    if (!out.empty()) out += " + ";
    out += "QFT3[" + std::to_string(offset) + "," + std::to_string(offset + 1) + "," + std::to_string(offset + 2) + "]";
  }
  for (const auto& [a, b] : layout.links) out += " -> QFT2(" + std::to_string(a) + "," + std::to_string(b) + ")";
  if (!layout.relabel.empty()) {
    out += " -> relabel(";
    for (std::size_t k = 0; k < layout.relabel.size(); ++k) {
      out += (k ? "," : "") + std::to_string(layout.relabel[k]);
    }
    out += ")";
  }
  return out;
}

}  // namespace photodisc
