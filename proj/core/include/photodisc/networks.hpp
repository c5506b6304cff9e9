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

// Named interferometers used by the reproduction report and the CLI.

#include <string>

#include "photodisc/optics.hpp"

namespace photodisc {

/// Best known constant-depth discriminators of the completely distinguishable
/// state for N = 2..8 photons in N modes: a layer of QFT_3 blocks (plus spare
/// modes) followed by QFT_2 links. For N = 4, 5 the outputs are relabelled so
/// the ambiguous outcomes carry the tabulated labels. N = 2, 3 give QFT_N.
Interferometer table1_network(int modes);

/// Short human description, e.g. "QFT3[0,1,2] -> QFT2(0,3)".
std::string table1_network_description(int modes);

/// QFT_2 acting on modes a (first row/column) and b, identity elsewhere,
/// as a block spanning [min(a,b), max(a,b)].
NetworkBlock qft2_link(int a, int b);

}  // namespace photodisc
