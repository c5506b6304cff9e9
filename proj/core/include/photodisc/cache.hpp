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

// On-disk cache of Schur-Weyl transforms.
//
// File layout (all integers and doubles little-endian):
//   magic "PDSWT\0\0\0"
//   u32 format_version, u32 N, u32 d, u64 matrix_dim (= d^N)
//   u64 block count, then per weight block (canonical weight order):
//     u64 n, n x u64 global rows, n*n x (f64 re, f64 im) row-major
//   label table, one tuple per row:
//     u32 shape length, shape rows (u32 each), u32 p, d x u32 weight counts, u32 r
//   u64 FNV-1a checksum of every preceding byte
//
// Files are written to a temporary name and renamed into place.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <vector>

#include "photodisc/schur_weyl.hpp"

namespace photodisc {

inline constexpr std::uint32_t kCacheFormatVersion = 1;

/// PHOTODISC_CACHE_DIR if set, else $XDG_CACHE_HOME/photodisc, else
/// $HOME/.cache/photodisc, else ./.photodisc-cache.
std::filesystem::path default_cache_directory();
std::filesystem::path cache_file(const std::filesystem::path& directory, int particles, int modes);

std::vector<std::uint8_t> serialize_transform(const SchurWeylTransform& transform);
/// Throws CacheChecksumMismatch, CacheVersionMismatch or CacheError.
SchurWeylTransform deserialize_transform(const std::vector<std::uint8_t>& bytes);

/// Returns the path written.
std::filesystem::path save_cache(const SchurWeylTransform& transform, const std::filesystem::path& directory);
/// Throws CacheMissing when no file exists for (N, d).
SchurWeylTransform load_cache(int particles, int modes, const std::filesystem::path& directory);

/// Loads (N, d) from the directory, building and saving it when missing.
SchurWeylTransform load_or_build(int particles, int modes, const std::filesystem::path& directory,
                                 const BuildOptions& options = {});

/// Process-wide memo of built transforms; builds on first use. Thread-safe.
std::shared_ptr<const SchurWeylTransform> shared_transform(int particles, int modes);

std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t size);

}  // namespace photodisc
