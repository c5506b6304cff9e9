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


#include "photodisc/cache.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <cstring>
#include <fstream>

#include "photodisc/error.hpp"

using namespace photodisc;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("photodisc_cache_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void restamp_checksum(std::vector<std::uint8_t>& bytes) {
  const std::size_t body = bytes.size() - 8;
  const std::uint64_t h = fnv1a64(bytes.data(), body);
  for (int k = 0; k < 8; ++k) bytes[body + static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(h >> (8 * k));
}

void expect_same(const SchurWeylTransform& a, const SchurWeylTransform& b) {
  ASSERT_EQ(a.dim(), b.dim());
  EXPECT_EQ(a.labels(), b.labels());
  ASSERT_EQ(a.weight_blocks().size(), b.weight_blocks().size());
  for (std::size_t k = 0; k < a.weight_blocks().size(); ++k) {
    EXPECT_EQ(a.weight_blocks()[k].rows, b.weight_blocks()[k].rows);
    EXPECT_EQ(a.weight_blocks()[k].matrix, b.weight_blocks()[k].matrix);
  }
}

}  // namespace

TEST(cache, fnv1a_reference_values) {
  EXPECT_EQ(fnv1a64(nullptr, 0), 0xcbf29ce484222325ULL);
  const std::uint8_t a = 'a';
  EXPECT_EQ(fnv1a64(&a, 1), 0xaf63dc4c8601ec8cULL);
}

TEST(cache, serialisation_round_trip_is_bit_exact) {
  const auto t = build_transform(3, 3);
  const auto bytes = serialize_transform(t);
  EXPECT_EQ(std::memcmp(bytes.data(), "PDSWT\0\0\0", 8), 0);
  expect_same(t, deserialize_transform(bytes));
}

TEST(cache, flipped_byte_fails_checksum) {
  auto bytes = serialize_transform(build_transform(2, 3));
  bytes[bytes.size() / 2] ^= 0x01;
  EXPECT_THROW(deserialize_transform(bytes), CacheChecksumMismatch);
}

TEST(cache, version_mismatch_is_reported) {
  auto bytes = serialize_transform(build_transform(2, 2));
  bytes[8] = static_cast<std::uint8_t>(kCacheFormatVersion + 1);
  restamp_checksum(bytes);
  EXPECT_THROW(deserialize_transform(bytes), CacheVersionMismatch);
}

TEST(cache, truncated_file_is_rejected) {
  auto bytes = serialize_transform(build_transform(2, 2));
  bytes.resize(bytes.size() - 20);
  EXPECT_THROW(deserialize_transform(bytes), CacheError);
  EXPECT_THROW(deserialize_transform({}), CacheError);
}

TEST(cache, save_and_load_from_directory) {
  const auto dir = scratch_dir("save");
  const auto t = build_transform(3, 2);
  const auto path = save_cache(t, dir);
  EXPECT_EQ(path, cache_file(dir, 3, 2));
  EXPECT_TRUE(std::filesystem::exists(path));
  expect_same(t, load_cache(3, 2, dir));
  EXPECT_THROW(load_cache(4, 2, dir), CacheMissing);
  std::filesystem::remove_all(dir);
}

TEST(cache, load_or_build_writes_missing_entries) {
  const auto dir = scratch_dir("lob");
  EXPECT_FALSE(std::filesystem::exists(cache_file(dir, 2, 3)));
  const auto t = load_or_build(2, 3, dir);
  EXPECT_TRUE(std::filesystem::exists(cache_file(dir, 2, 3)));
  expect_same(t, load_or_build(2, 3, dir));
  std::filesystem::remove_all(dir);
}

TEST(cache, corrupted_file_on_disk_is_detected) {
  const auto dir = scratch_dir("corrupt");
  const auto path = save_cache(build_transform(2, 2), dir);
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(40);
    f.put('\x7f');
  }
  EXPECT_THROW(load_cache(2, 2, dir), CacheChecksumMismatch);
  std::filesystem::remove_all(dir);
}

TEST(cache, environment_variable_sets_the_directory) {
  const char* old = std::getenv("PHOTODISC_CACHE_DIR");
  const std::string saved = old ? old : "";
  ::setenv("PHOTODISC_CACHE_DIR", "/tmp/photodisc_env_probe", 1);
  EXPECT_EQ(default_cache_directory(), std::filesystem::path("/tmp/photodisc_env_probe"));
  if (old) {
    ::setenv("PHOTODISC_CACHE_DIR", saved.c_str(), 1);
  } else {
    ::unsetenv("PHOTODISC_CACHE_DIR");
  }
}

TEST(cache, file_name_encodes_size) {
  EXPECT_EQ(cache_file("/x", 4, 3).filename(), "sw_n4_d3.pdsw");
}
