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

#include <bit>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "photodisc/error.hpp"

namespace photodisc {

namespace {

constexpr char kMagic[8] = {'P', 'D', 'S', 'W', 'T', 0, 0, 0};
constexpr std::size_t kVersionOffset = sizeof(kMagic);

class Writer {
 public:
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  void raw(const char* data, std::size_t n) { bytes.insert(bytes.end(), data, data + n); }
  std::vector<std::uint8_t> bytes;

 private:
  void put(std::uint64_t v, int width) {
    for (int i = 0; i < width; ++i) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
};

class Reader {
 public:
  Reader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  double f64() { return std::bit_cast<double>(get(8)); }
  void skip(std::size_t n) {
    need(n);
    pos_ += n;
  }
  std::size_t position() const { return pos_; }

 private:
  void need(std::size_t n) const {
    if (size_ - pos_ < n) throw CacheError("cache file truncated");
  }
  std::uint64_t get(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
    pos_ += static_cast<std::size_t>(width);
    return v;
  }
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

// Guards against absurd sizes in corrupt-but-checksummed files.
std::uint64_t bounded(std::uint64_t v, std::uint64_t limit, const char* what) {
  if (v > limit) throw CacheError(std::string("cache field out of range: ") + what);
  return v;
}

}  // namespace

std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t size) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::filesystem::path default_cache_directory() {
  if (const char* dir = std::getenv("PHOTODISC_CACHE_DIR"); dir && *dir) return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "photodisc";
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "photodisc";
  }
  return ".photodisc-cache";
}

std::filesystem::path cache_file(const std::filesystem::path& directory, int particles, int modes) {
  return directory / ("sw_n" + std::to_string(particles) + "_d" + std::to_string(modes) + ".pdsw");
}

std::vector<std::uint8_t> serialize_transform(const SchurWeylTransform& transform) {
  Writer w;
  w.raw(kMagic, sizeof(kMagic));
  w.u32(kCacheFormatVersion);
  w.u32(static_cast<std::uint32_t>(transform.particles()));
  w.u32(static_cast<std::uint32_t>(transform.modes()));
  w.u64(transform.dim());
  w.u64(transform.weight_blocks().size());
  for (const auto& block : transform.weight_blocks()) {
    w.u64(block.rows.size());
    for (std::size_t row : block.rows) w.u64(row);
    for (Eigen::Index i = 0; i < block.matrix.rows(); ++i) {
      for (Eigen::Index j = 0; j < block.matrix.cols(); ++j) {
        w.f64(block.matrix(i, j).real());
        w.f64(block.matrix(i, j).imag());
      }
    }
  }
  for (const auto& label : transform.labels()) {
    w.u32(static_cast<std::uint32_t>(label.shape.length()));
    for (int row : label.shape.rows()) w.u32(static_cast<std::uint32_t>(row));
    w.u32(static_cast<std::uint32_t>(label.outer));
    for (int c : label.weight.counts()) w.u32(static_cast<std::uint32_t>(c));
    w.u32(static_cast<std::uint32_t>(label.inner));
  }
  w.u64(fnv1a64(w.bytes.data(), w.bytes.size()));
  return std::move(w.bytes);
}

SchurWeylTransform deserialize_transform(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kVersionOffset + 4 + 8 || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw CacheError("not a photodisc transform cache file");
  }
  const std::size_t payload = bytes.size() - 8;
  Reader tail(bytes.data() + payload, 8);
  if (tail.u64() != fnv1a64(bytes.data(), payload)) throw CacheChecksumMismatch("cache checksum mismatch");

  Reader r(bytes.data(), payload);
  r.skip(sizeof(kMagic));
  const std::uint32_t version = r.u32();
  if (version != kCacheFormatVersion) {
    throw CacheVersionMismatch("cache format version " + std::to_string(version) + ", expected " +
                               std::to_string(kCacheFormatVersion));
  }
  const int particles = static_cast<int>(bounded(r.u32(), 64, "N"));
  const int modes = static_cast<int>(bounded(r.u32(), 64, "d"));
  const std::uint64_t dim = r.u64();
  const std::uint64_t block_count = bounded(r.u64(), dim, "block count");

  std::vector<SchurWeylTransform::WeightBlock> blocks(block_count);
  for (auto& block : blocks) {
    const auto n = static_cast<Eigen::Index>(bounded(r.u64(), dim, "block size"));
    block.rows.resize(static_cast<std::size_t>(n));
    for (auto& row : block.rows) row = r.u64();
    block.matrix.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const double re = r.f64();
        block.matrix(i, j) = Complex(re, r.f64());
      }
    }
  }
  std::vector<BasisLabel> labels(dim);
  for (auto& label : labels) {
    std::vector<int> shape(bounded(r.u32(), static_cast<std::uint64_t>(modes), "shape length"));
    for (int& row : shape) row = static_cast<int>(r.u32());
    label.shape = Partition(shape);
    label.outer = static_cast<int>(r.u32());
    std::vector<int> counts(static_cast<std::size_t>(modes));
    for (int& c : counts) c = static_cast<int>(r.u32());
    label.weight = Occupation(counts);
    label.inner = static_cast<int>(r.u32());
  }
  if (r.position() != payload) throw CacheError("trailing bytes in cache file");
  try {
    SchurWeylTransform t(particles, modes, std::move(labels), std::move(blocks));
    if (t.dim() != dim) throw CacheError("matrix_dim disagrees with d^N");
    return t;
  } catch (const CacheError&) {
    throw;
  } catch (const Error& e) {
    throw CacheError(std::string("inconsistent cache contents: ") + e.what());
  }
}

std::filesystem::path save_cache(const SchurWeylTransform& transform, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw CacheError("cannot create cache directory " + directory.string() + ": " + ec.message());
  const auto bytes = serialize_transform(transform);
  const auto target = cache_file(directory, transform.particles(), transform.modes());
  std::random_device rd;
  auto temp = target;
  temp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw CacheError("failed writing " + temp.string());
  }
  std::filesystem::rename(temp, target, ec);
  if (ec) {
    std::filesystem::remove(temp);
    throw CacheError("cannot move cache file into place: " + ec.message());
  }
  return target;
}

SchurWeylTransform load_cache(int particles, int modes, const std::filesystem::path& directory) {
  const auto path = cache_file(directory, particles, modes);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheMissing("no cached transform for N=" + std::to_string(particles) + ", d=" +
                              std::to_string(modes) + " at " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  SchurWeylTransform t = deserialize_transform(bytes);
  if (t.particles() != particles || t.modes() != modes) throw CacheError("cache file holds a different (N, d)");
  return t;
}

SchurWeylTransform load_or_build(int particles, int modes, const std::filesystem::path& directory,
                                 const BuildOptions& options) {
  try {
    return load_cache(particles, modes, directory);
  } catch (const CacheMissing&) {
  }
  SchurWeylTransform t = build_transform(particles, modes, options);
  save_cache(t, directory);
  return t;
}

std::shared_ptr<const SchurWeylTransform> shared_transform(int particles, int modes) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const SchurWeylTransform>> memo;
  std::lock_guard lock(mutex);
  auto& slot = memo[{particles, modes}];
  if (!slot) slot = std::make_shared<const SchurWeylTransform>(build_transform(particles, modes));
  return slot;
}

}  // namespace photodisc
