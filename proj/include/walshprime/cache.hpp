#pragma once

// Binary cache for dense cube arrays (used for VonMangoldtTable).
//
// Layout, all integers little-endian:
//   offset  size       field
//   0       8          magic "WLSHPRM1" (ASCII)
//   8       4          version (u32, = 1)
//   12      4          n (u32)
//   16      8          count (u64, = 2^n)
//   24      8*count    payload, IEEE-754 binary64
//   24+8c   8          checksum (u64, FNV-1a 64 over the payload bytes)

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "walshprime/arithmetic.hpp"
#include "walshprime/cube.hpp"

namespace walshprime {

inline constexpr char kCacheMagic[8] = {'W', 'L', 'S', 'H', 'P', 'R', 'M', '1'};
inline constexpr std::uint32_t kCacheVersion = 1;
inline constexpr std::size_t kCacheHeaderSize = 24;

std::uint64_t fnv1a64(std::span<const std::byte> bytes) noexcept;

/// Serialized file image of `v`.
std::vector<std::byte> encode_cache(const CubeVector& v);

/// Throws Error(checksum) on a checksum mismatch and Error(io) on any
/// other malformed image.
CubeVector decode_cache(std::span<const std::byte> image, const Limits& limits = {});

/// Atomic write (temporary file + rename). Throws Error(io).
void write_cache(const std::filesystem::path& path, const CubeVector& v);

CubeVector read_cache(const std::filesystem::path& path, const Limits& limits = {});

/// <dir>/lambda_n<n>.wlsh
std::filesystem::path cache_path(const std::filesystem::path& dir, unsigned n);

struct CacheResult {
  std::filesystem::path path;
  bool cache_hit = false;  // valid file already present, nothing written
  bool repaired = false;   // an invalid file was found and overwritten
  std::string warning;     // why the existing file was rejected, if it was
};

/// Ensures a checksum-valid von Mangoldt cache for n exists in `dir`,
/// sieving when needed. One writer at a time via <path>.lock. When
/// `allow_sieve` is false a missing or invalid file is an Error(io).
CacheResult ensure_cached_table(const std::filesystem::path& dir, unsigned n, const SieveOptions& options = {},
                                bool allow_sieve = true);

/// Loads the table for n through the cache (sieving and storing on a miss).
VonMangoldtTable load_or_sieve(const std::filesystem::path& dir, unsigned n, const SieveOptions& options = {},
                               bool allow_sieve = true, CacheResult* result = nullptr);

}  // namespace walshprime
