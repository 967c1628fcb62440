#include "walshprime/cache.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <bit>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <optional>
#include <thread>

namespace walshprime {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(std::span<const std::byte> bytes) noexcept {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (std::byte b : bytes) {
    hash ^= static_cast<std::uint64_t>(b);
    hash *= 0x100000001b3ull;
  }
  return hash;
}

namespace {

template <typename T>
void put_le(std::byte* out, T value) {
  static_assert(std::is_unsigned_v<T>);
  for (std::size_t i = 0; i < sizeof(T); ++i) out[i] = static_cast<std::byte>((value >> (8 * i)) & 0xff);
}

template <typename T>
T get_le(const std::byte* in) {
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(std::to_integer<unsigned>(in[i])) << (8 * i);
  return value;
}

[[noreturn]] void io_error(const std::string& what) { throw Error(ErrorCode::io, what); }

// Advisory lock file; removed on destruction.
class LockFile {
 public:
  explicit LockFile(fs::path path) : path_(std::move(path)) {
    using namespace std::chrono_literals;
    const auto deadline = std::chrono::steady_clock::now() + 60s;
    while (true) {
      fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
      if (fd_ >= 0) return;
      if (errno != EEXIST) io_error("cannot create lock file " + path_.string() + ": " + std::strerror(errno));
      if (std::chrono::steady_clock::now() > deadline)
        io_error("timed out waiting for lock " + path_.string() + " (remove it if no writer is running)");
      std::this_thread::sleep_for(50ms);
    }
  }
  ~LockFile() {
    ::close(fd_);
    std::error_code ec;
    fs::remove(path_, ec);
  }
  LockFile(const LockFile&) = delete;
  LockFile& operator=(const LockFile&) = delete;

 private:
  fs::path path_;
  int fd_ = -1;
};

std::vector<std::byte> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_error("cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::size_t>(in.tellg());
  in.seekg(0);
  std::vector<std::byte> bytes(size);
  if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(size)))
    io_error("cannot read " + path.string());
  return bytes;
}

}  // namespace

std::vector<std::byte> encode_cache(const CubeVector& v) {
  const std::uint64_t count = v.size();
  std::vector<std::byte> image(kCacheHeaderSize + 8 * count + 8);
  std::memcpy(image.data(), kCacheMagic, 8);
  put_le<std::uint32_t>(image.data() + 8, kCacheVersion);
  put_le<std::uint32_t>(image.data() + 12, v.n());
  put_le<std::uint64_t>(image.data() + 16, count);
  std::byte* payload = image.data() + kCacheHeaderSize;
  for (std::uint64_t i = 0; i < count; ++i) put_le<std::uint64_t>(payload + 8 * i, std::bit_cast<std::uint64_t>(v[i]));
  const auto checksum = fnv1a64({payload, 8 * count});
  put_le<std::uint64_t>(payload + 8 * count, checksum);
  return image;
}

CubeVector decode_cache(std::span<const std::byte> image, const Limits& limits) {
  if (image.size() < kCacheHeaderSize + 8) io_error("cache image truncated (" + std::to_string(image.size()) + " bytes)");
  if (std::memcmp(image.data(), kCacheMagic, 8) != 0) io_error("cache image has a bad magic");
  const auto version = get_le<std::uint32_t>(image.data() + 8);
  if (version != kCacheVersion) io_error("unsupported cache version " + std::to_string(version));
  const auto n = get_le<std::uint32_t>(image.data() + 12);
  const auto count = get_le<std::uint64_t>(image.data() + 16);
  if (n == 0 || n > kHardMaxDimension) io_error("cache image has invalid n = " + std::to_string(n));
  if (count != cube_size(n)) io_error("cache image count " + std::to_string(count) + " != 2^" + std::to_string(n));
  limits.check(n);
  if (image.size() != kCacheHeaderSize + 8 * count + 8)
    io_error("cache image size " + std::to_string(image.size()) + " does not match count");

  const std::byte* payload = image.data() + kCacheHeaderSize;
  const auto stored = get_le<std::uint64_t>(payload + 8 * count);
  if (fnv1a64({payload, 8 * count}) != stored) throw Error(ErrorCode::checksum, "cache payload checksum mismatch");

  std::vector<double> values(count);
  for (std::uint64_t i = 0; i < count; ++i) values[i] = std::bit_cast<double>(get_le<std::uint64_t>(payload + 8 * i));
  try {
    return CubeVector(n, std::move(values));
  } catch (const Error& e) {
    io_error(std::string("cache payload rejected: ") + e.what());
  }
}

void write_cache(const fs::path& path, const CubeVector& v) {
  const auto image = encode_cache(v);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) io_error("cannot open " + tmp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(image.data()), static_cast<std::streamsize>(image.size()));
    if (!out) io_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) io_error("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

CubeVector read_cache(const fs::path& path, const Limits& limits) { return decode_cache(read_file(path), limits); }

fs::path cache_path(const fs::path& dir, unsigned n) { return dir / ("lambda_n" + std::to_string(n) + ".wlsh"); }

namespace {

std::optional<VonMangoldtTable> try_load(const fs::path& path, unsigned n, const Limits& limits,
                                         std::string& warning) {
  if (!fs::exists(path)) return std::nullopt;
  try {
    auto v = read_cache(path, limits);
    if (v.n() != n) {
      warning = "cache " + path.string() + " holds n = " + std::to_string(v.n());
      return std::nullopt;
    }
    return VonMangoldtTable(std::move(v));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::capacity) throw;
    warning = "cache " + path.string() + " rejected: " + e.what();
    return std::nullopt;
  }
}

}  // namespace

VonMangoldtTable load_or_sieve(const fs::path& dir, unsigned n, const SieveOptions& options, bool allow_sieve,
                               CacheResult* result) {
  options.limits.check(n);
  CacheResult local;
  CacheResult& r = result ? *result : local;
  r = {};
  r.path = cache_path(dir, n);

  if (auto table = try_load(r.path, n, options.limits, r.warning)) {
    r.cache_hit = true;
    return std::move(*table);
  }
  if (!allow_sieve)
    io_error(r.warning.empty() ? "no cache file " + r.path.string() + " and sieving disabled"
                               : r.warning + "; sieving disabled");

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) io_error("cannot create cache directory " + dir.string() + ": " + ec.message());

  fs::path lock_path = r.path;
  lock_path += ".lock";
  LockFile lock(lock_path);
  // Another writer may have finished while we waited for the lock.
  std::string ignored;
  if (auto table = try_load(r.path, n, options.limits, ignored)) {
    r.cache_hit = true;
    r.warning.clear();
    return std::move(*table);
  }
  r.repaired = fs::exists(r.path);
  auto table = sieve_von_mangoldt(n, options);
  write_cache(r.path, table.values());
  return table;
}

CacheResult ensure_cached_table(const fs::path& dir, unsigned n, const SieveOptions& options, bool allow_sieve) {
  CacheResult r;
  load_or_sieve(dir, n, options, allow_sieve, &r);
  return r;
}

}  // namespace walshprime
