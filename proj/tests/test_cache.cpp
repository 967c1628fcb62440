#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <unistd.h>

#include "walshprime/cache.hpp"

using namespace walshprime;
namespace fs = std::filesystem;

namespace {

class CacheTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("walshprime-cache-test-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

void flip_byte(const fs::path& path, std::streamoff offset) {
  std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
  f.seekg(offset);
  char c = 0;
  f.read(&c, 1);
  c = static_cast<char>(c ^ 0x5a);
  f.seekp(offset);
  f.write(&c, 1);
}

}  // namespace

TEST(CacheFormat, HeaderLayout) {
  const auto image = encode_cache(sieve_von_mangoldt(3).values());
  ASSERT_EQ(image.size(), kCacheHeaderSize + 8 * 8 + 8);
  EXPECT_EQ(std::memcmp(image.data(), "WLSHPRM1", 8), 0);
  std::uint32_t version = 0, n = 0;
  std::uint64_t count = 0;
  std::memcpy(&version, image.data() + 8, 4);
  std::memcpy(&n, image.data() + 12, 4);
  std::memcpy(&count, image.data() + 16, 8);
  EXPECT_EQ(version, 1u);
  EXPECT_EQ(n, 3u);
  EXPECT_EQ(count, 8u);
  double payload[8];
  std::memcpy(payload, image.data() + kCacheHeaderSize, sizeof payload);
  EXPECT_EQ(payload[2], std::log(2.0));
  EXPECT_EQ(payload[7], std::log(7.0));
}

TEST(CacheFormat, FnvKnownValues) {
  EXPECT_EQ(fnv1a64({}), 0xcbf29ce484222325ull);
  const char a = 'a';
  EXPECT_EQ(fnv1a64(std::as_bytes(std::span(&a, 1))), 0xaf63dc4c8601ec8cull);
}

TEST(CacheFormat, DecodeErrors) {
  auto image = encode_cache(sieve_von_mangoldt(4).values());
  auto bad = image;
  bad[kCacheHeaderSize + 20] ^= std::byte{1};
  try {
    decode_cache(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::checksum);
  }
  auto truncated = image;
  truncated.resize(image.size() - 3);
  EXPECT_THROW(decode_cache(truncated), Error);
  auto magic = image;
  magic[0] = std::byte{'X'};
  try {
    decode_cache(magic);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::io);
  }
}

TEST_F(CacheTest, RoundTripIsBitExact) {
  const auto v = sieve_von_mangoldt(12).values();
  const auto path = dir_ / "t.wlsh";
  write_cache(path, v);
  EXPECT_EQ(read_cache(path), v);
  EXPECT_EQ(cache_path(dir_, 12), dir_ / "lambda_n12.wlsh");
}

TEST_F(CacheTest, EnsureIsIdempotent) {
  const auto first = ensure_cached_table(dir_, 10);
  EXPECT_FALSE(first.cache_hit);
  const auto stamp = fs::last_write_time(first.path);
  const auto second = ensure_cached_table(dir_, 10);
  EXPECT_TRUE(second.cache_hit);
  EXPECT_FALSE(second.repaired);
  EXPECT_EQ(fs::last_write_time(second.path), stamp);
  EXPECT_FALSE(fs::exists(first.path.string() + ".lock"));
}

TEST_F(CacheTest, CorruptedPayloadIsResieved) {
  const auto path = ensure_cached_table(dir_, 10).path;
  flip_byte(path, kCacheHeaderSize + 100);
  const auto r = ensure_cached_table(dir_, 10);
  EXPECT_FALSE(r.cache_hit);
  EXPECT_TRUE(r.repaired);
  EXPECT_FALSE(r.warning.empty());
  EXPECT_EQ(read_cache(path), sieve_von_mangoldt(10).values());
}

TEST_F(CacheTest, NoSieveRefusesMissingFile) {
  try {
    load_or_sieve(dir_, 9, {}, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::io);
  }
}

TEST_F(CacheTest, LoadThroughCache) {
  CacheResult r;
  const auto a = load_or_sieve(dir_, 11, {}, true, &r);
  EXPECT_FALSE(r.cache_hit);
  const auto b = load_or_sieve(dir_, 11, {}, false, &r);
  EXPECT_TRUE(r.cache_hit);
  EXPECT_EQ(a.values(), b.values());
}
