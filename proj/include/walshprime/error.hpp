#pragma once

#include <stdexcept>
#include <string>

namespace walshprime {

enum class ErrorCode {
  invalid_argument = 1,
  capacity,
  dimension_mismatch,
  out_of_range,
  io,
  degenerate_input,
  not_boolean,
  checksum,
};

const char* to_string(ErrorCode code) noexcept;

// All library failures are reported as Error; the C API maps code() onto
// wp_status values one-to-one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Size limits for dense cube arrays. The default cap of n = 26 keeps a
// single vector at 512 MiB; raising it past that requires allow_over_cap.
inline constexpr unsigned kDefaultMaxDimension = 26;
inline constexpr unsigned kHardMaxDimension = 28;

struct Limits {
  unsigned max_n = kDefaultMaxDimension;
  bool allow_over_cap = false;

  unsigned effective_max_n() const noexcept;

  // Throws Error(capacity) when n is beyond the effective cap, and
  // Error(invalid_argument) when n is zero.
  void check(unsigned n) const;
};

// Largest n whose dense vector fits in `mebibytes` of memory.
unsigned max_dimension_for_memory(unsigned long long mebibytes) noexcept;

}  // namespace walshprime
