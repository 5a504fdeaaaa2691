#pragma once

#include <cstdint>

#include "kuniform/error.hpp"

namespace kuniform {

// Overflow-checked signed 64-bit arithmetic.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorKind::Overflow, "int64 addition");
  return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) throw Error(ErrorKind::Overflow, "int64 subtraction");
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorKind::Overflow, "int64 multiplication");
  return out;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Integer power with overflow check.
inline std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(out, base, &out)) throw Error(ErrorKind::Overflow, "power");
  }
  return out;
}

// Saturating power, used for budget estimates.
inline std::uint64_t saturating_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(out, base, &out)) return UINT64_MAX;
  }
  return out;
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  return __builtin_mul_overflow(a, b, &out) ? UINT64_MAX : out;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  return __builtin_add_overflow(a, b, &out) ? UINT64_MAX : out;
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t out = 1;
  for (unsigned i = 1; i <= k; ++i) {
    // out * (n - k + i) is divisible by i at every step.
    unsigned __int128 wide = static_cast<unsigned __int128>(out) * (n - k + i) / i;
    if (wide > UINT64_MAX) throw Error(ErrorKind::Overflow, "binomial");
    out = static_cast<std::uint64_t>(wide);
  }
  return out;
}

}  // namespace kuniform
