#pragma once

#include <cstdint>
#include <gmpxx.h>

#include "fibconst/errors.hpp"

namespace fibconst {

// Arbitrary-precision non-negative integer. All Fibonacci values are exact;
// no floating-point shortcut is ever taken for the values themselves.
using BigNat = mpz_class;

inline bool fits_u64(const BigNat& v) {
  return mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigNat& v) {
  if (sgn(v) < 0 || !fits_u64(v))
    throw CapacityError("value does not fit in 64 bits");
  std::uint64_t lo = mpz_get_ui(v.get_mpz_t());
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 8 * sizeof(unsigned long)) {
    // 32-bit unsigned long fallback; not hit on LP64 but kept for safety.
    BigNat hi = v >> 32;
    lo = (static_cast<std::uint64_t>(mpz_get_ui(hi.get_mpz_t())) << 32) |
         (lo & 0xffffffffULL);
  }
  return lo;
}

inline BigNat from_u64(std::uint64_t v) {
  BigNat r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

}  // namespace fibconst
