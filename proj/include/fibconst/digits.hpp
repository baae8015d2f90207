#pragma once

#include <cstdint>
#include <vector>

#include "fibconst/bignat.hpp"

namespace fibconst {

// Supported digit bases. 256 covers base 10, base 2, and the 5^x * 2^y
// family cheaply; nothing in the pipeline needs more.
inline constexpr int kMinBase = 2;
inline constexpr int kMaxBase = 256;

// Base-b representation of a value: digits are values in [0, base), most
// significant first. No leading zero except the single-digit string "0".
struct DigitString {
  int base = 10;
  std::vector<std::uint8_t> digits;
};

void check_base(int base);

// Converts v to base-b digits, reusing `out`'s storage. This is the hot path
// of the whole pipeline (a third of total runtime goes through it at base 10),
// so the routing matters:
//   - power-of-two bases: direct bit extraction from the binary limbs, O(n);
//   - other bases <= 36: the library converter (divide-and-conquer,
//     subquadratic);
//   - bases 37..256: our own divide-and-conquer splitting at balanced powers
//     of the base, subquadratic as well.
void digit_string_into(const BigNat& v, int base, std::vector<std::uint8_t>& out);

DigitString digit_string(const BigNat& v, int base);

// Inverse of digit_string (Horner). Intended for round-trip checks and small
// reconstructions, not for bulk streaming.
BigNat from_digits(const DigitString& s);

}  // namespace fibconst
