#pragma once

#include <cstdint>
#include <vector>

namespace fibconst {

// Trial-division bound shared by the arithmetic functions below: inputs
// beyond it are rejected with a capacity error rather than silently slow.
inline constexpr std::uint64_t kFactorBound = 1'000'000'000'000ULL;  // 10^12

struct PrimePower {
  std::uint64_t prime;
  int exponent;
};

// Prime factorization by trial division; n in [1, 10^12].
std::vector<PrimePower> factorize(std::uint64_t n);

// Sum of divisors, Euler's totient, and Carmichael's lambda of n >= 1,
// all via the factorization above.
std::uint64_t sigma(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t carmichael_lambda(std::uint64_t n);

}  // namespace fibconst
