#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fibconst/bignat.hpp"

namespace fibconst {

// Statistics of the ragged array whose n-th column is the digit (n mod 10)
// repeated n times, concatenated column by column: every row is uniform in
// the limit, yet the column concatenation is detectably non-normal — its
// 2-block mass sits on the diagonal pairs "dd".
struct CounterexampleStats {
  std::uint64_t N = 0;  // columns
  std::uint64_t L = 0;  // total digits = N(N+1)/2
  std::array<std::uint64_t, 10> single{};    // digit counts
  std::array<std::uint64_t, 10> diagonal{};  // "dd" 2-block counts
  std::uint64_t offdiagonal_total = 0;       // all other 2-blocks
};

CounterexampleStats counterexample_stats(std::uint64_t N);

// The sequence of column type digits after depth k: (n mod 10) for n > k.
// Periodic with period 10; each digit appears once per period.
std::vector<int> row_sequence(std::uint64_t k, std::uint64_t count);

// Whether v is a value of the sum-of-divisors function, with the smallest
// witness when it is. Search space: m in {1} union [2, v-1], using
// sigma(m) >= m + 1 for m >= 2; capacity-bounded at 10^12.
struct SigmaWitness {
  BigNat value;
  bool in_range = false;
  std::uint64_t witness = 0;  // sigma(witness) == value when in_range
};

SigmaWitness sigma_range_contains(const BigNat& v);

// Which Fibonacci numbers are sigma values: one row per n <= max_index with
// F_n <= value_cap. multiple_of_6 is just 6 | F_n; exception marks a hit
// beyond n = 6 whose value is NOT a multiple of 6 (the interesting rows).
struct SigmaCensusRow {
  std::uint64_t n = 0;
  BigNat fib;
  bool in_range = false;
  std::uint64_t witness = 0;
  bool multiple_of_6 = false;
  bool exception = false;
};

std::vector<SigmaCensusRow> fib_sigma_census(std::uint64_t max_index,
                                             const BigNat& value_cap);

// Whether v is a value of Euler's phi and of Carmichael's lambda. Odd
// v > 1 is immediately out of range for both (their values are 1 at m = 1, 2
// and even from m = 3 on); otherwise a bounded search over m <= 2*v^2
// (from phi(m) >= sqrt(m/2)), capacity-bounded at 10^12.
struct ReachabilityFlags {
  bool phi_in_range = false;
  std::uint64_t phi_witness = 0;
  bool lambda_in_range = false;
  std::uint64_t lambda_witness = 0;
};

ReachabilityFlags reachability_phi_lambda(const BigNat& v);

}  // namespace fibconst
