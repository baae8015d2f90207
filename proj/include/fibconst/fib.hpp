#pragma once

#include <cstdint>

#include "fibconst/bignat.hpp"

namespace fibconst {

// The pair (F_n, F_{n+1}). Indexing: F_1 = F_2 = 1.
struct FibPair {
  std::uint64_t n = 1;
  BigNat f_n = 1;
  BigNat f_n1 = 1;
};

// Fast doubling: O(log n) big-integer multiplications. This is what makes
// partitioned runs cheap to start anywhere in the sequence.
FibPair fib_pair(std::uint64_t n);

// Streams F_n, F_{n+1}, F_{n+2}, ... from a starting pair, one big-integer
// addition per step.
class FibStream {
public:
  explicit FibStream(FibPair start)
      : n_(start.n), a_(std::move(start.f_n)), b_(std::move(start.f_n1)) {}

  std::uint64_t index() const { return n_; }
  const BigNat& current() const { return a_; }

  void advance() {
    // (a, b) <- (b, a+b) without allocating: a += b; swap.
    mpz_add(a_.get_mpz_t(), a_.get_mpz_t(), b_.get_mpz_t());
    mpz_swap(a_.get_mpz_t(), b_.get_mpz_t());
    ++n_;
  }

  FibPair pair() const { return FibPair{n_, a_, b_}; }

private:
  std::uint64_t n_;
  BigNat a_, b_;
};

// Digit count of F_n in the given base via the closed form
// floor(n*log_b(phi) - log_b(sqrt 5)) + 1, evaluated in extended precision
// with a nearest-integer proximity guard (exact fallback when the fractional
// part is within 1e-9 of an integer). Defined for n >= 2 only: the closed
// form is an asymptotic identity that yields 0 at n = 1.
std::uint64_t digit_length_predicted(std::uint64_t n, int base);

// Number of indices n with F_n <= N (so F_1 = F_2 = 1 both count; N >= 1
// gives at least 2). Returns 0 for N = 0. Closed form
// floor(log(sqrt(5)*(N+1/2)) / log(phi)) with the same guard-and-fallback
// policy as digit_length_predicted.
std::uint64_t counting_function(const BigNat& N);

}  // namespace fibconst
