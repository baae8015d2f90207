#include "fibconst/arith.hpp"

#include <numeric>

#include "fibconst/errors.hpp"

namespace fibconst {

namespace {

void check_domain(std::uint64_t n, const char* op) {
  if (n == 0) throw UsageError(std::string(op) + " is undefined at 0");
  if (n > kFactorBound)
    throw CapacityError(std::string(op) + " supports n <= 10^12");
}

std::uint64_t pow_u64(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

std::vector<PrimePower> factorize(std::uint64_t n) {
  check_domain(n, "factorize");
  std::vector<PrimePower> f;
  auto strip = [&](std::uint64_t p) {
    if (n % p) return;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.push_back({p, e});
  };
  strip(2);
  strip(3);
  // Remaining candidates are coprime to 6: the 6k+-1 wheel.
  for (std::uint64_t p = 5; p * p <= n; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (n > 1) f.push_back({n, 1});
  return f;
}

std::uint64_t sigma(std::uint64_t n) {
  check_domain(n, "sigma");
  std::uint64_t s = 1;
  for (const auto& [p, e] : factorize(n)) {
    // sigma(p^e) = (p^(e+1) - 1) / (p - 1), accumulated by Horner to stay
    // clear of the 128-bit territory (sigma(n) < 6n for n <= 10^12).
    std::uint64_t term = 1;
    for (int i = 0; i < e; ++i) term = term * p + 1;
    s *= term;
  }
  return s;
}

std::uint64_t euler_phi(std::uint64_t n) {
  check_domain(n, "euler_phi");
  std::uint64_t r = n;
  for (const auto& [p, e] : factorize(n)) {
    (void)e;
    r -= r / p;
  }
  return r;
}

std::uint64_t carmichael_lambda(std::uint64_t n) {
  check_domain(n, "carmichael_lambda");
  std::uint64_t l = 1;
  for (const auto& [p, e] : factorize(n)) {
    std::uint64_t lp;
    if (p == 2)
      lp = e == 1 ? 1 : (e == 2 ? 2 : pow_u64(2, e - 2));  // lambda(2^e)
    else
      lp = pow_u64(p, e - 1) * (p - 1);  // lambda(p^e) = phi(p^e), p odd
    l = std::lcm(l, lp);
  }
  return l;
}

}  // namespace fibconst
