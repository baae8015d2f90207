#include "fibconst/pisano.hpp"

#include "fibconst/errors.hpp"

namespace fibconst {

std::uint64_t pisano_period(std::uint64_t m) {
  if (m < 2) throw UsageError("pisano_period requires modulus m >= 2");
  if (m > (1ULL << 32))
    throw CapacityError("pisano_period supports moduli up to 2^32");
  // The Fibonacci sequence is purely periodic mod m, so the first return of
  // the state pair to (F_1, F_2) = (1, 1) is the period. Pair iteration uses
  // (a, b) = (F_k mod m, F_{k+1} mod m) starting at k = 1.
  std::uint64_t a = 1, b = 1;
  std::uint64_t p = 0;
  do {
    std::uint64_t t = (a + b) % m;
    a = b;
    b = t;
    ++p;
  } while (!(a == 1 && b == 1));
  return p;
}

}  // namespace fibconst
