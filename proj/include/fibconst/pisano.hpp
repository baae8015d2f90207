#pragma once

#include <cstdint>

namespace fibconst {

// Least p >= 1 with F_{n+p} = F_n (mod m) for all n: iterate the pair
// (F_k, F_{k+1}) mod m from (1, 1) until it recurs. Requires m >= 2.
std::uint64_t pisano_period(std::uint64_t m);

}  // namespace fibconst
