#include "fibconst/constructions.hpp"

#include <algorithm>

#include "fibconst/arith.hpp"
#include "fibconst/fib.hpp"

namespace fibconst {

CounterexampleStats counterexample_stats(std::uint64_t N) {
  if (N < 1) throw UsageError("counterexample_stats requires N >= 1");
  if (N > 4'000'000'000ULL)
    throw CapacityError("counterexample_stats: digit count would overflow");
  CounterexampleStats st;
  st.N = N;
  st.L = N * (N + 1) / 2;
  // Column n is the digit (n mod 10) repeated n times, so one column
  // contributes n to its digit count and n-1 diagonal 2-blocks; the junction
  // into column n contributes the single 2-block ((n-1) mod 10, n mod 10),
  // whose digits always differ. Columns are folded in closed form — nothing
  // is materialized.
  for (std::uint64_t n = 1; n <= N; ++n) {
    const int t = static_cast<int>(n % 10);
    st.single[t] += n;
    st.diagonal[t] += n - 1;
    if (n >= 2) st.offdiagonal_total++;
  }
  return st;
}

std::vector<int> row_sequence(std::uint64_t k, std::uint64_t count) {
  std::vector<int> seq;
  seq.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i)
    seq.push_back(static_cast<int>((k + 1 + i) % 10));
  return seq;
}

namespace {

constexpr std::uint64_t kSegment = 1ULL << 21;

struct PreimageTarget {
  std::uint64_t value = 0;
  std::uint64_t bound = 0;     // scan m in [2, bound]
  bool resolved = false;
  std::uint64_t witness = 0;   // 0 = none found within bound
};

// Minimal sigma-preimages for all targets in one shared pass: a segmented
// divisor-pair sieve accumulates sigma(m) for m in [2, max bound] in
// increasing order (so the first match per target is its smallest witness),
// stopping as soon as every target is resolved or out of range.
void sigma_preimage_search(std::vector<PreimageTarget>& targets) {
  std::uint64_t max_bound = 0;
  for (const auto& t : targets)
    if (!t.resolved) max_bound = std::max(max_bound, t.bound);
  if (max_bound < 2) return;

  std::vector<std::uint64_t> sig(kSegment);
  for (std::uint64_t lo = 2; lo <= max_bound; lo += kSegment) {
    const std::uint64_t hi = std::min(lo + kSegment, max_bound + 1);
    const std::uint64_t len = hi - lo;
    std::fill(sig.begin(), sig.begin() + len, 0);
    // sigma(m) = sum of divisor pairs (d, m/d) with d <= sqrt(m).
    for (std::uint64_t d = 1; d * d < hi; ++d) {
      std::uint64_t q = std::max((lo + d - 1) / d, d);
      std::uint64_t m = d * q;
      for (; m < hi; m += d, ++q) sig[m - lo] += d == q ? d : d + q;
    }
    bool all_done = true;
    for (auto& t : targets) {
      if (t.resolved) continue;
      if (t.bound < lo) {  // scanned past this target's range: a miss
        t.resolved = true;
        continue;
      }
      const std::uint64_t end = std::min(hi, t.bound + 1);
      for (std::uint64_t m = lo; m < end; ++m)
        if (sig[m - lo] == t.value) {
          t.witness = m;
          t.resolved = true;
          break;
        }
      if (!t.resolved) all_done = false;
    }
    if (all_done) break;
  }
  for (auto& t : targets) t.resolved = true;  // whatever remains is a miss
}

std::uint64_t sigma_search_value(const BigNat& v) {
  if (sgn(v) < 1) throw UsageError("sigma_range_contains requires v >= 1");
  if (v > kFactorBound)
    throw CapacityError("sigma-range search supports values up to 10^12");
  return to_u64(v);
}

}  // namespace

SigmaWitness sigma_range_contains(const BigNat& v) {
  const std::uint64_t value = sigma_search_value(v);
  SigmaWitness w{v, false, 0};
  if (value == 1) {  // sigma(1) = 1; every m >= 2 has sigma(m) >= m+1 >= 3
    w.in_range = true;
    w.witness = 1;
    return w;
  }
  std::vector<PreimageTarget> t{{value, value - 1, false, 0}};
  sigma_preimage_search(t);
  if (t[0].witness != 0) {
    w.in_range = true;
    w.witness = t[0].witness;
    if (sigma(w.witness) != value)
      throw Error("internal: sigma witness failed re-verification");
  }
  return w;
}

std::vector<SigmaCensusRow> fib_sigma_census(std::uint64_t max_index,
                                             const BigNat& value_cap) {
  if (max_index < 1) throw UsageError("fib_sigma_census requires max_index >= 1");
  std::vector<SigmaCensusRow> rows;
  FibStream fs(FibPair{});
  for (std::uint64_t n = 1; n <= max_index; ++n) {
    if (fs.current() > value_cap) break;  // census covers terms under the cap
    SigmaCensusRow row;
    row.n = n;
    row.fib = fs.current();
    row.multiple_of_6 = mpz_divisible_ui_p(row.fib.get_mpz_t(), 6) != 0;
    rows.push_back(std::move(row));
    fs.advance();
  }

  // One shared sieve pass resolves every row; per-row calls would redo the
  // expensive low segments once per target.
  std::vector<PreimageTarget> targets;
  targets.reserve(rows.size());
  for (const auto& row : rows) {
    const std::uint64_t value = sigma_search_value(row.fib);
    targets.push_back({value, value - 1, value == 1, value == 1 ? 1u : 0u});
  }
  sigma_preimage_search(targets);

  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].in_range = targets[i].witness != 0;
    rows[i].witness = targets[i].witness;
    if (rows[i].in_range && sigma(rows[i].witness) != targets[i].value)
      throw Error("internal: sigma witness failed re-verification");
    rows[i].exception = rows[i].in_range && rows[i].n > 6 && !rows[i].multiple_of_6;
  }
  return rows;
}

ReachabilityFlags reachability_phi_lambda(const BigNat& v) {
  if (sgn(v) < 1) throw UsageError("reachability requires v >= 1");
  ReachabilityFlags flags;
  if (v == 1) {  // phi(1) = lambda(1) = 1
    flags.phi_in_range = flags.lambda_in_range = true;
    flags.phi_witness = flags.lambda_witness = 1;
    return flags;
  }
  if (mpz_odd_p(v.get_mpz_t()))  // both functions are even from m = 3 on
    return flags;
  const std::uint64_t value = to_u64(v);
  if (value > 707'106 || 2 * value * value > kFactorBound)
    throw CapacityError("phi/lambda reachability search exceeds the 10^12 bound");
  // phi(m) >= sqrt(m/2) caps any phi-preimage at 2*v^2; the lambda check
  // shares the same bounded scan (a declared desk-scale convention — lambda
  // preimages beyond the cap are not pursued).
  const std::uint64_t cap = 2 * value * value;
  for (std::uint64_t m = 1; m <= cap; ++m) {
    if (!flags.phi_in_range && euler_phi(m) == value) {
      flags.phi_in_range = true;
      flags.phi_witness = m;
    }
    if (!flags.lambda_in_range && carmichael_lambda(m) == value) {
      flags.lambda_in_range = true;
      flags.lambda_witness = m;
    }
    if (flags.phi_in_range && flags.lambda_in_range) break;
  }
  return flags;
}

}  // namespace fibconst
