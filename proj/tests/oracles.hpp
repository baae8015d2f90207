#pragma once

// Slow, independent reference implementations the tests compare the library
// against. Everything here favors obviousness over speed: iterative
// addition, repeated division, literal window scans.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

// F_n by n-1 additions (F_1 = F_2 = 1).
inline mpz_class fib_iterative(std::uint64_t n) {
  mpz_class a = 0, b = 1;  // (F_0, F_1)
  for (std::uint64_t i = 0; i < n; ++i) {
    mpz_class next = a + b;
    a = b;
    b = next;
  }
  return a;
}

// Most-significant-first digits by repeated division.
inline std::vector<std::uint8_t> digits_by_division(mpz_class v, int base) {
  std::vector<std::uint8_t> out;
  if (v == 0) return {0};
  while (v != 0) {
    unsigned long r = mpz_fdiv_q_ui(v.get_mpz_t(), v.get_mpz_t(),
                                    static_cast<unsigned long>(base));
    out.push_back(static_cast<std::uint8_t>(r));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// The concatenated stream of the first N terms plus each term's start.
struct BruteStream {
  std::vector<std::uint8_t> digits;
  std::vector<std::uint64_t> term_start;  // term_start[i] = offset of term i+1
  std::vector<std::uint64_t> term_len;
};

inline BruteStream brute_stream(int base, std::uint64_t N) {
  BruteStream s;
  mpz_class a = 0, b = 1;
  for (std::uint64_t n = 1; n <= N; ++n) {
    mpz_class next = a + b;
    a = b;
    b = next;
    std::vector<std::uint8_t> d = digits_by_division(a, base);
    s.term_start.push_back(s.digits.size());
    s.term_len.push_back(d.size());
    s.digits.insert(s.digits.end(), d.begin(), d.end());
  }
  return s;
}

// Literal sliding-window census: counts[v] over all windows, and when
// `categories` is non-null, the same split by position (0 leading,
// 1 trailing, 2 middle, 3 boundary; leading wins when the window is the
// whole term, straddles are boundary).
inline std::vector<std::uint64_t> brute_window_counts(
    const BruteStream& s, int base, int k,
    std::vector<std::vector<std::uint64_t>>* categories = nullptr) {
  std::uint64_t cells = 1;
  for (int i = 0; i < k; ++i) cells *= static_cast<std::uint64_t>(base);
  std::vector<std::uint64_t> counts(cells, 0);
  if (categories) categories->assign(4, std::vector<std::uint64_t>(cells, 0));
  if (s.digits.size() < static_cast<std::size_t>(k)) return counts;

  std::size_t term = 0;
  for (std::size_t pos = 0; pos + k <= s.digits.size(); ++pos) {
    while (term + 1 < s.term_start.size() && s.term_start[term + 1] <= pos)
      ++term;
    std::uint64_t v = 0;
    for (int i = 0; i < k; ++i) v = v * base + s.digits[pos + i];
    ++counts[v];
    if (!categories) continue;
    std::uint64_t start = s.term_start[term];
    std::uint64_t len = s.term_len[term];
    int cat;
    if (pos + k > start + len) cat = 3;          // straddles the junction
    else if (pos == start) cat = 0;              // leading
    else if (pos + k == start + len) cat = 1;    // trailing
    else cat = 2;                                // middle
    ++(*categories)[cat][v];
  }
  return counts;
}

// Pearson chi-squared, directly.
inline double chi2_direct(const std::vector<std::uint64_t>& counts,
                          std::uint64_t total) {
  double expected = static_cast<double>(total) / counts.size();
  double sum = 0;
  for (std::uint64_t c : counts) {
    double d = static_cast<double>(c) - expected;
    sum += d * d / expected;
  }
  return sum;
}

// Largest per-term block deviation, the literal way: every k-window of the
// digit string, frequencies over the DIGIT count, absent blocks at 0.
inline double term_delta_direct(const std::vector<std::uint8_t>& digits,
                                int base, int k) {
  double cells = std::pow(static_cast<double>(base), k);
  double uniform = 1.0 / cells;
  double L = static_cast<double>(digits.size());
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(cells), 0);
  if (digits.size() >= static_cast<std::size_t>(k))
    for (std::size_t pos = 0; pos + k <= digits.size(); ++pos) {
      std::uint64_t v = 0;
      for (int i = 0; i < k; ++i) v = v * base + digits[pos + i];
      ++counts[v];
    }
  double worst = 0;
  for (std::uint64_t c : counts)
    worst = std::max(worst, std::fabs(static_cast<double>(c) / L - uniform));
  return worst;
}

// Upper-tail standard-normal quantile by bisection on erfc.
inline double normal_upper_quantile(double p) {
  double lo = 0, hi = 50;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (0.5 * std::erfc(mid / std::sqrt(2.0)) > p) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Sum of divisors by trial division over the divisors themselves.
inline std::uint64_t sigma_direct(std::uint64_t m) {
  std::uint64_t sum = 0;
  for (std::uint64_t d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    sum += d;
    if (d != m / d) sum += m / d;
  }
  return sum;
}

// Smallest sigma-preimage of v by forward scan; sigma(m) >= m + 1 for
// m >= 2 bounds the scan at v - 1.
inline std::pair<bool, std::uint64_t> sigma_preimage_scan(std::uint64_t v) {
  if (v == 1) return {true, 1};
  for (std::uint64_t m = 2; m < v; ++m)
    if (sigma_direct(m) == v) return {true, m};
  return {false, 0};
}

}  // namespace oracle
