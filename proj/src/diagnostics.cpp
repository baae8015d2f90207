#include "fibconst/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <unordered_map>

#include "fibconst/counter_bank.hpp"
#include "fibconst/fib.hpp"
#include "fibconst/pisano.hpp"

namespace fibconst {

TermDelta term_delta(const DigitString& digits, int k, std::uint64_t n) {
  check_base(digits.base);
  const std::uint64_t L = digits.digits.size();
  if (k < 1) throw UsageError("term_delta requires k >= 1");

  // Window values can index an array only while base^k stays small; larger
  // configurations fall back to a hash map. Either way the scan is a single
  // rolling pass.
  double cells_d = std::pow(static_cast<double>(digits.base), k);
  if (cells_d > 1e15)
    throw CapacityError("term_delta: base^k too large to enumerate");
  const double uniform = 1.0 / cells_d;
  // A string shorter than k has no windows at all: every block is absent,
  // so the worst deviation is exactly the uniform mass base^-k.
  if (L < static_cast<std::uint64_t>(k)) return TermDelta{n, L, k, uniform};
  const std::uint64_t windows = L - k + 1;
  const double denom = static_cast<double>(L);  // digit count by definition

  double max_dev = 0;
  auto consider = [&](std::uint64_t count) {
    const double dev = std::fabs(static_cast<double>(count) / denom - uniform);
    max_dev = std::max(max_dev, dev);
  };

  if (cells_d <= static_cast<double>(kMaxCells)) {
    std::vector<std::uint32_t> counts(static_cast<std::size_t>(cells_d), 0);
    std::uint64_t v = 0;
    const std::uint64_t mod = static_cast<std::uint64_t>(cells_d);
    std::uint64_t lead_pow = mod / digits.base;  // base^(k-1)
    for (std::uint64_t i = 0; i < L; ++i) {
      v = v * digits.base + digits.digits[i];
      if (i >= static_cast<std::uint64_t>(k))
        v -= static_cast<std::uint64_t>(digits.digits[i - k]) * lead_pow * digits.base;
      if (i + 1 >= static_cast<std::uint64_t>(k)) counts[v]++;
    }
    std::uint64_t seen_distinct = 0;
    for (std::uint32_t c : counts)
      if (c) {
        consider(c);
        ++seen_distinct;
      }
    if (seen_distinct < mod) consider(0);  // some block never occurs
  } else {
    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    counts.reserve(windows * 2);
    std::uint64_t v = 0;
    std::uint64_t lead_pow = 1;
    for (int i = 0; i < k - 1; ++i) lead_pow *= digits.base;
    for (std::uint64_t i = 0; i < L; ++i) {
      v = v * digits.base + digits.digits[i];
      if (i >= static_cast<std::uint64_t>(k))
        v -= static_cast<std::uint64_t>(digits.digits[i - k]) * lead_pow * digits.base;
      if (i + 1 >= static_cast<std::uint64_t>(k)) counts[v]++;
    }
    for (const auto& kv : counts) consider(kv.second);
    if (static_cast<double>(counts.size()) < cells_d) consider(0);
  }

  return TermDelta{n, L, k, max_dev};
}

std::vector<CensusRow> census(std::span<const TermDelta> deltas,
                              std::span<const double> epsilons,
                              std::uint64_t min_length) {
  for (double e : epsilons)
    if (!(e > 0)) throw UsageError("census epsilons must be positive");
  std::uint64_t qualifying = 0;
  std::vector<CensusRow> rows;
  rows.reserve(epsilons.size());
  for (double e : epsilons) rows.push_back({e, 0, 0});
  for (const TermDelta& t : deltas) {
    if (t.digit_length < min_length) continue;
    ++qualifying;
    for (auto& row : rows)
      if (t.delta > row.epsilon) ++row.count;
  }
  for (auto& row : rows)
    row.fraction = qualifying > 0
                       ? static_cast<double>(row.count) / static_cast<double>(qualifying)
                       : 0.0;
  return rows;
}

double iid_max_dev_baseline(std::uint64_t K, int base) {
  check_base(base);
  if (K < 1) throw UsageError("iid_max_dev_baseline requires K >= 1");
  const double k = static_cast<double>(K);
  if (base == 10) return 1.86 * std::sqrt(0.09 / k);  // reported constant
  if (base == 2) return std::sqrt(2.0 / M_PI) / (2.0 * std::sqrt(k));

  // Other bases: Monte Carlo over the limiting Gaussian of the multinomial
  // deviations. With p = 1/b, the centered frequency vector scales to
  // X_d = sqrt(p)*(xi_d - sqrt(p) * sum_e sqrt(p)*xi_e) for iid normal xi;
  // the baseline is E[max_d |X_d|] / sqrt(K). Cached per base; the draw
  // uses an explicit Box-Muller over a fixed-seed engine so the estimate is
  // identical on every platform.
  static std::map<int, double> cache;
  static std::mutex cache_mu;
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = cache.find(base);
    if (it != cache.end()) return it->second / std::sqrt(k);
  }
  std::mt19937_64 rng(0x5eedf1bc0115ULL + static_cast<std::uint64_t>(base));
  auto uniform01 = [&] {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
  };
  const double p = 1.0 / base;
  const double sp = std::sqrt(p);
  const int trials = 1'000'000;
  std::vector<double> xi(base);
  double acc = 0;
  for (int t = 0; t < trials; ++t) {
    for (int d = 0; d < base; d += 2) {
      const double u1 = uniform01(), u2 = uniform01();
      const double r = std::sqrt(-2.0 * std::log(u1));
      xi[d] = r * std::cos(2 * M_PI * u2);
      if (d + 1 < base) xi[d + 1] = r * std::sin(2 * M_PI * u2);
    }
    double proj = 0;
    for (int d = 0; d < base; ++d) proj += sp * xi[d];
    double mx = 0;
    for (int d = 0; d < base; ++d)
      mx = std::max(mx, std::fabs(sp * (xi[d] - sp * proj)));
    acc += mx;
  }
  const double scaled = acc / trials;
  {
    std::lock_guard<std::mutex> lock(cache_mu);
    cache[base] = scaled;
  }
  return scaled / std::sqrt(k);
}

double benford_freq(int d, int base) {
  check_base(base);
  if (d < 1 || d >= base)
    throw UsageError("benford_freq requires a leading digit in [1, base)");
  return std::log1p(1.0 / d) / std::log(static_cast<double>(base));
}

TrailingDistribution trailing_digit_distribution(int base) {
  check_base(base);
  TrailingDistribution dist;
  dist.period = pisano_period(static_cast<std::uint64_t>(base));
  dist.counts.assign(base, 0);
  std::uint64_t a = 1 % base, b = 1 % base;
  for (std::uint64_t i = 0; i < dist.period; ++i) {
    dist.counts[a]++;
    const std::uint64_t t = (a + b) % base;
    a = b;
    b = t;
  }
  return dist;
}

std::vector<double> leading_digit_empirical(std::uint64_t N, int base) {
  check_base(base);
  if (N < 1) throw UsageError("leading_digit_empirical requires N >= 1");
  std::vector<std::uint64_t> counts(base, 0);
  FibStream fs(FibPair{});
  std::vector<std::uint8_t> digits;
  for (std::uint64_t i = 0; i < N; ++i) {
    digit_string_into(fs.current(), base, digits);
    counts[digits.front()]++;
    fs.advance();
  }
  std::vector<double> freq(base, 0);
  for (int d = 0; d < base; ++d)
    freq[d] = static_cast<double>(counts[d]) / static_cast<double>(N);
  return freq;
}

}  // namespace fibconst
