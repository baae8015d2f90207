#include "fibconst/stats.hpp"

#include <cmath>

#include "fibconst/digits.hpp"

namespace fibconst {

namespace {

// Regularized lower incomplete gamma P(a, x) by series expansion; converges
// quickly for x < a + 1. See https://en.wikipedia.org/wiki/Incomplete_gamma_function
double gamma_p_series(double a, double x) {
  if (x <= 0) return 0;
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int i = 0; i < 1000000; ++i) {
    ap += 1;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by continued fraction (modified
// Lentz); the stable region is x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double kTiny = 1e-300;
  double b = x + 1 - a;
  double c = 1 / kTiny;
  double d = 1 / b;
  double h = d;
  for (int i = 1; i < 1000000; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1) < 1e-17) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q(double a, double x) {
  if (x <= 0) return 1;
  if (x < a + 1) return 1 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

// Standard normal upper-tail probability.
double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

std::pair<double, std::int64_t> chi_squared(std::span<const std::uint64_t> counts,
                                            std::uint64_t total) {
  if (counts.empty()) throw UsageError("chi_squared requires non-empty counts");
  std::uint64_t sum = 0;
  for (std::uint64_t c : counts) sum += c;
  if (sum != total) throw UsageError("chi_squared: total does not match counts");
  if (total == 0) throw UsageError("chi_squared requires a positive total");
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  long double stat = 0;
  for (std::uint64_t c : counts) {
    const long double diff = static_cast<long double>(c) - expected;
    stat += diff * diff / expected;
  }
  return {static_cast<double>(stat), static_cast<std::int64_t>(counts.size()) - 1};
}

double chi_squared_pvalue(double x, std::int64_t df) {
  if (x < 0) throw UsageError("chi_squared_pvalue requires x >= 0");
  if (df < 1) throw UsageError("chi_squared_pvalue requires df >= 1");
  return gamma_q(static_cast<double>(df) / 2.0, x / 2.0);
}

std::pair<double, std::int64_t> good_serial(double chi2_k, double chi2_km1,
                                            int base, int k) {
  check_base(base);
  if (k < 2) throw UsageError("good_serial requires block order k >= 2");
  std::int64_t df = 1;
  for (int i = 0; i < k - 1; ++i) df *= base;
  df *= base - 1;  // base^k - base^(k-1) = base^(k-1) * (base - 1)
  return {chi2_k - chi2_km1, df};
}

std::vector<double> z_scores(std::span<const std::uint64_t> counts,
                             std::uint64_t total, int base) {
  check_base(base);
  if (total == 0) throw UsageError("z_scores requires a positive total");
  const double p = 1.0 / base;
  const double mean = static_cast<double>(total) * p;
  const double sd = std::sqrt(static_cast<double>(total) * p * (1 - p));
  std::vector<double> z(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    z[i] = (static_cast<double>(counts[i]) - mean) / sd;
  return z;
}

double bonferroni_z(std::uint64_t m_tests, double alpha) {
  if (m_tests < 1) throw UsageError("bonferroni_z requires m_tests >= 1");
  if (!(alpha > 0 && alpha < 1))
    throw UsageError("bonferroni_z requires alpha in (0, 1)");
  const double p = alpha / (2.0 * static_cast<double>(m_tests));
  // Solve normal_sf(z) = p: bisection into the monotone tail, then a couple
  // of Newton steps to polish well past the 1e-8 contract.
  double lo = 0, hi = 40;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_sf(mid) > p ? lo : hi) = mid;
  }
  double z = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double f = normal_sf(z) - p;
    const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2 * M_PI);
    if (pdf > 0) z += f / pdf;
  }
  return z;
}

RegressionFit loglog_regression(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3)
    throw UsageError("loglog_regression requires at least 3 points");
  double sx = 0, sy = 0;
  for (const auto& [d, dev] : points) {
    if (!(d > 0) || !(dev > 0))
      throw UsageError("loglog_regression requires positive coordinates");
    sx += std::log(d);
    sy += std::log(dev);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [d, dev] : points) {
    const double dx = std::log(d) - mx, dy = std::log(dev) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0) throw UsageError("loglog_regression requires distinct D values");
  RegressionFit fit;
  fit.exponent = sxy / sxx;
  fit.coefficient = std::exp(my - fit.exponent * mx);
  fit.r_squared = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

namespace {

StatReport report_from_counts(const CounterBank& bank, int k,
                              std::span<const std::uint64_t> counts,
                              std::span<const std::uint64_t> counts_km1) {
  StatReport rep;
  rep.base = bank.base;
  rep.k = k;
  rep.D = bank.D;
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  rep.total_windows = total;
  rep.good_df = good_serial(0, 0, bank.base, std::max(k, 2)).second;
  if (k == 1) rep.good_df = bank.base - 1;

  if (total > 0) {
    auto [stat, df] = chi_squared(counts, total);
    rep.naive_chi2 = stat;
    rep.naive_df = df;
    rep.p_naive = chi_squared_pvalue(stat, df);
  } else {
    rep.naive_df = static_cast<std::int64_t>(counts.size()) - 1;
    rep.p_naive = 1;
  }

  if (k >= 2 && total > 0) {
    // Good's increment needs the order-(k-1) statistic over the same stream
    // slice. An empty reference (possible only for the boundary category at
    // k = 2: single digits never straddle a junction) contributes 0, making
    // the increment equal the naive statistic there.
    std::uint64_t total_km1 = 0;
    for (std::uint64_t c : counts_km1) total_km1 += c;
    const double chi_km1 =
        total_km1 > 0 ? chi_squared(counts_km1, total_km1).first : 0.0;
    auto [delta, gdf] = good_serial(rep.naive_chi2, chi_km1, bank.base, k);
    rep.good_delta_chi2 = delta;
    rep.good_df = gdf;
    // The increment is asymptotically chi-squared but not guaranteed
    // non-negative in finite samples; clamp only the probability argument.
    rep.p_good = chi_squared_pvalue(std::max(delta, 0.0), gdf);
  }

  const double uniform = std::pow(static_cast<double>(bank.base), -k);
  double best = -1;
  std::uint64_t best_v = 0;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    const double freq =
        total > 0 ? static_cast<double>(counts[v]) / static_cast<double>(total) : 0.0;
    const double dev = std::fabs(freq - uniform);
    if (dev > best) {  // strict: ties keep the smallest block value
      best = dev;
      best_v = v;
    }
  }
  rep.max_abs_deviation = best < 0 ? 0 : best;
  rep.argmax_block = block_label(best_v, bank.base, k);
  return rep;
}

}  // namespace

StatReport stat_report(const CounterBank& bank, int k) {
  if (k < 1 || k > bank.k_max)
    throw UsageError("stat_report: k out of range for this bank");
  return report_from_counts(bank, k, bank.blocks[k - 1],
                            k >= 2 ? bank.blocks[k - 2]
                                   : std::span<const std::uint64_t>{});
}

StatReport stat_report_category(const CounterBank& bank, int k, BlockCategory cat) {
  if (!bank.positional)
    throw UsageError("stat_report_category requires a positional bank");
  if (k < 1 || k > bank.k_max)
    throw UsageError("stat_report_category: k out of range for this bank");
  const int c = static_cast<int>(cat);
  return report_from_counts(
      bank, k, bank.positional_counts[k - 1][c],
      k >= 2 ? bank.positional_counts[k - 2][c]
             : std::span<const std::uint64_t>{});
}

}  // namespace fibconst
