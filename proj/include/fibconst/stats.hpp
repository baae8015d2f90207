#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fibconst/counter_bank.hpp"

namespace fibconst {

// Pearson chi-squared against the uniform expectation total/len(counts).
// Returns (statistic, degrees of freedom = len(counts) - 1). `total` must
// equal the sum of the counts.
std::pair<double, std::int64_t> chi_squared(std::span<const std::uint64_t> counts,
                                            std::uint64_t total);

// Upper-tail P(chi2_df >= x) via the regularized incomplete gamma function
// Q(df/2, x/2); absolute error <= 1e-10 for df up to 1e5.
double chi_squared_pvalue(double x, std::int64_t df);

// Good's serial statistic: the chi-squared increment from order k-1 to k on
// the same digit stream, with base^k - base^(k-1) degrees of freedom.
std::pair<double, std::int64_t> good_serial(double chi2_k, double chi2_km1,
                                            int base, int k);

// Standardized per-cell deviations under the iid uniform model:
// z_d = (C_d - total/b) / sqrt(total * (1/b) * (1 - 1/b)).
std::vector<double> z_scores(std::span<const std::uint64_t> counts,
                             std::uint64_t total, int base);

// Two-sided Bonferroni critical value: the (1 - alpha/(2*m)) standard-normal
// quantile, to 1e-8 absolute.
double bonferroni_z(std::uint64_t m_tests, double alpha);

struct RegressionFit {
  double coefficient = 0;  // exp(intercept)
  double exponent = 0;     // slope
  double r_squared = 0;
};

// OLS of log(dev) on log(D) in natural logs; needs >= 3 positive points.
RegressionFit loglog_regression(std::span<const std::pair<double, double>> points);

// Block-frequency test summary at one block length, computed from a
// CounterBank (optionally restricted to one positional category). The Good
// fields are absent at k = 1 and whenever the k-1 reference is empty.
struct StatReport {
  int base = 10;
  int k = 1;
  std::uint64_t D = 0;
  std::uint64_t total_windows = 0;
  double naive_chi2 = 0;
  std::int64_t naive_df = 0;
  std::optional<double> good_delta_chi2;
  std::int64_t good_df = 0;  // base^k - base^(k-1), reported for every k
  double p_naive = 1;
  std::optional<double> p_good;
  double max_abs_deviation = 0;  // max_v |count_v/windows - base^-k|
  std::string argmax_block;      // ties broken by smallest label
};

StatReport stat_report(const CounterBank& bank, int k);
StatReport stat_report_category(const CounterBank& bank, int k, BlockCategory cat);

}  // namespace fibconst
