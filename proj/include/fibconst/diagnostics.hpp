#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fibconst/digits.hpp"

namespace fibconst {

// Per-term block-frequency deviation: over all sliding k-windows of one
// digit string, the largest |N(w)/L - base^-k| where L is the DIGIT count
// (not the window count) — that is the convention the downstream censuses
// are defined with. Blocks absent from the string contribute base^-k.
struct TermDelta {
  std::uint64_t n = 0;  // term index when known, 0 otherwise
  std::uint64_t digit_length = 0;
  int k = 1;
  double delta = 0;
};

TermDelta term_delta(const DigitString& digits, int k, std::uint64_t n = 0);

struct CensusRow {
  double epsilon = 0;
  std::uint64_t count = 0;   // qualifying terms with delta > epsilon
  double fraction = 0;       // count / qualifying terms
};

// Census over precomputed deltas: terms qualify when digit_length >=
// min_length; each row counts those with delta strictly above its epsilon.
std::vector<CensusRow> census(std::span<const TermDelta> deltas,
                              std::span<const double> epsilons,
                              std::uint64_t min_length);

// Expected maximum single-digit deviation of an iid uniform string of K
// digits. Closed forms for bases 10 and 2; a seed-fixed Monte Carlo estimate
// (1e6 trials) of the limiting Gaussian model for every other base.
double iid_max_dev_baseline(std::uint64_t K, int base);

// Benford leading-digit probability log_base(1 + 1/d), d in [1, base).
double benford_freq(int d, int base);

// Distribution of F_n mod base over one full Pisano period; counts are
// exact rationals over the period.
struct TrailingDistribution {
  std::uint64_t period = 0;
  std::vector<std::uint64_t> counts;  // counts[d] over n = 1..period
};

TrailingDistribution trailing_digit_distribution(int base);

// Empirical leading-digit frequencies of F_1..F_N in the given base
// (index d holds the frequency of leading digit d; index 0 is always 0).
std::vector<double> leading_digit_empirical(std::uint64_t N, int base);

}  // namespace fibconst
