#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fibconst {

// Desk-scale reference rows for the two primary bases: exact digit totals
// plus display-precision statistics (3 s.f. deviation, 2 d.p. chi-squared,
// 3 d.p. p-value). The strings are compared against the pinned formatter
// output, which makes the tolerance exactly "agrees at published precision".
struct GoldenRow {
  int base;
  std::uint64_t terms;
  std::uint64_t D;
  const char* max_dev;
  const char* chi2;
  const char* p_value;
};

inline constexpr GoldenRow kGoldenRows[] = {
    {10, 10, 14, "1.86e-01", "14.57", "0.103"},
    {10, 100, 1071, "2.98e-02", "15.38", "0.081"},
    {10, 1000, 104750, "2.11e-03", "10.50", "0.311"},
    {10, 10000, 10451934, "2.87e-04", "20.97", "0.013"},
    {2, 10, 34, "1.18e-01", "1.88", "0.170"},
    {2, 100, 3442, "4.07e-03", "0.23", "0.633"},
    {2, 1000, 346809, "1.35e-03", "2.53", "0.112"},
    {2, 10000, 34708959, "4.42e-05", "0.27", "0.602"},
};

// Published (D, max deviation) convergence points per base, smallest first.
// The three largest rows per base are beyond desk scale and enter only the
// regression reproduction, never a recomputation.
inline constexpr std::pair<double, double> kDevPointsBase10[] = {
    {14.0, 1.86e-1},         {1071.0, 2.98e-2},       {104750.0, 2.11e-3},
    {10451934.0, 2.87e-4},   {1044963704.0, 3.13e-5}, {26123582538.0, 3.43e-6},
};
inline constexpr std::pair<double, double> kDevPointsBase2[] = {
    {34.0, 1.18e-1},         {3442.0, 4.07e-3},       {346809.0, 1.35e-3},
    {34708959.0, 4.42e-5},   {3471178185.0, 1.90e-6}, {86780082284.0, 5.59e-7},
};

// The reference power-law constants hold over the five larger rows per base:
// the smallest row (a 14- resp. 34-digit stream) sits outside the fitted
// convergence window, and including it shifts every constant far beyond the
// published tolerance. The golden fit therefore drops the first point of
// each table.
inline constexpr std::size_t kDevFitSkip = 1;

struct GoldenCheck {
  std::string name;
  bool pass = false;
  std::string detail;  // expected-vs-got when failing, brief value otherwise
};

// Runs the built-in desk-scale suite: the 8 golden rows above, the fixed
// statistics examples, and the two regression reproductions.
std::vector<GoldenCheck> run_golden_suite();

}  // namespace fibconst
