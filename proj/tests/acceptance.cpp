// Acceptance gate: one PASS/FAIL line per criterion, exit code = number of
// failing criteria. Each check is self-contained and prints enough detail
// to diagnose a red line without a debugger.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "fibconst/constructions.hpp"
#include "fibconst/checkpoint.hpp"
#include "fibconst/diagnostics.hpp"
#include "fibconst/golden.hpp"
#include "fibconst/pisano.hpp"
#include "fibconst/report.hpp"
#include "fibconst/stats.hpp"
#include "fibconst/stream.hpp"
#include "oracles.hpp"

using namespace fibconst;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

int g_failures = 0;

void report(int index, const char* label, bool pass, const std::string& detail,
            double seconds) {
  if (!pass) ++g_failures;
  std::printf("[%d] %s  %s  (%s)  [%.1f s]\n", index, pass ? "PASS" : "FAIL",
              label, detail.c_str(), seconds);
  std::fflush(stdout);
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// --- criteria 1 and 2: reference rows at desk scale ------------------------

void reference_rows(int index, int base, double budget_seconds) {
  Timer t;
  bool pass = true;
  std::string detail;
  for (const GoldenRow& row : kGoldenRows) {
    if (row.base != base) continue;
    CounterBank bank = stream_analyze(base, row.terms, 1, false);
    StatReport rep = stat_report(bank, 1);
    bool row_ok = bank.D == row.D &&
                  fmt_dev(rep.max_abs_deviation) == row.max_dev &&
                  fmt_stat(rep.naive_chi2) == row.chi2 &&
                  fmt_pvalue(rep.p_naive) == row.p_value;
    if (!row_ok) {
      pass = false;
      detail += "N=" + std::to_string(row.terms) + " got D=" +
                std::to_string(bank.D) + " dev=" + fmt_dev(rep.max_abs_deviation) +
                " chi2=" + fmt_stat(rep.naive_chi2) + " p=" +
                fmt_pvalue(rep.p_naive) + "; ";
    }
  }
  double secs = t.seconds();
  if (secs > budget_seconds) {
    pass = false;
    detail += "over the " + fmt("%.0f", budget_seconds) + " s budget; ";
  }
  if (detail.empty())
    detail = "4 rows exact at published precision, " + fmt("%.1f", secs) + " s";
  report(index, base == 10 ? "base-10 reference rows, N <= 10,000"
                           : "base-2 reference rows, N <= 10,000",
         pass, detail, secs);
}

// --- criterion 3: fixed statistics values ----------------------------------

void statistics_fixed_points() {
  Timer t;
  bool pass = true;
  std::string detail;
  auto expect = [&](const char* name, double got, double want, double tol) {
    if (std::fabs(got - want) > tol) {
      pass = false;
      detail += std::string(name) + " got " + fmt("%.6f", got) + " want " +
                fmt("%.6f", want) + "; ";
    }
  };
  expect("p(7.48,9)", chi_squared_pvalue(7.48, 9), 0.587, 0.0005);
  expect("p(14.57,9)", chi_squared_pvalue(14.57, 9), 0.103, 0.0005);
  expect("z(10000,0.05)", bonferroni_z(10000, 0.05), 4.565, 0.001);
  auto df = [](int base, int k) { return good_serial(0, 0, base, k).second; };
  if (df(10, 2) != 90 || df(10, 3) != 900 || df(10, 4) != 9000 ||
      df(2, 2) != 2 || df(2, 3) != 4 || df(2, 4) != 8) {
    pass = false;
    detail += "serial df ladder mismatch; ";
  }
  if (detail.empty()) detail = "tail probabilities, critical value, df ladder";
  report(3, "statistics fixed points", pass, detail, t.seconds());
}

// --- criterion 4: convergence power law ------------------------------------

void convergence_fit() {
  Timer t;
  bool pass = true;
  std::string detail;
  auto fit_check = [&](const char* tag, const std::pair<double, double>* pts,
                       std::size_t n, double c, double ctol, double e,
                       double etol, double r, double rtol) {
    // The smallest row sits outside the fitted convergence window; the
    // published constants correspond to the five larger rows.
    std::vector<std::pair<double, double>> fitted(pts + kDevFitSkip, pts + n);
    RegressionFit f = loglog_regression(fitted);
    bool ok = std::fabs(f.coefficient - c) <= ctol &&
              std::fabs(f.exponent - e) <= etol &&
              std::fabs(f.r_squared - r) <= rtol;
    if (!ok) {
      pass = false;
      detail += std::string(tag) + " got " + fmt("%.4f", f.coefficient) + "/" +
                fmt("%.4f", f.exponent) + "/" + fmt("%.5f", f.r_squared) + "; ";
    }
  };
  fit_check("base 10", kDevPointsBase10, std::size(kDevPointsBase10), 1.030,
            0.005, -0.5152, 0.0010, 0.9954, 0.0005);
  fit_check("base 2", kDevPointsBase2, std::size(kDevPointsBase2), 0.725, 0.01,
            -0.563, 0.002, 0.977, 0.002);
  if (detail.empty())
    detail = "five-point fits (smallest row outside the fitted window)";
  report(4, "convergence power-law fit", pass, detail, t.seconds());
}

// --- criterion 5: structural properties ------------------------------------

bool check_partition_identity(std::string& detail) {
  for (int base : {10, 2}) {
    CounterBank bank = stream_analyze(base, 10000, 4, true);
    for (int k = 1; k <= 4; ++k) {
      std::uint64_t sum = 0;
      for (int c = 0; c < kNumCategories; ++c)
        sum += bank.category_total(k, static_cast<BlockCategory>(c));
      if (sum != bank.D - k + 1 || sum != bank.windows(k)) {
        detail += "5a: category sum " + std::to_string(sum) + " != " +
                  std::to_string(bank.D - k + 1) + " at base " +
                  std::to_string(base) + " k " + std::to_string(k) + "; ";
        return false;
      }
    }
  }
  return true;
}

bool check_merge_determinism(std::string& detail) {
  CounterBank seq = stream_analyze(10, 1000, 4, true);
  PartitionPiece a = analyze_terms(10, 1, 400, 4, true);
  PartitionPiece b = analyze_terms(10, 401, 600, 4, true);
  PartitionPiece x = analyze_terms(10, 1, 300, 4, true);
  PartitionPiece y = analyze_terms(10, 301, 350, 4, true);
  PartitionPiece z = analyze_terms(10, 651, 350, 4, true);
  bool ok = serialize(combine(a, b).bank) == serialize(seq) &&
            serialize(combine(combine(x, y), z).bank) == serialize(seq) &&
            serialize(combine(x, combine(y, z)).bank) == serialize(seq);
  if (!ok) detail += "5b: merged banks differ from the sequential bank; ";
  return ok;
}

bool check_resume_identity(std::string& detail) {
  namespace fs = std::filesystem;
  fs::path ck = fs::temp_directory_path() /
                ("fibconst-acceptance-" + std::to_string(::getpid()) + ".ckpt");
  CounterBank direct = stream_analyze(10, 10000, 3, false);
  std::string direct_report = render_json(analyze_report_json(direct, true));

  CheckpointPolicy policy{ck.string(), 0};
  stream_analyze(10, 5000, 3, false, &policy);
  auto [cursor, bank] = checkpoint_load(ck.string());
  stream_analyze_resume(cursor, bank, 10000);
  std::error_code ec;
  fs::remove(ck, ec);

  bool ok = serialize(bank) == serialize(direct) &&
            render_json(analyze_report_json(bank, true)) == direct_report;
  if (!ok) detail += "5c: resumed run differs from the uninterrupted run; ";
  return ok;
}

bool check_census_properties(std::string& detail) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 1000; ++trial) {
    int base = trial % 2 == 0 ? 10 : 2;
    int k = static_cast<int>(rng() % 3) + 1;
    std::size_t len = rng() % 60 + 1;
    std::vector<std::uint8_t> digits(len);
    for (auto& d : digits) d = static_cast<std::uint8_t>(rng() % base);
    double got = term_delta(DigitString{base, digits}, k).delta;
    double want = oracle::term_delta_direct(digits, base, k);
    if (std::fabs(got - want) > 1e-12) {
      detail += "5d: delta mismatch on a random string; ";
      return false;
    }
  }
  std::vector<TermDelta> deltas;
  FibStream fs((FibPair{}));
  for (std::uint64_t n = 1; n <= 2000; ++n, fs.advance())
    deltas.push_back(term_delta(digit_string(fs.current(), 10), 1, n));
  std::vector<double> eps = {0.05, 0.02, 0.01, 0.005, 0.002};
  std::vector<CensusRow> rows = census(deltas, eps, 10);
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i - 1].count > rows[i].count) {
      detail += "5d: census counts not monotone in epsilon; ";
      return false;
    }
  return true;
}

bool check_boundary_blocks(std::string& detail) {
  CounterBank bank = stream_analyze(2, 10000, 2, true);
  const auto& boundary =
      bank.positional_counts[1][static_cast<int>(BlockCategory::boundary)];
  std::uint64_t total = bank.category_total(2, BlockCategory::boundary);
  double freq11 = static_cast<double>(boundary[3]) / static_cast<double>(total);
  bool ok = boundary[0] == 0 && boundary[2] == 0 &&
            std::fabs(freq11 - 2.0 / 3.0) <= 0.02;
  if (!ok)
    detail += "5e: boundary 2-blocks base 2: 00=" + std::to_string(boundary[0]) +
              " 10=" + std::to_string(boundary[2]) +
              " freq(11)=" + fmt("%.4f", freq11) + "; ";
  return ok;
}

void structural_properties() {
  Timer t;
  std::string detail;
  bool a = check_partition_identity(detail);
  bool b = check_merge_determinism(detail);
  bool c = check_resume_identity(detail);
  bool d = check_census_properties(detail);
  bool e = check_boundary_blocks(detail);
  bool pass = a && b && c && d && e;
  if (detail.empty())
    detail = "partition identity, merge determinism, resume identity, "
             "census oracle, boundary blocks";
  report(5, "structural properties", pass, detail, t.seconds());
}

// --- criterion 6: baseline tables ------------------------------------------

void baseline_tables() {
  Timer t;
  bool pass = true;
  std::string detail;
  if (pisano_period(10) != 60 || pisano_period(2) != 3) {
    pass = false;
    detail += "pisano period mismatch; ";
  }
  TrailingDistribution t10 = trailing_digit_distribution(10);
  for (int d = 0; d < 10 && pass; ++d) {
    std::uint64_t want = d % 2 == 0 ? t10.period / 15 : 2 * t10.period / 15;
    if (t10.counts[d] != want) {  // exactly 1/15 even, 2/15 odd
      pass = false;
      detail += "base-10 trailing counts off at digit " + std::to_string(d) + "; ";
    }
  }
  TrailingDistribution t5 = trailing_digit_distribution(5);
  for (std::uint64_t c : t5.counts)
    if (c * 5 != t5.period) {
      pass = false;
      detail += "base-5 trailing distribution is not uniform; ";
      break;
    }
  if (std::fabs(benford_freq(1, 10) - 0.30103) > 1e-5) {
    pass = false;
    detail += "benford_freq(1,10) off; ";
  }
  if (detail.empty())
    detail = "pisano 60/3, trailing 1/15 and 2/15 exact, base-5 uniform, "
             "benford 0.30103";
  report(6, "baseline tables", pass, detail, t.seconds());
}

// --- criterion 7: repeated-digit counterexample -----------------------------

void counterexample_suite() {
  Timer t;
  CounterexampleStats st = counterexample_stats(10000);
  bool pass = st.offdiagonal_total == 9999;
  std::string detail;
  double worst_single = 0, worst_diag = 0;
  for (int d = 0; d < 10; ++d) {
    worst_single = std::max(
        worst_single,
        std::fabs(static_cast<double>(st.single[d]) / static_cast<double>(st.L) - 0.1));
    worst_diag = std::max(
        worst_diag,
        std::fabs(static_cast<double>(st.diagonal[d]) /
                      static_cast<double>(st.L - 1) - 0.1));
  }
  if (worst_single > 2.1e-4 || worst_diag > 2.1e-4) pass = false;
  double secs = t.seconds();
  if (secs > 5.0) pass = false;
  detail = "max single dev " + fmt("%.2e", worst_single) + ", max diagonal dev " +
           fmt("%.2e", worst_diag) + ", off-diagonal " +
           std::to_string(st.offdiagonal_total);
  report(7, "repeated-digit counterexample, N = 10,000", pass, detail, secs);
}

// --- criterion 8: sum-of-divisors census ------------------------------------

void sigma_census_suite() {
  Timer t;
  bool pass = true;
  std::string detail;
  std::vector<SigmaCensusRow> rows = fib_sigma_census(40, BigNat(1000000000));
  std::uint64_t hits = 0, exceptions = 0;
  for (const SigmaCensusRow& r : rows) {
    if (r.n == 6 && (!r.in_range || r.witness != 7)) {
      pass = false;
      detail += "F_6 expected witness 7; ";
    }
    if ((r.n == 5 || r.n == 11 || r.n == 13 || r.n == 25) && r.in_range) {
      pass = false;
      detail += "F_" + std::to_string(r.n) + " unexpectedly in range; ";
    }
    if (r.in_range) ++hits;
    if (r.exception) ++exceptions;
    if (r.in_range && r.n > 6 && !r.multiple_of_6 && !r.exception) {
      pass = false;
      detail += "unflagged exceptional hit at n=" + std::to_string(r.n) + "; ";
    }
  }
  double secs = t.seconds();
  if (secs > 60.0) {
    pass = false;
    detail += "over the 60 s budget; ";
  }
  if (detail.empty())
    detail = std::to_string(hits) + " hits, " + std::to_string(exceptions) +
             " flagged exceptions, every non-exceptional hit divisible by 6";
  report(8, "sum-of-divisors census to index 40", pass, detail, secs);
}

// --- criterion 9: throughput floor and partition speedup ---------------------

void throughput_floor() {
  Timer total;
  Timer t1;
  CounterBank single = stream_analyze(10, 100000, 1, false);
  double secs1 = t1.seconds();
  double rate = static_cast<double>(single.D) / secs1;

  Timer t4;
  CounterBank four = partitioned_analyze(10, 100000, 1, false, 4);
  double secs4 = t4.seconds();
  double speedup = secs1 / secs4;

  bool same = serialize(four) == serialize(single);
  bool pass = rate >= 50e6 && secs1 <= 30.0 && speedup >= 2.8 && same;
  std::string detail =
      fmt("%.1f", rate / 1e6) + "M digits/s single (" + fmt("%.1f", secs1) +
      " s, floor 50M and 30 s), 4-partition speedup " + fmt("%.2f", speedup) +
      "x (need 2.8) on " + std::to_string(std::thread::hardware_concurrency()) +
      " hardware threads" + (same ? "" : ", partitioned bank differs");
  report(9, "throughput floor and partition speedup, N = 100,000", pass, detail,
         total.seconds());
}

}  // namespace

int main() {
  std::printf("acceptance: base 10 and base 2 reference rows, statistics, fit, "
              "structure, baselines, constructions, throughput\n");
  reference_rows(1, 10, 60.0);
  reference_rows(2, 2, 180.0);
  statistics_fixed_points();
  convergence_fit();
  structural_properties();
  baseline_tables();
  counterexample_suite();
  sigma_census_suite();
  throughput_floor();
  std::printf("%d of 9 criteria failing\n", g_failures);
  return g_failures;
}
