#include "fibconst/golden.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fibconst/stats.hpp"
#include "fibconst/stream.hpp"

namespace fibconst {
namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

GoldenCheck approx(std::string name, double got, double want, double tol) {
  GoldenCheck c;
  c.name = std::move(name);
  c.pass = std::fabs(got - want) <= tol;
  c.detail = "want " + fmt("%.9g", want) + " got " + fmt("%.9g", got) +
             " (tol " + fmt("%.1g", tol) + ")";
  return c;
}

GoldenCheck exact_str(std::string name, const std::string& got,
                      const std::string& want) {
  GoldenCheck c;
  c.name = std::move(name);
  c.pass = got == want;
  c.detail = "want " + want + " got " + got;
  return c;
}

void check_row(const GoldenRow& row, std::vector<GoldenCheck>& out) {
  const std::string tag =
      "row b=" + std::to_string(row.base) + " N=" + std::to_string(row.terms);
  CounterBank bank = stream_analyze(row.base, row.terms, 1, false);
  StatReport rep = stat_report(bank, 1);

  GoldenCheck digits;
  digits.name = tag + " digit count";
  digits.pass = bank.D == row.D;
  digits.detail = "want " + std::to_string(row.D) + " got " +
                  std::to_string(bank.D);
  out.push_back(digits);

  out.push_back(exact_str(tag + " max deviation",
                          fmt("%.2e", rep.max_abs_deviation), row.max_dev));
  out.push_back(exact_str(tag + " chi2", fmt("%.2f", rep.naive_chi2),
                          row.chi2));
  out.push_back(exact_str(tag + " p", fmt("%.3f", rep.p_naive), row.p_value));
}

void check_regression(const char* tag, const std::pair<double, double>* pts,
                      std::size_t n, double coef, double expo, double r2,
                      std::vector<GoldenCheck>& out) {
  std::vector<std::pair<double, double>> fitted(pts + kDevFitSkip, pts + n);
  RegressionFit f = loglog_regression(fitted);
  out.push_back(approx(std::string(tag) + " coefficient", f.coefficient, coef,
                       5e-3));
  out.push_back(approx(std::string(tag) + " exponent", f.exponent, expo,
                       5e-3));
  out.push_back(approx(std::string(tag) + " r_squared", f.r_squared, r2,
                       5e-4));
}

}  // namespace

std::vector<GoldenCheck> run_golden_suite() {
  std::vector<GoldenCheck> out;

  for (const GoldenRow& row : kGoldenRows) check_row(row, out);

  // Fixed chi-squared tail points (df = 9).
  out.push_back(approx("p(7.48, df=9)", chi_squared_pvalue(7.48, 9), 0.587274,
                       5e-4));
  out.push_back(approx("p(14.57, df=9)", chi_squared_pvalue(14.57, 9),
                       0.103445, 5e-4));

  // Serial-statistic degrees of freedom, base 10 then base 2.
  {
    auto df = [](int base, int k) { return good_serial(0, 0, base, k).second; };
    GoldenCheck c;
    c.name = "serial df ladder";
    c.pass = df(10, 2) == 90 && df(10, 3) == 900 && df(10, 4) == 9000 &&
             df(2, 2) == 2 && df(2, 3) == 4 && df(2, 4) == 8;
    c.detail = "90/900/9000 and 2/4/8";
    out.push_back(c);
  }

  out.push_back(approx("bonferroni z(m=10000, a=0.05)",
                       bonferroni_z(10000, 0.05), 4.564788, 1e-3));

  check_regression("fit b=10", kDevPointsBase10,
                   std::size(kDevPointsBase10), 1.0311, -0.5153, 0.99536,
                   out);
  check_regression("fit b=2", kDevPointsBase2, std::size(kDevPointsBase2),
                   0.7255, -0.5632, 0.97693, out);

  return out;
}

}  // namespace fibconst
