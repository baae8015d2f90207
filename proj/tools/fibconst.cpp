// fibconst — digit statistics of the concatenated Fibonacci constant
// 0.11235813213455... (F_1 F_2 F_3 ... written head to tail in a fixed base).

#include <cctype>
#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fibconst/checkpoint.hpp"
#include "fibconst/constructions.hpp"
#include "fibconst/diagnostics.hpp"
#include "fibconst/digits.hpp"
#include "fibconst/errors.hpp"
#include "fibconst/fib.hpp"
#include "fibconst/golden.hpp"
#include "fibconst/report.hpp"
#include "fibconst/stream.hpp"

namespace fc = fibconst;

namespace {

// Resolves the destination: empty means stdout; a relative path lands in
// $FIBCONST_OUTPUT_DIR when that is set.
void write_output(const std::string& content, const std::string& output) {
  if (output.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::filesystem::path path(output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("FIBCONST_OUTPUT_DIR"); dir && *dir)
      path = std::filesystem::path(dir) / path;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw fc::IoError("cannot open output file: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw fc::IoError("failed writing output file: " + path.string());
}

// Progress line on stderr with throughput. Digits are measured against the
// first callback so resumed runs report the rate of new work only.
fc::ProgressFn make_progress() {
  struct State {
    std::chrono::steady_clock::time_point start;
    std::uint64_t base_digits = 0;
    bool primed = false;
  };
  auto st = std::make_shared<State>();
  return [st](std::uint64_t done, std::uint64_t target, std::uint64_t digits) {
    auto now = std::chrono::steady_clock::now();
    if (!st->primed) {
      st->primed = true;
      st->start = now;
      st->base_digits = digits;
    }
    double secs = std::chrono::duration<double>(now - st->start).count();
    double rate = secs > 1e-9
                      ? static_cast<double>(digits - st->base_digits) / secs
                      : 0.0;
    std::fprintf(stderr,
                 "\rterms %" PRIu64 "/%" PRIu64 "  %" PRIu64
                 " digits  %.1fM digits/s",
                 done, target, digits, rate / 1e6);
    if (done == target) std::fprintf(stderr, "\n");
  };
}

struct AnalyzeArgs {
  std::uint64_t terms = 0;
  int base = 10;
  int k_max = 4;
  bool positional = false;
  int partitions = 1;
  std::string checkpoint;
  std::uint64_t checkpoint_every = 0;
  std::string resume;
  bool emit_counts = false;
};

std::string run_analyze(const AnalyzeArgs& a, const CLI::App* cmd,
                        const std::string& format, bool quiet) {
  if (!a.checkpoint.empty() && a.partitions > 1)
    throw fc::UsageError("--checkpoint requires a single partition");
  if (!a.resume.empty() && a.partitions > 1)
    throw fc::UsageError("--resume requires a single partition");
  if (a.checkpoint_every > 0 && a.checkpoint.empty())
    throw fc::UsageError("--checkpoint-every requires --checkpoint");

  fc::CheckpointPolicy policy{a.checkpoint, a.checkpoint_every};
  const fc::CheckpointPolicy* pol = a.checkpoint.empty() ? nullptr : &policy;
  fc::ProgressFn progress = quiet ? fc::ProgressFn{} : make_progress();

  fc::CounterBank bank;
  if (!a.resume.empty()) {
    auto [cursor, loaded] = fc::checkpoint_load(a.resume);
    // Explicit flags must agree with the checkpointed run configuration.
    if (cmd->count("--base") && a.base != loaded.base)
      throw fc::UsageError("--base disagrees with the checkpoint");
    if (cmd->count("--k-max") && a.k_max != loaded.k_max)
      throw fc::UsageError("--k-max disagrees with the checkpoint");
    if (cmd->count("--positional") && a.positional != loaded.positional)
      throw fc::UsageError("--positional disagrees with the checkpoint");
    fc::stream_analyze_resume(cursor, loaded, a.terms, pol, progress);
    bank = std::move(loaded);
  } else if (a.partitions > 1) {
    bank = fc::partitioned_analyze(a.base, a.terms, a.k_max, a.positional,
                                   a.partitions, progress);
  } else {
    bank = fc::stream_analyze(a.base, a.terms, a.k_max, a.positional, pol,
                              progress);
  }

  if (format == "json")
    return fc::render_json(fc::analyze_report_json(bank, a.emit_counts));
  if (format == "csv") return fc::analyze_report_csv(bank);
  return fc::analyze_report_text(bank);
}

struct PerTermArgs {
  std::uint64_t terms = 0;
  int base = 10;
  int k = 1;
  std::vector<double> epsilons{0.05, 0.02, 0.01, 0.005, 0.002};
  std::uint64_t min_length = 10;
};

std::string run_per_term(const PerTermArgs& a, const std::string& format,
                         bool quiet) {
  if (a.terms < 1) throw fc::UsageError("term count N must be >= 1");
  fc::check_base(a.base);
  fc::ProgressFn progress = quiet ? fc::ProgressFn{} : make_progress();

  std::vector<fc::TermDelta> deltas;
  deltas.reserve(a.terms);
  fc::FibStream fs(fc::FibPair{});  // starts at F_1
  fc::DigitString ds{a.base, {}};
  std::uint64_t digits_done = 0;
  for (std::uint64_t n = 1; n <= a.terms; ++n, fs.advance()) {
    fc::digit_string_into(fs.current(), a.base, ds.digits);
    digits_done += ds.digits.size();
    deltas.push_back(fc::term_delta(ds, a.k, n));
    if (progress && (n % 512 == 0 || n == a.terms))
      progress(n, a.terms, digits_done);
  }

  std::uint64_t qualifying = 0;
  for (const fc::TermDelta& d : deltas)
    if (d.digit_length >= a.min_length) ++qualifying;
  std::vector<fc::CensusRow> rows = fc::census(deltas, a.epsilons, a.min_length);

  if (format == "json")
    return fc::render_json(fc::census_report_json(
        a.base, a.terms, a.k, a.min_length, qualifying, rows));
  if (format == "csv") return fc::census_report_csv(rows);
  return fc::census_report_text(a.base, a.terms, a.k, a.min_length, qualifying,
                                rows);
}

std::pair<double, double> parse_point(const std::string& spec) {
  double d = 0, dev = 0;
  char trailing = 0;
  if (std::sscanf(spec.c_str(), "%lf,%lf%c", &d, &dev, &trailing) != 2)
    throw fc::UsageError("bad --point, expected 'D,deviation': " + spec);
  return {d, dev};
}

std::string run_regress(const std::vector<std::string>& point_specs,
                        const std::string& file, const std::string& format) {
  std::vector<std::pair<double, double>> points;
  for (const std::string& spec : point_specs)
    points.push_back(parse_point(spec));
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw fc::IoError("cannot open points file: " + file);
    std::string line;
    while (std::getline(in, line)) {
      // Tolerate blank lines, comments, and one non-numeric header row.
      std::size_t at = line.find_first_not_of(" \t\r");
      if (at == std::string::npos || line[at] == '#') continue;
      if (!std::isdigit(static_cast<unsigned char>(line[at])) &&
          line[at] != '-' && line[at] != '+' && line[at] != '.')
        continue;
      points.push_back(parse_point(line.substr(at)));
    }
  }
  fc::RegressionFit fit = fc::loglog_regression(points);
  if (format == "json")
    return fc::render_json(fc::regress_report_json(points.size(), fit));
  if (format == "csv") return fc::regress_report_csv(fit);
  return fc::regress_report_text(points.size(), fit);
}

std::string run_counterexample(std::uint64_t columns,
                               const std::string& format) {
  fc::CounterexampleStats st = fc::counterexample_stats(columns);
  if (format == "json")
    return fc::render_json(fc::counterexample_report_json(st));
  if (format == "csv") return fc::counterexample_report_csv(st);
  return fc::counterexample_report_text(st);
}

std::string run_sigma_census(std::uint64_t max_index, const std::string& cap,
                             const std::string& format) {
  fc::BigNat value_cap;
  if (mpz_set_str(value_cap.get_mpz_t(), cap.c_str(), 10) != 0 ||
      mpz_sgn(value_cap.get_mpz_t()) < 0)
    throw fc::UsageError("--cap must be a nonnegative decimal integer");
  std::vector<fc::SigmaCensusRow> rows =
      fc::fib_sigma_census(max_index, value_cap);
  if (format == "json")
    return fc::render_json(
        fc::sigma_census_report_json(max_index, value_cap, rows));
  if (format == "csv") return fc::sigma_census_report_csv(rows);
  return fc::sigma_census_report_text(rows);
}

std::string run_baselines(int base, std::uint64_t k_digits,
                          const std::string& format) {
  if (format == "json")
    return fc::render_json(fc::baselines_report_json(base, k_digits));
  if (format == "csv") return fc::baselines_report_csv(base, k_digits);
  return fc::baselines_report_text(base, k_digits);
}

int run_golden() {
  std::vector<fc::GoldenCheck> checks = fc::run_golden_suite();
  int failures = 0;
  for (const fc::GoldenCheck& c : checks) {
    if (!c.pass) ++failures;
    std::printf("%s  %s  [%s]\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
  }
  std::printf("%zu checks, %d failures\n", checks.size(), failures);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fibconst — digit statistics of the concatenated Fibonacci constant"};
  app.require_subcommand(0, 1);
  app.fallthrough();  // accept global flags after the subcommand name too

  std::string format = "text";
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  std::string output;
  app.add_option("--output", output,
                 "write the report to this file (default: stdout; relative "
                 "paths resolve under $FIBCONST_OUTPUT_DIR)");
  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress progress output on stderr");
  bool golden = false;
  app.add_flag("--golden", golden,
               "run the built-in desk-scale verification suite and exit");

  AnalyzeArgs an;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "block frequencies over the first N concatenated terms");
  analyze->add_option("--terms,-N", an.terms, "number of Fibonacci terms")
      ->required();
  analyze->add_option("--base,-b", an.base, "digit base, 2..256")
      ->capture_default_str();
  analyze->add_option("--k-max", an.k_max, "largest block length, 1..8")
      ->capture_default_str();
  analyze->add_flag("--positional", an.positional,
                    "split block counts into leading/trailing/middle/boundary");
  analyze->add_option("--partitions", an.partitions,
                      "parallel stream partitions")
      ->capture_default_str();
  analyze->add_option("--checkpoint", an.checkpoint,
                      "write a resumable checkpoint to this path");
  analyze->add_option("--checkpoint-every", an.checkpoint_every,
                      "also checkpoint every T terms (requires --checkpoint)");
  analyze->add_option("--resume", an.resume,
                      "resume from a checkpoint file, then run to --terms");
  analyze->add_flag("--emit-counts", an.emit_counts,
                    "include raw block counts in the JSON report");

  PerTermArgs pt;
  CLI::App* per_term = app.add_subcommand(
      "per-term", "census of per-term block-frequency deviations");
  per_term->add_option("--terms,-N", pt.terms, "number of Fibonacci terms")
      ->required();
  per_term->add_option("--base,-b", pt.base, "digit base, 2..256")
      ->capture_default_str();
  per_term->add_option("--k", pt.k, "block length")->capture_default_str();
  per_term
      ->add_option("--epsilons", pt.epsilons,
                   "deviation thresholds (count deltas strictly above)")
      ->capture_default_str();
  per_term
      ->add_option("--min-length", pt.min_length,
                   "only census terms with at least this many digits")
      ->capture_default_str();

  std::vector<std::string> point_specs;
  std::string points_file;
  CLI::App* regress = app.add_subcommand(
      "regress", "log-log power-law fit of (D, max deviation) points");
  regress->add_option("--point", point_specs,
                      "inline point as 'D,deviation' (repeatable)");
  regress->add_option("--file", points_file,
                      "CSV file of D,deviation rows ('#' comments allowed)");

  std::uint64_t columns = 10000;
  CLI::App* counterexample = app.add_subcommand(
      "counterexample",
      "digit statistics of the repeated-digit column construction");
  counterexample->add_option("--columns", columns, "number of columns")
      ->capture_default_str();

  std::uint64_t max_index = 40;
  std::string cap = "1000000000";
  CLI::App* sigma = app.add_subcommand(
      "sigma-census",
      "which Fibonacci numbers are sum-of-divisors values");
  sigma->add_option("--max-index", max_index, "largest Fibonacci index")
      ->capture_default_str();
  sigma->add_option("--cap", cap, "only census values up to this bound")
      ->capture_default_str();

  int bl_base = 10;
  std::uint64_t k_digits = 10000;
  CLI::App* baselines = app.add_subcommand(
      "baselines",
      "Benford, trailing-digit, and iid maximum-deviation reference tables");
  baselines->add_option("--base,-b", bl_base, "digit base, 2..256")
      ->capture_default_str();
  baselines
      ->add_option("--k-digits", k_digits,
                   "digit count for the iid maximum-deviation baseline")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help/version exit clean, parse errors are usage
  }

  try {
    if (golden) {
      if (app.get_subcommands().size() > 0)
        throw fc::UsageError("--golden takes no subcommand");
      return run_golden();
    }

    std::string report;
    if (analyze->parsed())
      report = run_analyze(an, analyze, format, quiet);
    else if (per_term->parsed())
      report = run_per_term(pt, format, quiet);
    else if (regress->parsed())
      report = run_regress(point_specs, points_file, format);
    else if (counterexample->parsed())
      report = run_counterexample(columns, format);
    else if (sigma->parsed())
      report = run_sigma_census(max_index, cap, format);
    else if (baselines->parsed())
      report = run_baselines(bl_base, k_digits, format);
    else {
      std::fputs(app.help().c_str(), stderr);
      return 2;
    }
    write_output(report, output);
  } catch (const fc::UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const fc::CapacityError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const fc::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
