#include "fibconst/report.hpp"

#include <cstdio>
#include <sstream>

namespace fibconst {

namespace {

std::string printf_fmt(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

std::string fmt_freq(double v) { return printf_fmt("%.8f", v); }
std::string fmt_dev(double v) { return printf_fmt("%.2e", v); }
std::string fmt_stat(double v) { return printf_fmt("%.2f", v); }
std::string fmt_z(double v) { return printf_fmt("%+.3f", v); }
std::string fmt_fit(double v) { return printf_fmt("%.4f", v); }

std::string fmt_pvalue(double v) {
  if (v < 1e-6) return "<1e-06";
  return printf_fmt("%.3f", v);
}

std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

namespace {

Json report_header(const char* command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

Json stat_report_json(const StatReport& rep) {
  Json j;
  j["k"] = rep.k;
  j["windows"] = rep.total_windows;
  j["chi2"] = fmt_stat(rep.naive_chi2);
  j["df"] = rep.naive_df;
  j["p_value"] = fmt_pvalue(rep.p_naive);
  if (rep.good_delta_chi2) {
    j["good_delta_chi2"] = fmt_stat(*rep.good_delta_chi2);
    j["good_df"] = rep.good_df;
    j["good_p_value"] = fmt_pvalue(*rep.p_good);
  }
  j["max_abs_deviation"] = fmt_dev(rep.max_abs_deviation);
  j["argmax_block"] = rep.argmax_block;
  return j;
}

void stat_report_csv_row(std::ostringstream& out, const StatReport& rep) {
  out << rep.k << ',' << rep.total_windows << ',' << fmt_stat(rep.naive_chi2)
      << ',' << rep.naive_df << ',' << fmt_pvalue(rep.p_naive) << ',';
  if (rep.good_delta_chi2)
    out << fmt_stat(*rep.good_delta_chi2) << ',' << rep.good_df << ','
        << fmt_pvalue(*rep.p_good);
  else
    out << ",,";
  out << ',' << fmt_dev(rep.max_abs_deviation) << ',' << rep.argmax_block << '\n';
}

struct AnalyzeSummary {
  std::vector<StatReport> blocks;                    // k = 1..k_max
  std::vector<std::vector<StatReport>> positional;   // [k-1][category]
  std::vector<double> z;
};

AnalyzeSummary summarize(const CounterBank& bank) {
  AnalyzeSummary s;
  for (int k = 1; k <= bank.k_max; ++k) s.blocks.push_back(stat_report(bank, k));
  if (bank.positional) {
    s.positional.resize(bank.k_max);
    for (int k = 1; k <= bank.k_max; ++k)
      for (int c = 0; c < kNumCategories; ++c)
        s.positional[k - 1].push_back(
            stat_report_category(bank, k, static_cast<BlockCategory>(c)));
  }
  s.z = z_scores(bank.single(), bank.D, bank.base);
  return s;
}

}  // namespace

Json analyze_report_json(const CounterBank& bank, bool emit_counts) {
  const AnalyzeSummary s = summarize(bank);
  Json j = report_header("analyze");
  j["base"] = bank.base;
  j["terms"] = bank.terms_consumed;
  j["k_max"] = bank.k_max;
  j["positional"] = bank.positional;
  j["D"] = bank.D;

  Json digits;
  Json counts, freqs, devs, zs;
  const double uniform = 1.0 / bank.base;
  for (int d = 0; d < bank.base; ++d) {
    const std::string label = block_label(d, bank.base, 1);
    const double freq =
        static_cast<double>(bank.single()[d]) / static_cast<double>(bank.D);
    counts[label] = bank.single()[d];
    freqs[label] = fmt_freq(freq);
    devs[label] = fmt_dev(std::abs(freq - uniform));
    zs[label] = fmt_z(s.z[d]);
  }
  digits["counts"] = std::move(counts);
  digits["frequencies"] = std::move(freqs);
  digits["abs_deviations"] = std::move(devs);
  digits["z_scores"] = std::move(zs);
  digits["max_abs_deviation"] = fmt_dev(s.blocks[0].max_abs_deviation);
  digits["argmax_digit"] = s.blocks[0].argmax_block;
  digits["chi2"] = fmt_stat(s.blocks[0].naive_chi2);
  digits["df"] = s.blocks[0].naive_df;
  digits["p_value"] = fmt_pvalue(s.blocks[0].p_naive);
  j["digits"] = std::move(digits);

  Json blocks = Json::array();
  for (const auto& rep : s.blocks) blocks.push_back(stat_report_json(rep));
  if (emit_counts)
    for (int k = 1; k <= bank.k_max; ++k) {
      Json per;
      const auto& arr = bank.blocks[k - 1];
      for (std::size_t v = 0; v < arr.size(); ++v)
        per[block_label(v, bank.base, k)] = arr[v];
      blocks[k - 1]["block_counts"] = std::move(per);
    }
  j["blocks"] = std::move(blocks);

  if (bank.positional) {
    Json pos = Json::array();
    for (int k = 1; k <= bank.k_max; ++k)
      for (int c = 0; c < kNumCategories; ++c) {
        Json e = stat_report_json(s.positional[k - 1][c]);
        e.erase("k");
        Json row;
        row["k"] = k;
        row["category"] = category_name(static_cast<BlockCategory>(c));
        row.update(e);
        pos.push_back(std::move(row));
      }
    j["positional_blocks"] = std::move(pos);
  }

  return j;
}

std::string analyze_report_text(const CounterBank& bank) {
  const AnalyzeSummary s = summarize(bank);
  std::ostringstream out;
  out << "analysis: base " << bank.base << ", terms " << bank.terms_consumed
      << ", k_max " << bank.k_max << ", D " << bank.D << "\n\n";
  out << "digit  count  frequency  deviation  z\n";
  const double uniform = 1.0 / bank.base;
  for (int d = 0; d < bank.base; ++d) {
    const double freq =
        static_cast<double>(bank.single()[d]) / static_cast<double>(bank.D);
    out << block_label(d, bank.base, 1) << "  " << bank.single()[d] << "  "
        << fmt_freq(freq) << "  " << fmt_dev(std::abs(freq - uniform)) << "  "
        << fmt_z(s.z[d]) << "\n";
  }
  out << "\nk  windows  chi2  df  p  good_delta  good_df  good_p  max_dev  argmax\n";
  for (const auto& rep : s.blocks) {
    out << rep.k << "  " << rep.total_windows << "  " << fmt_stat(rep.naive_chi2)
        << "  " << rep.naive_df << "  " << fmt_pvalue(rep.p_naive) << "  ";
    if (rep.good_delta_chi2)
      out << fmt_stat(*rep.good_delta_chi2) << "  " << rep.good_df << "  "
          << fmt_pvalue(*rep.p_good);
    else
      out << "-  -  -";
    out << "  " << fmt_dev(rep.max_abs_deviation) << "  " << rep.argmax_block
        << "\n";
  }
  if (bank.positional) {
    out << "\nk  category  windows  chi2  df  p  good_delta  good_df  good_p"
           "  max_dev  argmax\n";
    for (int k = 1; k <= bank.k_max; ++k)
      for (int c = 0; c < kNumCategories; ++c) {
        const auto& rep = s.positional[k - 1][c];
        out << k << "  " << category_name(static_cast<BlockCategory>(c)) << "  "
            << rep.total_windows << "  " << fmt_stat(rep.naive_chi2) << "  "
            << rep.naive_df << "  " << fmt_pvalue(rep.p_naive) << "  ";
        if (rep.good_delta_chi2)
          out << fmt_stat(*rep.good_delta_chi2) << "  " << rep.good_df << "  "
              << fmt_pvalue(*rep.p_good);
        else
          out << "-  -  -";
        out << "  " << fmt_dev(rep.max_abs_deviation) << "  " << rep.argmax_block
            << "\n";
      }
  }
  return out.str();
}

std::string analyze_report_csv(const CounterBank& bank) {
  const AnalyzeSummary s = summarize(bank);
  std::ostringstream out;
  out << "digit,count,frequency,deviation,z_score\n";
  const double uniform = 1.0 / bank.base;
  for (int d = 0; d < bank.base; ++d) {
    const double freq =
        static_cast<double>(bank.single()[d]) / static_cast<double>(bank.D);
    out << block_label(d, bank.base, 1) << ',' << bank.single()[d] << ','
        << fmt_freq(freq) << ',' << fmt_dev(std::abs(freq - uniform)) << ','
        << fmt_z(s.z[d]) << '\n';
  }
  out << "\nk,windows,chi2,df,p_value,good_delta_chi2,good_df,good_p_value,"
         "max_abs_deviation,argmax_block\n";
  for (const auto& rep : s.blocks) stat_report_csv_row(out, rep);
  if (bank.positional) {
    out << "\nk,category,windows,chi2,df,p_value,good_delta_chi2,good_df,"
           "good_p_value,max_abs_deviation,argmax_block\n";
    for (int k = 1; k <= bank.k_max; ++k)
      for (int c = 0; c < kNumCategories; ++c) {
        out << k << ',' << category_name(static_cast<BlockCategory>(c)) << ',';
        std::ostringstream row;
        stat_report_csv_row(row, s.positional[k - 1][c]);
        const std::string r = row.str();
        out << r.substr(r.find(',') + 1);  // drop the duplicate leading k
      }
  }
  return out.str();
}

Json census_report_json(int base, std::uint64_t terms, int k,
                        std::uint64_t min_length, std::uint64_t qualifying,
                        const std::vector<CensusRow>& rows) {
  Json j = report_header("per-term");
  j["base"] = base;
  j["terms"] = terms;
  j["k"] = k;
  j["min_length"] = min_length;
  j["qualifying_terms"] = qualifying;
  Json arr = Json::array();
  for (const auto& row : rows) {
    Json e;
    e["epsilon"] = fmt_freq(row.epsilon);
    e["count"] = row.count;
    e["fraction"] = fmt_freq(row.fraction);
    arr.push_back(std::move(e));
  }
  j["rows"] = std::move(arr);
  return j;
}

std::string census_report_text(int base, std::uint64_t terms, int k,
                               std::uint64_t min_length, std::uint64_t qualifying,
                               const std::vector<CensusRow>& rows) {
  std::ostringstream out;
  out << "per-term census: base " << base << ", terms " << terms << ", k " << k
      << ", min_length " << min_length << ", qualifying " << qualifying << "\n";
  out << "epsilon  count  fraction\n";
  for (const auto& row : rows)
    out << fmt_freq(row.epsilon) << "  " << row.count << "  "
        << fmt_freq(row.fraction) << "\n";
  return out.str();
}

std::string census_report_csv(const std::vector<CensusRow>& rows) {
  std::ostringstream out;
  out << "epsilon,count,fraction\n";
  for (const auto& row : rows)
    out << fmt_freq(row.epsilon) << ',' << row.count << ','
        << fmt_freq(row.fraction) << '\n';
  return out.str();
}

Json regress_report_json(std::size_t points, const RegressionFit& fit) {
  Json j = report_header("regress");
  j["points"] = points;
  j["coefficient"] = fmt_fit(fit.coefficient);
  j["exponent"] = fmt_fit(fit.exponent);
  j["r_squared"] = fmt_fit(fit.r_squared);
  return j;
}

std::string regress_report_text(std::size_t points, const RegressionFit& fit) {
  std::ostringstream out;
  out << "log-log fit over " << points << " points: dev = "
      << fmt_fit(fit.coefficient) << " * D^" << fmt_fit(fit.exponent)
      << "  (R^2 = " << fmt_fit(fit.r_squared) << ")\n";
  return out.str();
}

std::string regress_report_csv(const RegressionFit& fit) {
  std::ostringstream out;
  out << "coefficient,exponent,r_squared\n";
  out << fmt_fit(fit.coefficient) << ',' << fmt_fit(fit.exponent) << ','
      << fmt_fit(fit.r_squared) << '\n';
  return out.str();
}

Json counterexample_report_json(const CounterexampleStats& st) {
  Json j = report_header("counterexample");
  j["columns"] = st.N;
  j["digits"] = st.L;
  Json singles, sfreq, diag, dmass;
  double max_single = 0, max_diag = 0;
  for (int d = 0; d < 10; ++d) {
    const std::string label = std::to_string(d);
    const double f = static_cast<double>(st.single[d]) / static_cast<double>(st.L);
    const double m =
        static_cast<double>(st.diagonal[d]) / static_cast<double>(st.L - 1);
    singles[label] = st.single[d];
    sfreq[label] = fmt_freq(f);
    diag[label] = st.diagonal[d];
    dmass[label] = fmt_freq(m);
    max_single = std::max(max_single, std::abs(f - 0.1));
    max_diag = std::max(max_diag, std::abs(m - 0.1));
  }
  j["single_counts"] = std::move(singles);
  j["single_frequencies"] = std::move(sfreq);
  j["diagonal_2block_counts"] = std::move(diag);
  j["diagonal_2block_masses"] = std::move(dmass);
  j["offdiagonal_2block_total"] = st.offdiagonal_total;
  j["max_single_deviation"] = fmt_dev(max_single);
  j["max_diagonal_deviation"] = fmt_dev(max_diag);
  return j;
}

std::string counterexample_report_text(const CounterexampleStats& st) {
  const Json j = counterexample_report_json(st);
  std::ostringstream out;
  out << "counterexample array: columns " << st.N << ", digits " << st.L << "\n";
  out << "digit  count  frequency  diag_2block  diag_mass\n";
  for (int d = 0; d < 10; ++d) {
    const std::string label = std::to_string(d);
    out << d << "  " << st.single[d] << "  "
        << j["single_frequencies"][label].get<std::string>() << "  "
        << st.diagonal[d] << "  "
        << j["diagonal_2block_masses"][label].get<std::string>() << "\n";
  }
  out << "offdiagonal 2-block total: " << st.offdiagonal_total << "\n";
  out << "max |single freq - 1/10|: "
      << j["max_single_deviation"].get<std::string>() << "\n";
  out << "max |diag mass - 1/10|: "
      << j["max_diagonal_deviation"].get<std::string>() << "\n";
  return out.str();
}

std::string counterexample_report_csv(const CounterexampleStats& st) {
  const Json j = counterexample_report_json(st);
  std::ostringstream out;
  out << "digit,count,frequency,diagonal_2block_count,diagonal_2block_mass\n";
  for (int d = 0; d < 10; ++d) {
    const std::string label = std::to_string(d);
    out << d << ',' << st.single[d] << ','
        << j["single_frequencies"][label].get<std::string>() << ','
        << st.diagonal[d] << ','
        << j["diagonal_2block_masses"][label].get<std::string>() << '\n';
  }
  out << "\noffdiagonal_2block_total," << st.offdiagonal_total << '\n';
  return out.str();
}

Json sigma_census_report_json(std::uint64_t max_index, const BigNat& cap,
                              const std::vector<SigmaCensusRow>& rows) {
  Json j = report_header("sigma-census");
  j["max_index"] = max_index;
  j["value_cap"] = cap.get_str();
  Json arr = Json::array();
  for (const auto& row : rows) {
    Json e;
    e["n"] = row.n;
    e["fib"] = row.fib.get_str();
    e["in_range"] = row.in_range;
    if (row.in_range) e["witness"] = row.witness;
    e["multiple_of_6"] = row.multiple_of_6;
    e["exception"] = row.exception;
    arr.push_back(std::move(e));
  }
  j["rows"] = std::move(arr);
  return j;
}

std::string sigma_census_report_csv(const std::vector<SigmaCensusRow>& rows) {
  std::ostringstream out;
  out << "n,F_n,in_range,witness,multiple_of_6,exception\n";
  for (const auto& row : rows) {
    out << row.n << ',' << row.fib.get_str() << ','
        << (row.in_range ? "true" : "false") << ',';
    if (row.in_range) out << row.witness;
    out << ',' << (row.multiple_of_6 ? "true" : "false") << ','
        << (row.exception ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string sigma_census_report_text(const std::vector<SigmaCensusRow>& rows) {
  std::ostringstream out;
  out << "n  F_n  in_range  witness  multiple_of_6  exception\n";
  for (const auto& row : rows) {
    out << row.n << "  " << row.fib.get_str() << "  "
        << (row.in_range ? "yes" : "no") << "  ";
    if (row.in_range)
      out << row.witness;
    else
      out << "-";
    out << "  " << (row.multiple_of_6 ? "yes" : "no") << "  "
        << (row.exception ? "yes" : "no") << "\n";
  }
  return out.str();
}

Json baselines_report_json(int base, std::uint64_t K) {
  Json j = report_header("baselines");
  j["base"] = base;
  Json benford;
  for (int d = 1; d < base; ++d)
    benford[block_label(d, base, 1)] = fmt_freq(benford_freq(d, base));
  j["benford"] = std::move(benford);
  const TrailingDistribution dist = trailing_digit_distribution(base);
  Json trailing;
  trailing["period"] = dist.period;
  Json counts, freqs;
  for (int d = 0; d < base; ++d) {
    const std::string label = block_label(d, base, 1);
    counts[label] = dist.counts[d];
    freqs[label] = fmt_freq(static_cast<double>(dist.counts[d]) /
                            static_cast<double>(dist.period));
  }
  trailing["counts"] = std::move(counts);
  trailing["frequencies"] = std::move(freqs);
  j["trailing"] = std::move(trailing);
  Json iid;
  iid["K"] = K;
  iid["expected_max_deviation"] = fmt_dev(iid_max_dev_baseline(K, base));
  j["iid_baseline"] = std::move(iid);
  return j;
}

std::string baselines_report_text(int base, std::uint64_t K) {
  const Json j = baselines_report_json(base, K);
  std::ostringstream out;
  out << "baselines for base " << base << "\n\nleading digit (Benford)\n";
  for (auto& [label, v] : j["benford"].items())
    out << label << "  " << v.get<std::string>() << "\n";
  out << "\ntrailing digit over one Pisano period (period "
      << j["trailing"]["period"].get<std::uint64_t>() << ")\n";
  for (auto& [label, v] : j["trailing"]["frequencies"].items())
    out << label << "  "
        << j["trailing"]["counts"][label].get<std::uint64_t>() << "/"
        << j["trailing"]["period"].get<std::uint64_t>() << "  "
        << v.get<std::string>() << "\n";
  out << "\niid expected max single-digit deviation at K = " << K << ": "
      << j["iid_baseline"]["expected_max_deviation"].get<std::string>() << "\n";
  return out.str();
}

std::string baselines_report_csv(int base, std::uint64_t K) {
  const Json j = baselines_report_json(base, K);
  std::ostringstream out;
  out << "digit,benford_frequency\n";
  for (auto& [label, v] : j["benford"].items())
    out << label << ',' << v.get<std::string>() << '\n';
  out << "\ndigit,trailing_count,period,trailing_frequency\n";
  for (auto& [label, v] : j["trailing"]["frequencies"].items())
    out << label << ',' << j["trailing"]["counts"][label].get<std::uint64_t>()
        << ',' << j["trailing"]["period"].get<std::uint64_t>() << ','
        << v.get<std::string>() << '\n';
  out << "\nK,iid_expected_max_deviation\n";
  out << K << ',' << j["iid_baseline"]["expected_max_deviation"].get<std::string>()
      << '\n';
  return out.str();
}

}  // namespace fibconst
