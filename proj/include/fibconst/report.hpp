#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fibconst/constructions.hpp"
#include "fibconst/counter_bank.hpp"
#include "fibconst/diagnostics.hpp"
#include "fibconst/stats.hpp"

namespace fibconst {

// All reports are deterministic: keys appear in a fixed insertion order and
// every derived real is rendered through one of the pinned formats below
// (counts stay integers). Two runs with equal configurations emit
// byte-identical files.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

std::string fmt_freq(double v);    // fixed, 8 decimal places
std::string fmt_dev(double v);     // scientific, 3 significant figures
std::string fmt_stat(double v);    // fixed, 2 decimal places
std::string fmt_pvalue(double v);  // fixed, 3 decimal places; "<1e-06" below
std::string fmt_z(double v);       // signed fixed, 3 decimal places
std::string fmt_fit(double v);     // fixed, 4 decimal places

std::string render_json(const Json& j);

Json analyze_report_json(const CounterBank& bank, bool emit_counts);
std::string analyze_report_text(const CounterBank& bank);
std::string analyze_report_csv(const CounterBank& bank);

Json census_report_json(int base, std::uint64_t terms, int k,
                        std::uint64_t min_length, std::uint64_t qualifying,
                        const std::vector<CensusRow>& rows);
std::string census_report_text(int base, std::uint64_t terms, int k,
                               std::uint64_t min_length, std::uint64_t qualifying,
                               const std::vector<CensusRow>& rows);
std::string census_report_csv(const std::vector<CensusRow>& rows);

Json regress_report_json(std::size_t points, const RegressionFit& fit);
std::string regress_report_text(std::size_t points, const RegressionFit& fit);
std::string regress_report_csv(const RegressionFit& fit);

Json counterexample_report_json(const CounterexampleStats& st);
std::string counterexample_report_text(const CounterexampleStats& st);
std::string counterexample_report_csv(const CounterexampleStats& st);

Json sigma_census_report_json(std::uint64_t max_index, const BigNat& cap,
                              const std::vector<SigmaCensusRow>& rows);
std::string sigma_census_report_text(const std::vector<SigmaCensusRow>& rows);
std::string sigma_census_report_csv(const std::vector<SigmaCensusRow>& rows);

Json baselines_report_json(int base, std::uint64_t K);
std::string baselines_report_text(int base, std::uint64_t K);
std::string baselines_report_csv(int base, std::uint64_t K);

}  // namespace fibconst
