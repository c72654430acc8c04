#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "noisyemo/experiments.hpp"
#include "noisyemo/theory_probe.hpp"

namespace noisyemo {

/// Tabular projection of one report; the CSV row.
struct SummaryRow {
    std::string algorithm;
    std::string objective;
    std::size_t n = 0;
    std::size_t mu = 0;  ///< 0 for GSEMO
    double pc = 0.0;
    std::string noise_kind;
    double delta = 0.0;
    double p = 0.0;
    double sigma = 0.0;
    std::size_t runs = 0;
    double success_rate = 0.0;
    double mean_evals = 0.0;
    double median_evals = 0.0;
    double stddev_evals = 0.0;
    std::uint64_t budget = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

inline constexpr std::string_view kCsvHeader =
    "algorithm,objective,n,mu,pc,noise_kind,delta,p,sigma,runs,success_rate,mean_evals,"
    "median_evals,stddev_evals,budget,seed";

inline constexpr std::string_view kTraceCsvHeader =
    "cell,algorithm,objective,n,noise_kind,delta,p,sigma,run,generation,evaluations,coverage,"
    "population_size";

SummaryRow summary_row(const AggregateReport& report);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

void write_csv(std::ostream& out, std::span<const AggregateReport> reports);
/// Throws ConfigError on a malformed header or row.
std::vector<SummaryRow> read_csv(std::istream& in);

/// Long format, one row per trace point, for coverage-vs-generation plots.
void write_trace_csv(std::ostream& out, std::span<const AggregateReport> reports);

nlohmann::ordered_json config_to_json(const ExperimentConfig& config);
nlohmann::ordered_json run_to_json(const RunRecord& run);
/// {config, reports: [{cell, aggregate, runs}]}
nlohmann::ordered_json reports_to_json(const nlohmann::ordered_json& invocation,
                                       std::span<const AggregateReport> reports);
nlohmann::ordered_json probe_suite_to_json(const ProbeSuiteReport& report);

/// Writes the whole string or throws IoError naming the path.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

} // namespace noisyemo
