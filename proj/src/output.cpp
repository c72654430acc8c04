#include "noisyemo/output.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "noisyemo/errors.hpp"

namespace noisyemo {

using nlohmann::ordered_json;

SummaryRow summary_row(const AggregateReport& report) {
    const ExperimentConfig& c = report.config;
    SummaryRow row;
    row.algorithm = std::string(algorithm_name(c.algorithm));
    row.objective = std::string(objective_name(c.objective));
    row.n = c.n;
    row.mu = c.algorithm == Algorithm::Nsga2 ? c.nsga2.mu : 0;
    row.pc = c.crossover_prob();
    row.noise_kind = std::string(noise_kind_name(c.noise.kind));
    row.delta = c.noise.delta;
    row.p = c.noise.p;
    row.sigma = c.noise.sigma;
    row.runs = report.runs.size();
    row.success_rate = report.success_rate;
    row.mean_evals = report.mean_evals;
    row.median_evals = report.median_evals;
    row.stddev_evals = report.stddev_evals;
    row.budget = c.budget;
    row.seed = c.seed;
    return row;
}

std::string format_number(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

void write_csv(std::ostream& out, std::span<const AggregateReport> reports) {
    out << kCsvHeader << '\n';
    for (const auto& report : reports) {
        const SummaryRow r = summary_row(report);
        out << r.algorithm << ',' << r.objective << ',' << r.n << ',' << r.mu << ','
            << format_number(r.pc) << ',' << r.noise_kind << ',' << format_number(r.delta) << ','
            << format_number(r.p) << ',' << format_number(r.sigma) << ',' << r.runs << ','
            << format_number(r.success_rate) << ',' << format_number(r.mean_evals) << ','
            << format_number(r.median_evals) << ',' << format_number(r.stddev_evals) << ','
            << r.budget << ',' << r.seed << '\n';
    }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

template <typename T>
T parse_field(const std::string& text, std::size_t line_no, std::string_view column) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc{} || res.ptr != end) {
        throw ConfigError("CSV line " + std::to_string(line_no) + ": bad " + std::string(column) +
                          " value '" + text + "'");
    }
    return value;
}

} // namespace

std::vector<SummaryRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("CSV input is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw ConfigError("CSV header mismatch: '" + line + "'");

    std::vector<SummaryRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 16) {
            throw ConfigError("CSV line " + std::to_string(line_no) + ": expected 16 fields, got " +
                              std::to_string(f.size()));
        }
        SummaryRow r;
        r.algorithm = f[0];
        r.objective = f[1];
        r.n = parse_field<std::size_t>(f[2], line_no, "n");
        r.mu = parse_field<std::size_t>(f[3], line_no, "mu");
        r.pc = parse_field<double>(f[4], line_no, "pc");
        r.noise_kind = f[5];
        r.delta = parse_field<double>(f[6], line_no, "delta");
        r.p = parse_field<double>(f[7], line_no, "p");
        r.sigma = parse_field<double>(f[8], line_no, "sigma");
        r.runs = parse_field<std::size_t>(f[9], line_no, "runs");
        r.success_rate = parse_field<double>(f[10], line_no, "success_rate");
        r.mean_evals = parse_field<double>(f[11], line_no, "mean_evals");
        r.median_evals = parse_field<double>(f[12], line_no, "median_evals");
        r.stddev_evals = parse_field<double>(f[13], line_no, "stddev_evals");
        r.budget = parse_field<std::uint64_t>(f[14], line_no, "budget");
        r.seed = parse_field<std::uint64_t>(f[15], line_no, "seed");
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_trace_csv(std::ostream& out, std::span<const AggregateReport> reports) {
    out << kTraceCsvHeader << '\n';
    for (std::size_t cell = 0; cell < reports.size(); ++cell) {
        const ExperimentConfig& c = reports[cell].config;
        std::ostringstream prefix;
        prefix << cell << ',' << algorithm_name(c.algorithm) << ',' << objective_name(c.objective)
               << ',' << c.n << ',' << noise_kind_name(c.noise.kind) << ','
               << format_number(c.noise.delta) << ',' << format_number(c.noise.p) << ','
               << format_number(c.noise.sigma) << ',';
        const std::string head = prefix.str();
        for (const auto& run : reports[cell].runs) {
            for (const auto& t : run.trace) {
                out << head << run.run_index << ',' << t.generation << ',' << t.evaluations << ','
                    << t.coverage << ',' << t.population_size << '\n';
            }
        }
    }
}

ordered_json config_to_json(const ExperimentConfig& config) {
    const ExperimentConfig c = config.resolved();
    ordered_json j;
    j["algorithm"] = algorithm_name(c.algorithm);
    j["objective"] = objective_name(c.objective);
    j["n"] = c.n;
    if (c.algorithm == Algorithm::Nsga2) {
        j["mu"] = c.nsga2.mu;
    } else {
        j["mu"] = nullptr;
    }
    j["pc"] = c.crossover_prob();
    j["crossover"] = crossover_name(c.crossover());
    j["mutation_rate"] = c.algorithm == Algorithm::Nsga2 ? c.nsga2.rate_for(c.n) : c.gsemo.rate_for(c.n);
    j["noise"] = {{"kind", noise_kind_name(c.noise.kind)},
                  {"delta", c.noise.delta},
                  {"p", c.noise.p},
                  {"sigma", c.noise.sigma}};
    j["runs"] = c.runs;
    j["budget"] = c.budget;
    j["seed"] = c.seed;
    j["trace"] = c.trace;
    // Every fresh noisy draw is one evaluation; for GSEMO that includes the
    // re-draw of all population members each generation.
    j["evaluation_accounting"] = c.algorithm == Algorithm::Nsga2
                                     ? "2*mu per generation (parents re-drawn + offspring)"
                                     : "1 + |P_t| per generation (offspring + re-drawn population)";
    return j;
}

ordered_json run_to_json(const RunRecord& run) {
    ordered_json j;
    j["run_index"] = run.run_index;
    j["outcome"] = outcome_name(run.outcome);
    j["evaluations_used"] = run.evaluations_used;
    j["generations_used"] = run.generations_used;
    j["final_coverage_count"] = run.final_coverage_count;
    j["max_population_size"] = run.max_population_size;
    auto trace = ordered_json::array();
    for (const auto& t : run.trace) {
        trace.push_back({{"generation", t.generation},
                         {"evaluations", t.evaluations},
                         {"coverage", t.coverage},
                         {"population_size", t.population_size}});
    }
    j["trace"] = std::move(trace);
    return j;
}

ordered_json reports_to_json(const ordered_json& invocation, std::span<const AggregateReport> reports) {
    ordered_json out;
    out["config"] = invocation;
    auto list = ordered_json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        ordered_json cell;
        cell["index"] = i;
        const ordered_json config = config_to_json(r.config);
        for (const auto& [key, value] : config.items()) cell[key] = value;

        ordered_json agg;
        agg["front_size"] = r.front_size;
        agg["success_rate"] = r.success_rate;
        agg["mean_evals"] = r.mean_evals;
        agg["median_evals"] = r.median_evals;
        agg["stddev_evals"] = r.stddev_evals;
        agg["mean_generations"] = r.mean_generations;

        auto runs = ordered_json::array();
        for (const auto& run : r.runs) runs.push_back(run_to_json(run));

        list.push_back({{"cell", std::move(cell)}, {"aggregate", std::move(agg)}, {"runs", std::move(runs)}});
    }
    out["reports"] = std::move(list);
    return out;
}

namespace {

ordered_json estimate_json(const ProbabilityEstimate& e) {
    return {{"successes", e.successes},
            {"trials", e.trials},
            {"estimate", e.estimate},
            {"lower99", e.lower},
            {"upper99", e.upper}};
}

} // namespace

ordered_json probe_suite_to_json(const ProbeSuiteReport& report) {
    ordered_json j;
    j["seed"] = report.config.seed;

    auto mutation = ordered_json::array();
    for (const auto& m : report.mutation) {
        mutation.push_back({{"n", m.n},
                            {"parent", parent_class_name(m.parent)},
                            {"bound", m.bound},
                            {"estimate", estimate_json(m.estimate)},
                            {"verdict", verdict_name(m.verdict)}});
    }
    j["mutation_to_front"] = std::move(mutation);

    j["clone"] = {{"n", report.clone.n},
                  {"exact", report.clone.exact},
                  {"estimate", estimate_json(report.clone.estimate)},
                  {"verdict", verdict_name(report.clone.verdict)}};

    auto crowding = ordered_json::array();
    for (const auto& c : report.crowding) {
        crowding.push_back({{"objective", objective_name(c.objective)},
                            {"n", c.n},
                            {"p", c.p},
                            {"generations", c.generations},
                            {"runs", c.runs},
                            {"bound", c.report.bound},
                            {"layers_checked", c.report.layers_checked},
                            {"max_positive", c.report.max_positive},
                            {"violations", c.report.violations},
                            {"always_separated", c.always_separated}});
    }
    j["crowding_bound"] = std::move(crowding);

    const auto& s = report.shrink;
    j["shrinking_steps"] = {{"objective", objective_name(report.config.shrink_objective)},
                            {"n", report.config.shrink_n},
                            {"p", s.p},
                            {"alpha", s.alpha},
                            {"threshold", s.threshold},
                            {"generations", report.shrink_generations},
                            {"episodes", report.shrink_episodes},
                            {"frequency", estimate_json(s.frequency)},
                            {"required", s.required},
                            {"verdict", verdict_name(s.verdict)}};

    const auto& mp = report.max_population;
    auto runs = ordered_json::array();
    for (const auto& r : mp.runs) {
        runs.push_back({{"max_population", r.max_population},
                        {"max_coverage", r.max_coverage},
                        {"covered", r.covered},
                        {"evaluations", r.evaluations}});
    }
    j["max_population"] = {{"objective", objective_name(mp.objective)},
                           {"n", mp.n},
                           {"p", mp.p},
                           {"budget", mp.budget},
                           {"runs", std::move(runs)}};
    j["passed"] = report.passed();
    return j;
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

} // namespace noisyemo
