#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "noisyemo/errors.hpp"
#include "noisyemo/experiments.hpp"
#include "noisyemo/output.hpp"
#include "noisyemo/pareto.hpp"
#include "noisyemo/theory_probe.hpp"

namespace {

using namespace noisyemo;
using nlohmann::ordered_json;

enum ExitCode { kOk = 0, kConfigError = 1, kIoError = 2 };

struct CommonOptions {
    std::string algorithm = "nsga2";
    std::size_t mu = 0;
    std::optional<double> pc;
    std::string crossover = "onepoint";
    std::size_t runs = 50;
    std::uint64_t budget = 0;
    std::uint64_t seed = 1;
    bool trace = false;
    std::string out;
    std::string trace_out;
    std::string format = "csv";
    std::size_t workers = 0;
};

struct RunOptions {
    std::string objective = "lotz";
    std::size_t n = 20;
    std::string noise = "none";
    std::optional<double> delta;
    std::optional<double> p;
    std::optional<double> sigma;
};

struct SweepOptions {
    std::string preset;
    std::vector<std::string> objectives{"lotz", "omm"};
    std::vector<std::size_t> ns{20};
    std::string noise = "bernoulli";
    std::optional<double> delta;
    std::vector<double> p;
    std::vector<double> q;
};

struct ProbeOptions {
    std::uint64_t seed = 1;
    std::uint64_t mutation_trials = 1'000'000;
    std::uint64_t crowding_generations = 1000;
    std::uint64_t shrink_steps = 10'000;
    std::size_t maxpop_runs = 5;
    std::string out;
};

struct OracleOptions {
    std::string objective = "lotz";
    std::size_t n = 4;
    bool brute = false;
    std::string format = "csv";
    std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--algorithm", o.algorithm, "nsga2 | gsemo")->capture_default_str();
    cmd->add_option("--mu", o.mu, "NSGA-II population size (default 9(n+1))");
    cmd->add_option("--pc", o.pc, "crossover probability (default 0.9)");
    cmd->add_option("--crossover", o.crossover, "onepoint | uniform")->capture_default_str();
    cmd->add_option("--runs", o.runs, "independent runs per cell")->capture_default_str();
    cmd->add_option("--budget", o.budget, "evaluation budget (default 10 n^3)");
    cmd->add_option("--seed", o.seed, "base seed")->capture_default_str();
    cmd->add_flag("--trace", o.trace, "record per-generation coverage");
    cmd->add_option("--out", o.out, "output file (default stdout)");
    cmd->add_option("--trace-out", o.trace_out, "long-format trace CSV (implies --trace)");
    cmd->add_option("--format", o.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)")->capture_default_str();
}

ExperimentConfig base_config(const CommonOptions& o) {
    ExperimentConfig c;
    c.algorithm = parse_algorithm(o.algorithm);
    c.nsga2.mu = o.mu;
    c.nsga2.crossover = parse_crossover(o.crossover);
    c.gsemo.crossover = c.nsga2.crossover;
    if (o.pc) {
        c.nsga2.crossover_prob = *o.pc;
        c.gsemo.crossover_prob = *o.pc;
    }
    if (o.runs == 0) throw ConfigError("--runs must be at least 1");
    c.runs = o.runs;
    c.budget = o.budget;
    c.seed = o.seed;
    c.trace = o.trace || !o.trace_out.empty();
    return c;
}

ordered_json common_json(const CommonOptions& o) {
    ordered_json j;
    j["algorithm"] = o.algorithm;
    j["mu"] = o.mu;
    j["pc"] = o.pc ? ordered_json(*o.pc) : ordered_json(nullptr);
    j["crossover"] = o.crossover;
    j["runs"] = o.runs;
    j["budget"] = o.budget;
    j["seed"] = o.seed;
    j["trace"] = o.trace || !o.trace_out.empty();
    return j;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw IoError("failed writing to stdout");
    } else {
        write_text_file(path, text);
    }
}

void emit_reports(const CommonOptions& o, const ordered_json& invocation,
                  const std::vector<AggregateReport>& reports) {
    std::string text;
    if (o.format == "json") {
        text = reports_to_json(invocation, reports).dump(2) + "\n";
    } else {
        std::ostringstream csv;
        write_csv(csv, reports);
        text = csv.str();
    }
    emit(o.out, text);
    if (!o.trace_out.empty()) {
        std::ostringstream trace;
        write_trace_csv(trace, reports);
        write_text_file(o.trace_out, trace.str());
    }
}

NoiseModel noise_from(const RunOptions& r) {
    const NoiseKind kind = parse_noise_kind(r.noise);
    switch (kind) {
    case NoiseKind::None:
        if (r.p || r.sigma || r.delta) throw ConfigError("--p/--delta/--sigma need --noise bernoulli or gaussian");
        return NoiseModel::none();
    case NoiseKind::Bernoulli:
        if (!r.p) throw ConfigError("--noise bernoulli needs --p");
        if (r.sigma) throw ConfigError("--sigma applies to --noise gaussian only");
        return NoiseModel::bernoulli(r.delta.value_or(static_cast<double>(r.n) + 1.0), *r.p);
    case NoiseKind::Gaussian:
        if (!r.sigma) throw ConfigError("--noise gaussian needs --sigma");
        if (r.p || r.delta) throw ConfigError("--p/--delta apply to --noise bernoulli only");
        return NoiseModel::gaussian(*r.sigma);
    }
    throw ConfigError("unknown noise kind");
}

int cmd_run(const CommonOptions& o, const RunOptions& r) {
    ExperimentConfig c = base_config(o);
    c.objective = parse_objective(r.objective);
    c.n = r.n;
    c.noise = noise_from(r);
    c = c.resolved();
    c.validate();

    ordered_json inv;
    inv["command"] = "run";
    inv.update(common_json(o));
    inv["objective"] = objective_name(c.objective);
    inv["n"] = r.n;
    inv["noise"] = {{"kind", noise_kind_name(c.noise.kind)},
                    {"delta", c.noise.delta},
                    {"p", c.noise.p},
                    {"sigma", c.noise.sigma}};

    const std::vector<AggregateReport> reports{run_batch(c, o.workers)};
    emit_reports(o, inv, reports);
    return kOk;
}

int cmd_sweep(const CommonOptions& o, const SweepOptions& s) {
    const ExperimentConfig base = base_config(o);
    SweepGrid grid;
    if (s.preset == "table1") {
        grid = table1_grid(base);
    } else if (s.preset == "table2") {
        grid = table2_grid(base);
    } else if (s.preset.empty()) {
        grid.base = base;
        for (const auto& name : s.objectives) grid.objectives.push_back(parse_objective(name));
        grid.ns = s.ns;
        grid.noise_kind = parse_noise_kind(s.noise);
        grid.delta = s.delta;
        if (grid.noise_kind == NoiseKind::Bernoulli) {
            if (!s.q.empty()) throw ConfigError("--q applies to --noise gaussian only");
            grid.noise_values = s.p;
        } else if (grid.noise_kind == NoiseKind::Gaussian) {
            if (!s.p.empty()) throw ConfigError("--p applies to --noise bernoulli only");
            grid.noise_values = s.q;
        }
    } else {
        throw ConfigError("unknown --preset '" + s.preset + "' (expected table1 or table2)");
    }

    ordered_json inv;
    inv["command"] = "sweep";
    inv.update(common_json(o));
    inv["preset"] = s.preset.empty() ? ordered_json(nullptr) : ordered_json(s.preset);
    ordered_json objectives = ordered_json::array();
    for (auto id : grid.objectives) objectives.push_back(objective_name(id));
    inv["objectives"] = objectives;
    inv["n"] = grid.ns;
    inv["noise"] = noise_kind_name(grid.noise_kind);
    inv["delta"] = grid.delta ? ordered_json(*grid.delta) : ordered_json("n+1");
    inv["values"] = grid.noise_values;

    emit_reports(o, inv, sweep(grid, o.workers));
    return kOk;
}

int cmd_probe(const ProbeOptions& p) {
    ProbeSuiteConfig c;
    c.seed = p.seed;
    c.mutation_trials = p.mutation_trials;
    c.crowding_generations = p.crowding_generations;
    c.shrink_min_qualifying = p.shrink_steps;
    c.maxpop_runs = p.maxpop_runs;
    const auto report = run_probe_suite(c);
    emit(p.out, probe_suite_to_json(report).dump(2) + "\n");
    std::cerr << "probe suite: " << (report.passed() ? "pass" : "fail") << '\n';
    return kOk;
}

int cmd_oracle(const OracleOptions& o) {
    const ObjectiveId id = parse_objective(o.objective);
    if (o.n == 0) throw ConfigError("--n must be at least 1");
    if (o.brute && o.n > 20) throw ConfigError("--brute enumerates 2^n points; needs n <= 20");
    const auto front = o.brute ? brute_force_front(id, o.n) : pareto_front_oracle(id, o.n);

    std::ostringstream text;
    if (o.format == "json") {
        ordered_json j;
        j["objective"] = objective_name(id);
        j["n"] = o.n;
        j["method"] = o.brute ? "enumeration" : "closed_form";
        ordered_json points = ordered_json::array();
        for (const auto& f : front) points.push_back(ordered_json::array({f[0], f[1]}));
        j["front"] = points;
        text << j.dump(2) << '\n';
    } else {
        text << "f1,f2\n";
        for (const auto& f : front) text << f[0] << ',' << f[1] << '\n';
    }
    emit(o.out, text.str());
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Noisy evolutionary multiobjective optimisation: NSGA-II and GSEMO under posterior noise"};
    app.require_subcommand(1);

    CommonOptions run_common, sweep_common;
    RunOptions run;
    SweepOptions sw;
    ProbeOptions probe;
    OracleOptions oracle;

    auto* run_cmd = app.add_subcommand("run", "run one experiment cell");
    add_common(run_cmd, run_common);
    run_cmd->add_option("--objective", run.objective, "lotz | omm")->capture_default_str();
    run_cmd->add_option("--n", run.n, "bit-string length")->capture_default_str();
    run_cmd->add_option("--noise", run.noise, "none | bernoulli | gaussian")->capture_default_str();
    run_cmd->add_option("--delta", run.delta, "Bernoulli noise strength (default n+1)");
    run_cmd->add_option("--p", run.p, "Bernoulli noise probability");
    run_cmd->add_option("--sigma", run.sigma, "Gaussian standard deviation");

    auto* sweep_cmd = app.add_subcommand("sweep", "run a grid of cells");
    add_common(sweep_cmd, sweep_common);
    sweep_cmd->add_option("--preset", sw.preset, "table1 | table2 (overrides the grid options)");
    sweep_cmd->add_option("--objective", sw.objectives, "objectives, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    sweep_cmd->add_option("--n", sw.ns, "problem sizes, comma separated")->delimiter(',')->capture_default_str();
    sweep_cmd->add_option("--noise", sw.noise, "none | bernoulli | gaussian")->capture_default_str();
    sweep_cmd->add_option("--delta", sw.delta, "Bernoulli noise strength (default n+1)");
    sweep_cmd->add_option("--p", sw.p, "Bernoulli noise probabilities, comma separated")->delimiter(',');
    sweep_cmd->add_option("--q", sw.q, "Gaussian multipliers (sigma = n q), comma separated")->delimiter(',');

    auto* probe_cmd = app.add_subcommand("probe", "run the statistical probe suite (JSON output)");
    probe_cmd->add_option("--seed", probe.seed, "base seed")->capture_default_str();
    probe_cmd->add_option("--mutation-trials", probe.mutation_trials, "trials per mutation estimate")
        ->capture_default_str();
    probe_cmd->add_option("--crowding-generations", probe.crowding_generations,
                          "sampled generations per noise level")
        ->capture_default_str();
    probe_cmd->add_option("--shrink-steps", probe.shrink_steps, "qualifying GSEMO steps")->capture_default_str();
    probe_cmd->add_option("--maxpop-runs", probe.maxpop_runs, "GSEMO runs for the size probe")
        ->capture_default_str();
    probe_cmd->add_option("--out", probe.out, "output file (default stdout)");

    auto* oracle_cmd = app.add_subcommand("oracle", "print the true Pareto front");
    oracle_cmd->add_option("--objective", oracle.objective, "lotz | omm")->capture_default_str();
    oracle_cmd->add_option("--n", oracle.n, "bit-string length")->capture_default_str();
    oracle_cmd->add_flag("--brute", oracle.brute, "enumerate {0,1}^n instead of the closed form");
    oracle_cmd->add_option("--format", oracle.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    oracle_cmd->add_option("--out", oracle.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (*run_cmd) return cmd_run(run_common, run);
        if (*sweep_cmd) return cmd_sweep(sweep_common, sw);
        if (*probe_cmd) return cmd_probe(probe);
        if (*oracle_cmd) return cmd_oracle(oracle);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIoError;
    }
    return kConfigError;
}
