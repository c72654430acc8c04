#include "noisyemo/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "noisyemo/errors.hpp"
#include "noisyemo/pareto.hpp"

namespace noisyemo {

std::string_view algorithm_name(Algorithm a) noexcept {
    return a == Algorithm::Nsga2 ? "nsga2" : "gsemo";
}

Algorithm parse_algorithm(std::string_view name) {
    if (name == "nsga2") return Algorithm::Nsga2;
    if (name == "gsemo") return Algorithm::Gsemo;
    throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected nsga2 or gsemo)");
}

std::string_view outcome_name(Outcome o) noexcept {
    return o == Outcome::Covered ? "covered" : "budget_exhausted";
}

std::uint64_t default_budget(std::size_t n) noexcept {
    const auto m = static_cast<std::uint64_t>(n);
    return 10 * m * m * m;
}

std::size_t default_mu(std::size_t n) noexcept { return 9 * (n + 1); }

ExperimentConfig ExperimentConfig::resolved() const {
    ExperimentConfig out = *this;
    if (out.nsga2.mu == 0) out.nsga2.mu = default_mu(n);
    if (out.budget == 0) out.budget = default_budget(n);
    return out;
}

void ExperimentConfig::validate() const {
    if (n == 0) throw ConfigError("problem size n must be at least 1");
    if (runs == 0) throw ConfigError("runs must be at least 1");
    if (budget == 0) throw ConfigError("budget must be at least 1");
    noise.validate();
    if (algorithm == Algorithm::Nsga2) {
        nsga2.validate();
    } else {
        gsemo.validate();
    }
}

double ExperimentConfig::crossover_prob() const noexcept {
    return algorithm == Algorithm::Nsga2 ? nsga2.crossover_prob : gsemo.crossover_prob;
}

CrossoverKind ExperimentConfig::crossover() const noexcept {
    return algorithm == Algorithm::Nsga2 ? nsga2.crossover : gsemo.crossover;
}

namespace {

template <typename Engine>
RunRecord drive(Engine& engine, const ExperimentConfig& config, std::size_t run_index, Rng& rng) {
    RunRecord record;
    record.run_index = run_index;
    engine.initialize(rng);

    const std::size_t target = engine.front_size();
    std::size_t coverage = engine.coverage();
    record.max_population_size = engine.population().size();
    if (config.trace) record.trace.push_back({0, 0, coverage, engine.population().size()});

    while (coverage < target && engine.evaluations() <= config.budget) {
        const GenerationMetrics m = engine.step(rng);
        coverage = m.coverage;
        record.max_population_size = std::max(record.max_population_size, m.population_size);
        if (config.trace) {
            record.trace.push_back({m.generation, m.evaluations, m.coverage, m.population_size});
        }
    }

    record.outcome = coverage == target ? Outcome::Covered : Outcome::BudgetExhausted;
    record.evaluations_used = engine.evaluations();
    record.generations_used = engine.generation();
    record.final_coverage_count = coverage;
    return record;
}

} // namespace

RunRecord run_single(const ExperimentConfig& raw, std::size_t run_index) {
    const ExperimentConfig config = raw.resolved();
    config.validate();
    Rng rng(mix_seed(config.seed, run_index));
    if (config.algorithm == Algorithm::Nsga2) {
        Nsga2 engine(config.objective, config.n, config.noise, config.nsga2);
        return drive(engine, config, run_index, rng);
    }
    Gsemo engine(config.objective, config.n, config.noise, config.gsemo);
    return drive(engine, config, run_index, rng);
}

AggregateReport aggregate(const ExperimentConfig& raw, std::vector<RunRecord> runs) {
    AggregateReport report;
    report.config = raw.resolved();
    report.front_size = pareto_front_oracle(report.config.objective, report.config.n).size();
    report.runs = std::move(runs);
    if (report.runs.empty()) return report;

    const auto count = static_cast<double>(report.runs.size());
    std::vector<double> evals;
    evals.reserve(report.runs.size());
    double covered = 0.0;
    double generations = 0.0;
    for (const auto& r : report.runs) {
        evals.push_back(static_cast<double>(r.evaluations_used));
        generations += static_cast<double>(r.generations_used);
        if (r.outcome == Outcome::Covered) covered += 1.0;
    }
    report.success_rate = covered / count;
    report.mean_generations = generations / count;
    report.mean_evals = std::accumulate(evals.begin(), evals.end(), 0.0) / count;

    std::vector<double> sorted = evals;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    report.median_evals =
        sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);

    if (evals.size() > 1) {
        double ss = 0.0;
        for (double e : evals) ss += (e - report.mean_evals) * (e - report.mean_evals);
        report.stddev_evals = std::sqrt(ss / (count - 1.0));
    }
    return report;
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

AggregateReport run_batch(const ExperimentConfig& raw, std::size_t workers) {
    const ExperimentConfig config = raw.resolved();
    config.validate();
    std::vector<RunRecord> runs(config.runs);
    parallel_for(config.runs, workers, [&](std::size_t i) { runs[i] = run_single(config, i); });
    return aggregate(config, std::move(runs));
}

namespace {

std::uint64_t cell_seed(std::uint64_t base, const ExperimentConfig& c) {
    std::uint64_t s = mix_seed(base, static_cast<std::uint64_t>(c.algorithm));
    s = mix_seed(s, static_cast<std::uint64_t>(c.objective));
    s = mix_seed(s, c.n);
    s = mix_seed(s, static_cast<std::uint64_t>(c.noise.kind));
    s = mix_seed(s, std::bit_cast<std::uint64_t>(c.noise.delta));
    s = mix_seed(s, std::bit_cast<std::uint64_t>(c.noise.p));
    return mix_seed(s, std::bit_cast<std::uint64_t>(c.noise.sigma));
}

} // namespace

std::vector<ExperimentConfig> expand_grid(const SweepGrid& grid) {
    if (grid.objectives.empty()) throw ConfigError("sweep needs at least one objective");
    if (grid.ns.empty()) throw ConfigError("sweep needs at least one problem size");
    if (grid.noise_kind != NoiseKind::None && grid.noise_values.empty()) {
        throw ConfigError(grid.noise_kind == NoiseKind::Bernoulli
                              ? "sweep needs at least one noise probability"
                              : "sweep needs at least one sigma multiplier");
    }
    const std::vector<double> values =
        grid.noise_kind == NoiseKind::None ? std::vector<double>{0.0} : grid.noise_values;

    std::vector<ExperimentConfig> cells;
    for (ObjectiveId objective : grid.objectives) {
        for (std::size_t n : grid.ns) {
            for (double value : values) {
                ExperimentConfig c = grid.base;
                c.objective = objective;
                c.n = n;
                // Per-n defaults are recomputed unless the base pinned them.
                c.nsga2.mu = grid.base.nsga2.mu;
                c.budget = grid.base.budget;
                switch (grid.noise_kind) {
                case NoiseKind::None: c.noise = NoiseModel::none(); break;
                case NoiseKind::Bernoulli:
                    c.noise = NoiseModel::bernoulli(grid.delta.value_or(static_cast<double>(n) + 1.0),
                                                    value);
                    break;
                case NoiseKind::Gaussian:
                    c.noise = NoiseModel::gaussian(static_cast<double>(n) * value);
                    break;
                }
                c = c.resolved();
                c.validate();
                c.seed = cell_seed(grid.base.seed, c);
                cells.push_back(c);
            }
        }
    }
    return cells;
}

std::vector<AggregateReport> sweep(const SweepGrid& grid, std::size_t workers) {
    const auto cells = expand_grid(grid);

    // Flatten (cell, run) so small cells do not serialise the pool.
    std::vector<std::size_t> offsets(cells.size() + 1, 0);
    for (std::size_t c = 0; c < cells.size(); ++c) offsets[c + 1] = offsets[c] + cells[c].runs;
    std::vector<std::vector<RunRecord>> runs(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) runs[c].resize(cells[c].runs);

    parallel_for(offsets.back(), workers, [&](std::size_t job) {
        const auto cell = static_cast<std::size_t>(
            std::upper_bound(offsets.begin(), offsets.end(), job) - offsets.begin() - 1);
        const std::size_t run = job - offsets[cell];
        runs[cell][run] = run_single(cells[cell], run);
    });

    std::vector<AggregateReport> reports;
    reports.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        reports.push_back(aggregate(cells[c], std::move(runs[c])));
    }
    return reports;
}

std::vector<double> table1_noise_probabilities() {
    return {0.015625, 0.03125, 0.0625, 0.125, 0.25, 0.4, 0.5, 0.6, 0.75, 0.875, 0.9375, 0.96875};
}

std::vector<double> table2_sigma_multipliers() { return {0.0625, 0.125, 0.25, 0.5, 1.0}; }

SweepGrid table1_grid(const ExperimentConfig& base) {
    SweepGrid grid;
    grid.base = base;
    grid.base.algorithm = Algorithm::Nsga2;
    grid.objectives = {ObjectiveId::Lotz, ObjectiveId::OneMinMax};
    grid.ns = {20, 30, 40};
    grid.noise_kind = NoiseKind::Bernoulli;
    grid.noise_values = table1_noise_probabilities();
    return grid;
}

SweepGrid table2_grid(const ExperimentConfig& base) {
    SweepGrid grid;
    grid.base = base;
    grid.base.algorithm = Algorithm::Nsga2;
    grid.objectives = {ObjectiveId::Lotz, ObjectiveId::OneMinMax};
    grid.ns = {20, 30, 40};
    grid.noise_kind = NoiseKind::Gaussian;
    grid.noise_values = table2_sigma_multipliers();
    return grid;
}

} // namespace noisyemo
