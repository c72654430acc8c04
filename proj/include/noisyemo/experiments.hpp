#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "noisyemo/gsemo.hpp"
#include "noisyemo/noise.hpp"
#include "noisyemo/nsga2.hpp"
#include "noisyemo/objectives.hpp"

namespace noisyemo {

enum class Algorithm { Nsga2, Gsemo };

std::string_view algorithm_name(Algorithm a) noexcept;
/// "nsga2" | "gsemo"; throws ConfigError.
Algorithm parse_algorithm(std::string_view name);

/// One experiment cell. Zero mu / budget mean "use the default":
/// mu = 9 (n + 1) and budget = 10 n^3.
struct ExperimentConfig {
    Algorithm algorithm = Algorithm::Nsga2;
    ObjectiveId objective = ObjectiveId::Lotz;
    std::size_t n = 20;
    NoiseModel noise;
    Nsga2Config nsga2;
    GsemoConfig gsemo;
    std::size_t runs = 50;
    std::uint64_t budget = 0;
    std::uint64_t seed = 1;
    bool trace = false;

    /// Fills in default mu and budget.
    ExperimentConfig resolved() const;
    /// Throws ConfigError.
    void validate() const;
    double crossover_prob() const noexcept;
    CrossoverKind crossover() const noexcept;
};

std::uint64_t default_budget(std::size_t n) noexcept;
std::size_t default_mu(std::size_t n) noexcept;

enum class Outcome { Covered, BudgetExhausted };

std::string_view outcome_name(Outcome o) noexcept;

struct TracePoint {
    std::uint64_t generation = 0;
    std::uint64_t evaluations = 0;
    std::size_t coverage = 0;
    std::size_t population_size = 0;

    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct RunRecord {
    std::size_t run_index = 0;
    Outcome outcome = Outcome::BudgetExhausted;
    std::uint64_t evaluations_used = 0;
    std::uint64_t generations_used = 0;
    std::size_t final_coverage_count = 0;
    std::size_t max_population_size = 0;
    std::vector<TracePoint> trace;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct AggregateReport {
    ExperimentConfig config;  ///< resolved
    std::size_t front_size = 0;
    double success_rate = 0.0;
    /// Over all runs; exhausted runs contribute their capped count.
    double mean_evals = 0.0;
    double median_evals = 0.0;
    double stddev_evals = 0.0;  ///< sample standard deviation, 0 for a single run
    double mean_generations = 0.0;
    std::vector<RunRecord> runs;
};

/// Run seed = mix_seed(config.seed, run_index). Stops when the true Pareto
/// front is covered (checked after every generation, and once on P_0) or
/// once the evaluation count exceeds the budget.
RunRecord run_single(const ExperimentConfig& config, std::size_t run_index);

AggregateReport aggregate(const ExperimentConfig& config, std::vector<RunRecord> runs);

/// Executes every run on up to `workers` threads (0 = hardware concurrency).
/// The result does not depend on the worker count.
AggregateReport run_batch(const ExperimentConfig& config, std::size_t workers = 0);

/// Cartesian grid objective x n x noise value. For Bernoulli the values are
/// noise probabilities p (delta defaults to n + 1); for Gaussian they are
/// multipliers q with sigma = n q; for None the value list is ignored.
struct SweepGrid {
    ExperimentConfig base;
    std::vector<ObjectiveId> objectives;
    std::vector<std::size_t> ns;
    NoiseKind noise_kind = NoiseKind::Bernoulli;
    std::vector<double> noise_values;
    std::optional<double> delta;
};

/// Resolved per-cell configs in sweep order; cell seed derived from the base
/// seed and the cell coordinates. Throws ConfigError for empty lists.
std::vector<ExperimentConfig> expand_grid(const SweepGrid& grid);

std::vector<AggregateReport> sweep(const SweepGrid& grid, std::size_t workers = 0);

/// p in {2^-6..2^-2} + {0.4, 0.5, 0.6} + {1 - 2^-2..1 - 2^-5}, n in {20, 30, 40}, both objectives.
SweepGrid table1_grid(const ExperimentConfig& base);
/// q in {2^-4, 2^-3, 2^-2, 2^-1, 1}, n in {20, 30, 40}, both objectives.
SweepGrid table2_grid(const ExperimentConfig& base);

std::vector<double> table1_noise_probabilities();
std::vector<double> table2_sigma_multipliers();

/// Runs fn(0) .. fn(count - 1) on a small thread pool.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& fn);

} // namespace noisyemo
