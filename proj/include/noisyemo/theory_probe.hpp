#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "noisyemo/bitstring.hpp"
#include "noisyemo/fitness.hpp"
#include "noisyemo/gsemo.hpp"
#include "noisyemo/individual.hpp"
#include "noisyemo/noise.hpp"
#include "noisyemo/objectives.hpp"
#include "noisyemo/rng.hpp"

namespace noisyemo {

// ---------------------------------------------------------------------------
// (C, D)-separation
// ---------------------------------------------------------------------------

enum class CdClass { CdPoint, Superior, Other };

/// CdPoint: both objectives in [C, C + D]. Superior: both > C + D. Other: anything else.
CdClass classify_point(const NoisyFitness& f, std::int64_t c, std::int64_t d);

struct CdClassification {
    std::int64_t c = 0;
    std::int64_t d = 0;
    std::size_t cd_points = 0;
    std::size_t superior_points = 0;
    std::size_t other_points = 0;

    bool separated() const noexcept { return other_points == 0; }
    std::size_t total() const noexcept { return cd_points + superior_points + other_points; }
};

/// Bi-objective only; throws ContractViolation for other dimensions.
CdClassification classify_cd(std::span<const NoisyFitness> population, std::int64_t c,
                             std::int64_t d);

// ---------------------------------------------------------------------------
// Crowding bound on (C, D)-layers
// ---------------------------------------------------------------------------

struct CrowdingBoundReport {
    std::size_t bound = 0;              ///< 4 (D + 1)
    std::size_t layers_checked = 0;     ///< layers made only of (C, D)-points
    std::size_t max_positive = 0;       ///< worst count of crowding > 0 in such a layer
    std::size_t violations = 0;

    bool passed() const noexcept { return violations == 0; }
    void merge(const CrowdingBoundReport& other) noexcept;
};

/// `ranked` must carry current rank and crowding (e.g. R_t as seen by the
/// NSGA-II survival observer). Throws ContractViolation with a diagnostic when
/// the population is not (C, D)-separated.
CrowdingBoundReport check_crowding_bound(std::span<const Individual> ranked, std::int64_t c,
                                         std::int64_t d);

// ---------------------------------------------------------------------------
// Binomial estimates
// ---------------------------------------------------------------------------

inline constexpr double kZ99 = 2.5758293035489004;

struct ProbabilityEstimate {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double estimate = 0.0;
    double lower = 0.0;
    double upper = 1.0;
};

/// Wilson score interval.
ProbabilityEstimate binomial_estimate(std::uint64_t successes, std::uint64_t trials,
                                      double z = kZ99);

// ---------------------------------------------------------------------------
// Mutation into the LOTZ Pareto set F = {1^i 0^(n-i)}
// ---------------------------------------------------------------------------

enum class ParentClass { OnFront, OffFront };

std::string_view parent_class_name(ParentClass c) noexcept;

bool on_lotz_pareto_set(const BitString& x) noexcept;

/// Upper bound on Pr[mutation lands in F]: 1/e + 3/n on F, 3/n off F.
double mutation_to_front_bound(std::size_t n, ParentClass parent) noexcept;

/// (1 - rate)^n: probability that bitwise mutation returns an exact clone.
double clone_probability(std::size_t n, double rate) noexcept;

/// Samples parents (uniform over F, or uniform over {0,1}^n \ F by rejection),
/// mutates with rate 1/n and counts hits on F. 99% Wilson interval.
/// Requires trials >= 10^4; OffFront requires n >= 3.
ProbabilityEstimate estimate_mutation_to_front(std::size_t n, ParentClass parent,
                                               std::uint64_t trials, Rng& rng);

/// Same estimator for a fixed parent.
ProbabilityEstimate estimate_mutation_to_front(const BitString& parent, std::uint64_t trials,
                                               Rng& rng);

// ---------------------------------------------------------------------------
// GSEMO population dynamics
// ---------------------------------------------------------------------------

enum class ProbeVerdict { Pass, Fail, Inconclusive, Descriptive };

std::string_view verdict_name(ProbeVerdict v) noexcept;

struct ShrinkReport {
    double p = 0.0;
    std::size_t alpha = 0;
    std::size_t threshold = 0;       ///< ceil(p alpha) + 1
    ProbabilityEstimate frequency;   ///< over qualifying steps
    double required = 0.0;           ///< p / 2 - slack
    ProbeVerdict verdict = ProbeVerdict::Inconclusive;
};

inline constexpr double kProbeSlack = 0.02;
inline constexpr std::uint64_t kMinQualifyingSteps = 1000;

/// `sizes` is |P_0|, |P_1|, ... A step t -> t+1 qualifies when
/// |P_t| >= threshold and shrinks when |P_{t+1}| <= threshold. Pass iff the
/// lower 99% bound reaches p/2 - 0.02. p in {0, 1} is reported descriptively.
ShrinkReport shrinking_step_stats(std::span<const std::size_t> sizes, double p, std::size_t alpha);

/// Pools qualifying steps over independent episodes; no transition is formed
/// across the boundary between two episodes.
ShrinkReport shrinking_step_stats(std::span<const std::vector<std::size_t>> episodes, double p,
                                  std::size_t alpha);

/// Population sizes of GSEMO episodes that each start from the whole Pareto
/// set {1^i 0^(n-i)} (mutually incomparable for both objectives) and run until
/// the size falls below ceil(p alpha) + 1 or `max_episode_steps` pass.
/// Episodes are appended until `min_qualifying` qualifying steps are collected.
std::vector<std::vector<std::size_t>> gsemo_shrink_episodes(
    ObjectiveId objective, std::size_t n, const NoiseModel& noise, const GsemoConfig& config,
    std::size_t alpha, std::uint64_t min_qualifying, std::uint64_t max_episode_steps, Rng& rng);

/// Population sizes of a GSEMO run over `generations` steps, starting with |P_0|.
std::vector<std::size_t> gsemo_size_trace(ObjectiveId objective, std::size_t n,
                                          const NoiseModel& noise, const GsemoConfig& config,
                                          std::uint64_t generations, Rng& rng);

struct MaxPopulationReport {
    std::size_t max_population = 0;
    std::size_t max_coverage = 0;
    bool covered = false;
    std::uint64_t evaluations = 0;
};

/// Runs GSEMO until the front is covered or more than `budget` evaluations were spent.
MaxPopulationReport max_population_probe(ObjectiveId objective, std::size_t n,
                                         const NoiseModel& noise, const GsemoConfig& config,
                                         std::uint64_t budget, Rng& rng);

} // namespace noisyemo

namespace noisyemo {

// ---------------------------------------------------------------------------
// Probe suite
// ---------------------------------------------------------------------------

struct ProbeSuiteConfig {
    std::uint64_t seed = 1;

    std::size_t mutation_n = 40;
    std::uint64_t mutation_trials = 1'000'000;

    ObjectiveId crowding_objective = ObjectiveId::Lotz;
    std::size_t crowding_n = 20;
    std::vector<double> crowding_p = {0.25, 0.5};
    std::uint64_t crowding_generations = 1000;  ///< per noise probability

    ObjectiveId shrink_objective = ObjectiveId::Lotz;
    std::size_t shrink_n = 20;
    double shrink_p = 0.25;
    std::uint64_t shrink_min_qualifying = 10'000;

    ObjectiveId maxpop_objective = ObjectiveId::OneMinMax;
    std::size_t maxpop_n = 40;
    double maxpop_p = 0.25;
    std::size_t maxpop_runs = 5;
};

struct MutationProbe {
    std::size_t n = 0;
    ParentClass parent = ParentClass::OnFront;
    ProbabilityEstimate estimate;
    double bound = 0.0;
    ProbeVerdict verdict = ProbeVerdict::Inconclusive;
};

struct CloneProbe {
    std::size_t n = 0;
    ProbabilityEstimate estimate;
    double exact = 0.0;
    ProbeVerdict verdict = ProbeVerdict::Inconclusive;
};

struct CrowdingProbe {
    ObjectiveId objective = ObjectiveId::Lotz;
    std::size_t n = 0;
    double p = 0.0;
    std::uint64_t generations = 0;
    std::size_t runs = 0;
    CrowdingBoundReport report;
    bool always_separated = true;
};

struct MaxPopulationProbe {
    ObjectiveId objective = ObjectiveId::OneMinMax;
    std::size_t n = 0;
    double p = 0.0;
    std::uint64_t budget = 0;
    std::vector<MaxPopulationReport> runs;
};

struct ProbeSuiteReport {
    ProbeSuiteConfig config;
    std::vector<MutationProbe> mutation;
    CloneProbe clone;
    std::vector<CrowdingProbe> crowding;
    ShrinkReport shrink;
    std::uint64_t shrink_generations = 0;
    std::size_t shrink_episodes = 0;
    MaxPopulationProbe max_population;

    bool passed() const noexcept;
};

/// Every probe uses its own stream derived from config.seed.
ProbeSuiteReport run_probe_suite(const ProbeSuiteConfig& config);

} // namespace noisyemo
