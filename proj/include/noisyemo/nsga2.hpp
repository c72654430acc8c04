#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "noisyemo/individual.hpp"
#include "noisyemo/noise.hpp"
#include "noisyemo/objectives.hpp"
#include "noisyemo/pareto.hpp"
#include "noisyemo/rng.hpp"
#include "noisyemo/variation.hpp"

namespace noisyemo {

struct Nsga2Config {
    std::size_t mu = 0;
    double crossover_prob = 0.9;
    CrossoverKind crossover = CrossoverKind::OnePoint;
    /// Defaults to 1/n.
    std::optional<double> mutation_rate;

    /// Throws ConfigError: mu >= 2, probabilities in [0, 1]. Odd mu is allowed
    /// (the default 9 (n + 1) is odd for even n); see make_offspring.
    void validate() const;
    double rate_for(std::size_t n) const noexcept {
        return mutation_rate.value_or(1.0 / static_cast<double>(n));
    }
};

/// Layers of indices into the input, layer 0 = non-dominated. Efficient
/// non-dominated sort (sequential first-fit after a lexicographic sort); for
/// two objectives each layer is tested against its last member only.
std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const NoisyFitness> fitness);

/// Sorts the individuals by their current noisy fitness and writes `rank`
/// (1-based). Returns the layers as index lists.
std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<Individual> pop);

/// Crowding distance of each member of one layer, in input order.
///
/// Per objective the layer is stably sorted by descending value; the first
/// and last positions get +inf, interior positions get
/// (f[prev] - f[next]) / (f[first] - f[last]), or 0 when the objective is
/// constant on the layer. The result is the sum over objectives.
std::vector<double> crowding_distances(std::span<const NoisyFitness> layer);

/// Writes `crowding` for every member of every layer.
void assign_crowding(std::span<Individual> pop, const std::vector<std::vector<std::size_t>>& layers);

/// Lower rank wins, then larger crowding, then a fair coin.
bool better_by_rank_and_crowding(const Individual& a, const Individual& b, Rng& rng);

/// Two competitors drawn uniformly with replacement; returns the winner's index.
std::size_t binary_tournament(std::span<const Individual> pop, Rng& rng);

/// mu offspring genotypes from ceil(mu / 2) rounds of: two tournaments,
/// crossover with probability p_c (else copies), bitwise mutation of both
/// children. For odd mu the second child of the last round is discarded
/// before mutation. Requires current rank and crowding.
std::vector<BitString> make_offspring(std::span<const Individual> pop, const Nsga2Config& config,
                                      std::size_t n, Rng& rng);

/// Ranks and crowds R_t (all members must carry current noisy fitness), sorts
/// by (rank asc, crowding desc, random key) and keeps the first mu. The
/// observer, when set, sees R_t after ranking and crowding.
std::vector<Individual> survival_select(std::vector<Individual> combined, std::size_t mu, Rng& rng,
                                        const std::function<void(std::span<const Individual>)>&
                                            observer = {});

struct GenerationMetrics {
    std::uint64_t generation = 0;
    std::uint64_t evaluations = 0;
    std::size_t coverage = 0;
    std::size_t population_size = 0;
};

/// NSGA-II on noisy fitness. One generation:
///   1. stamp a new generation and re-draw noise for all mu parents (in order)
///   2. rank and crowd the parents
///   3. ceil(mu/2) times: two tournaments, crossover coin (+ crossover), mutate both
///   4. draw noise for the mu offspring (in order)
///   5. survival selection on P_t + Q_t (one random tie key per member)
/// so each generation costs exactly 2 mu evaluations.
class Nsga2 {
  public:
    using Observer = std::function<void(std::span<const Individual>)>;

    Nsga2(ObjectiveId objective, std::size_t n, NoiseModel noise, Nsga2Config config);

    /// P_0 uniform over {0,1}^n. No evaluation happens here; generation 1 draws.
    void initialize(Rng& rng);
    /// Replaces the population with given genotypes (tests, restarts).
    void initialize(std::span<const BitString> genotypes);

    GenerationMetrics step(Rng& rng);

    const std::vector<Individual>& population() const noexcept { return population_; }
    std::uint64_t generation() const noexcept { return evaluator_.generation(); }
    std::uint64_t evaluations() const noexcept { return evaluator_.evaluations(); }
    std::size_t coverage() const;
    std::size_t front_size() const noexcept { return front_.size(); }
    std::uint64_t evaluations_per_generation() const noexcept { return 2 * config_.mu; }

    void set_survival_observer(Observer observer) { observer_ = std::move(observer); }

  private:
    ObjectiveId objective_;
    std::size_t n_;
    Nsga2Config config_;
    NoisyEvaluator<Individual> evaluator_;
    FrontIndex front_;
    std::vector<Individual> population_;
    Observer observer_;
};

} // namespace noisyemo
