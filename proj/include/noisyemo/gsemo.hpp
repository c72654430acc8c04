#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "noisyemo/individual.hpp"
#include "noisyemo/noise.hpp"
#include "noisyemo/nsga2.hpp"
#include "noisyemo/objectives.hpp"
#include "noisyemo/pareto.hpp"
#include "noisyemo/rng.hpp"
#include "noisyemo/variation.hpp"

namespace noisyemo {

struct GsemoConfig {
    double crossover_prob = 0.9;
    CrossoverKind crossover = CrossoverKind::OnePoint;
    std::optional<double> mutation_rate;

    void validate() const;
    double rate_for(std::size_t n) const noexcept {
        return mutation_rate.value_or(1.0 / static_cast<double>(n));
    }
};

/// Archive update on current noisy fitness: rejects `offspring` if a member
/// dominates it, otherwise drops every member it weakly dominates and appends
/// it. Returns whether it was accepted.
bool gsemo_accept(std::vector<Individual>& population, Individual offspring);

/// GSEMO on noisy fitness. One generation:
///   1. stamp a new generation and re-draw noise for every member (in order)
///   2. pick p1 uniformly, draw the crossover coin; on success pick p2 and
///      keep the first crossover child, else copy p1
///   3. mutate, draw the offspring's noise, apply gsemo_accept
/// so a generation costs 1 + |P_t| evaluations.
class Gsemo {
  public:
    using Observer = std::function<void(std::span<const Individual>)>;

    Gsemo(ObjectiveId objective, std::size_t n, NoiseModel noise, GsemoConfig config);

    /// P_0 = {s}, s uniform over {0,1}^n.
    void initialize(Rng& rng);
    void initialize(std::span<const BitString> genotypes);

    GenerationMetrics step(Rng& rng);

    const std::vector<Individual>& population() const noexcept { return population_; }
    std::uint64_t generation() const noexcept { return evaluator_.generation(); }
    std::uint64_t evaluations() const noexcept { return evaluator_.evaluations(); }
    std::size_t coverage() const;
    std::size_t front_size() const noexcept { return front_.size(); }

    /// Called with the evaluated P_t at the start of each step (before the offspring joins).
    void set_population_observer(Observer observer) { observer_ = std::move(observer); }

  private:
    ObjectiveId objective_;
    std::size_t n_;
    GsemoConfig config_;
    NoisyEvaluator<Individual> evaluator_;
    FrontIndex front_;
    std::vector<Individual> population_;
    Observer observer_;
};

} // namespace noisyemo
