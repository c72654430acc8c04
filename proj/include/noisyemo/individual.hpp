#pragma once

#include <cstddef>
#include <limits>
#include <optional>

#include "noisyemo/bitstring.hpp"
#include "noisyemo/fitness.hpp"
#include "noisyemo/noise.hpp"
#include "noisyemo/objectives.hpp"

namespace noisyemo {

inline constexpr double kInfiniteCrowding = std::numeric_limits<double>::infinity();

/// Population member shared by NSGA-II and GSEMO. The true fitness is fixed
/// at construction; `eval`, `rank` and `crowding` belong to the generation
/// stamped in `eval`.
struct Individual {
    BitString genotype;
    FitnessVector true_fitness;
    std::optional<NoisyEvaluation> eval;
    std::size_t rank = 0;    ///< 1-based layer index
    double crowding = 0.0;

    Individual(BitString g, ObjectiveId objective)
        : genotype(std::move(g)), true_fitness(evaluate_true(objective, genotype)) {}

    /// Noisy fitness of the last draw. Precondition: eval is set.
    const NoisyFitness& noisy() const { return eval.value().noisy_fitness; }
};

} // namespace noisyemo
