#include "noisyemo/gsemo.hpp"

#include <algorithm>

#include "noisyemo/errors.hpp"

namespace noisyemo {

void GsemoConfig::validate() const {
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) {
        throw ConfigError("crossover probability must lie in [0, 1]");
    }
    if (mutation_rate && !(*mutation_rate >= 0.0 && *mutation_rate <= 1.0)) {
        throw ConfigError("mutation rate must lie in [0, 1]");
    }
}

bool gsemo_accept(std::vector<Individual>& population, Individual offspring) {
    const NoisyFitness& f = offspring.noisy();
    const bool rejected = std::any_of(population.begin(), population.end(), [&](const Individual& m) {
        return dominates(m.noisy(), f);
    });
    if (rejected) return false;
    std::erase_if(population, [&](const Individual& m) { return weakly_dominates(f, m.noisy()); });
    population.push_back(std::move(offspring));
    return true;
}

Gsemo::Gsemo(ObjectiveId objective, std::size_t n, NoiseModel noise, GsemoConfig config)
    : objective_(objective),
      n_(n),
      config_(config),
      evaluator_(noise),
      front_(pareto_front_oracle(objective, n)) {
    config_.validate();
}

void Gsemo::initialize(Rng& rng) {
    population_.clear();
    population_.emplace_back(BitString::random(n_, rng), objective_);
}

void Gsemo::initialize(std::span<const BitString> genotypes) {
    if (genotypes.empty()) throw ContractViolation("GSEMO needs a nonempty initial population");
    population_.clear();
    for (const auto& g : genotypes) {
        if (g.size() != n_) throw ContractViolation("initial genotype has the wrong length");
        population_.emplace_back(g, objective_);
    }
}

GenerationMetrics Gsemo::step(Rng& rng) {
    if (population_.empty()) throw ContractViolation("GSEMO not initialised");

    evaluator_.stamp_generation(evaluator_.generation() + 1);
    for (auto& member : population_) evaluator_.evaluate(member, rng);
    if (observer_) observer_(population_);

    const auto size = static_cast<std::uint64_t>(population_.size());
    const auto& p1 = population_[static_cast<std::size_t>(uniform_below(rng, size))].genotype;
    BitString child = p1;
    if (uniform01(rng) < config_.crossover_prob) {
        const auto& p2 = population_[static_cast<std::size_t>(uniform_below(rng, size))].genotype;
        child = crossover(config_.crossover, p1, p2, rng).first;
    }

    Individual offspring(bitwise_mutation(child, config_.rate_for(n_), rng), objective_);
    evaluator_.evaluate(offspring, rng);
    gsemo_accept(population_, std::move(offspring));

    return {evaluator_.generation(), evaluator_.evaluations(), coverage(), population_.size()};
}

std::size_t Gsemo::coverage() const {
    return front_.count(population_,
                        [](const Individual& ind) -> const FitnessVector& { return ind.true_fitness; });
}

} // namespace noisyemo
