#include "noisyemo/nsga2.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "noisyemo/errors.hpp"

namespace noisyemo {

void Nsga2Config::validate() const {
    if (mu < 2) {
        throw ConfigError("NSGA-II population size must be at least 2, got " + std::to_string(mu));
    }
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) {
        throw ConfigError("crossover probability must lie in [0, 1]");
    }
    if (mutation_rate && !(*mutation_rate >= 0.0 && *mutation_rate <= 1.0)) {
        throw ConfigError("mutation rate must lie in [0, 1]");
    }
}

namespace {

bool lexicographically_greater(const NoisyFitness& a, const NoisyFitness& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] != b[k]) return a[k] > b[k];
    }
    return false;
}

void require_evaluated(std::span<const Individual> pop) {
    if (pop.empty()) return;
    for (const auto& ind : pop) {
        if (!ind.eval) throw ContractViolation("individual has no noisy evaluation");
    }
    const auto stamp = pop.front().eval->generation;
    for (const auto& ind : pop) {
        if (ind.eval->generation != stamp) {
            throw ContractViolation("individuals carry evaluations from different generations");
        }
    }
}

} // namespace

std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const NoisyFitness> fitness) {
    std::vector<std::vector<std::size_t>> fronts;
    if (fitness.empty()) return fronts;

    const std::size_t d = fitness.front().size();
    for (const auto& f : fitness) {
        if (f.size() != d) throw ContractViolation("non_dominated_sort: mixed objective counts");
    }

    std::vector<std::size_t> order(fitness.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lexicographically_greater(fitness[a], fitness[b]);
    });

    // Processing in lexicographically descending order means nothing seen
    // later can dominate anything seen earlier; each point joins the first
    // layer that does not dominate it.
    auto dominated_by_layer = [&](const std::vector<std::size_t>& layer, std::size_t i) {
        if (d == 2) {
            // Within a layer f_2 is non-decreasing in processing order, so the
            // last member has the largest f_2 and decides.
            const NoisyFitness& last = fitness[layer.back()];
            return last[1] >= fitness[i][1] && !(last == fitness[i]);
        }
        return std::any_of(layer.rbegin(), layer.rend(),
                           [&](std::size_t j) { return dominates(fitness[j], fitness[i]); });
    };

    for (std::size_t i : order) {
        auto it = std::find_if(fronts.begin(), fronts.end(),
                               [&](const auto& layer) { return !dominated_by_layer(layer, i); });
        if (it == fronts.end()) {
            fronts.emplace_back();
            it = std::prev(fronts.end());
        }
        it->push_back(i);
    }
    for (auto& layer : fronts) std::sort(layer.begin(), layer.end());
    return fronts;
}

std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<Individual> pop) {
    require_evaluated(pop);
    std::vector<NoisyFitness> fitness;
    fitness.reserve(pop.size());
    for (const auto& ind : pop) fitness.push_back(ind.noisy());
    auto layers = non_dominated_sort(fitness);
    for (std::size_t r = 0; r < layers.size(); ++r) {
        for (std::size_t i : layers[r]) pop[i].rank = r + 1;
    }
    return layers;
}

std::vector<double> crowding_distances(std::span<const NoisyFitness> layer) {
    const std::size_t m = layer.size();
    std::vector<double> distance(m, 0.0);
    if (m <= 2) {
        std::fill(distance.begin(), distance.end(), kInfiniteCrowding);
        return distance;
    }

    std::vector<std::size_t> order(m);
    for (std::size_t k = 0; k < layer.front().size(); ++k) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return layer[a][k] > layer[b][k]; });

        distance[order.front()] = kInfiniteCrowding;
        distance[order.back()] = kInfiniteCrowding;
        const double span = layer[order.front()][k] - layer[order.back()][k];
        if (span <= 0.0) continue;
        for (std::size_t pos = 1; pos + 1 < m; ++pos) {
            distance[order[pos]] += (layer[order[pos - 1]][k] - layer[order[pos + 1]][k]) / span;
        }
    }
    return distance;
}

void assign_crowding(std::span<Individual> pop, const std::vector<std::vector<std::size_t>>& layers) {
    std::vector<NoisyFitness> fitness;
    for (const auto& layer : layers) {
        fitness.clear();
        for (std::size_t i : layer) fitness.push_back(pop[i].noisy());
        const auto distance = crowding_distances(fitness);
        for (std::size_t j = 0; j < layer.size(); ++j) pop[layer[j]].crowding = distance[j];
    }
}

bool better_by_rank_and_crowding(const Individual& a, const Individual& b, Rng& rng) {
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.crowding != b.crowding) return a.crowding > b.crowding;
    return coin_flip(rng);
}

std::size_t binary_tournament(std::span<const Individual> pop, Rng& rng) {
    if (pop.empty()) throw ContractViolation("binary_tournament on an empty population");
    const auto first = static_cast<std::size_t>(uniform_below(rng, pop.size()));
    const auto second = static_cast<std::size_t>(uniform_below(rng, pop.size()));
    return better_by_rank_and_crowding(pop[first], pop[second], rng) ? first : second;
}

std::vector<BitString> make_offspring(std::span<const Individual> pop, const Nsga2Config& config,
                                      std::size_t n, Rng& rng) {
    const double rate = config.rate_for(n);
    std::vector<BitString> offspring;
    offspring.reserve(config.mu);
    for (std::size_t pair = 0; pair < (config.mu + 1) / 2; ++pair) {
        const std::size_t p1 = binary_tournament(pop, rng);
        const std::size_t p2 = binary_tournament(pop, rng);
        const bool cross = uniform01(rng) < config.crossover_prob;
        auto [s1, s2] = cross ? crossover(config.crossover, pop[p1].genotype, pop[p2].genotype, rng)
                              : std::pair{pop[p1].genotype, pop[p2].genotype};
        offspring.push_back(bitwise_mutation(s1, rate, rng));
        // Odd mu: the surplus second child of the last pair is dropped unmutated.
        if (offspring.size() < config.mu) offspring.push_back(bitwise_mutation(s2, rate, rng));
    }
    return offspring;
}

std::vector<Individual> survival_select(
    std::vector<Individual> combined, std::size_t mu, Rng& rng,
    const std::function<void(std::span<const Individual>)>& observer) {
    if (combined.size() < mu) {
        throw ContractViolation("survival_select: fewer candidates (" +
                                std::to_string(combined.size()) + ") than mu (" +
                                std::to_string(mu) + ")");
    }
    const auto layers = non_dominated_sort(std::span<Individual>(combined));
    assign_crowding(combined, layers);
    if (observer) observer(combined);

    std::vector<std::uint64_t> tie_key(combined.size());
    for (auto& key : tie_key) key = rng();

    std::vector<std::size_t> order(combined.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Individual& x = combined[a];
        const Individual& y = combined[b];
        if (x.rank != y.rank) return x.rank < y.rank;
        if (x.crowding != y.crowding) return x.crowding > y.crowding;
        if (tie_key[a] != tie_key[b]) return tie_key[a] < tie_key[b];
        return a < b;
    });

    std::vector<Individual> next;
    next.reserve(mu);
    for (std::size_t i = 0; i < mu; ++i) next.push_back(std::move(combined[order[i]]));
    return next;
}

Nsga2::Nsga2(ObjectiveId objective, std::size_t n, NoiseModel noise, Nsga2Config config)
    : objective_(objective),
      n_(n),
      config_(config),
      evaluator_(noise),
      front_(pareto_front_oracle(objective, n)) {
    config_.validate();
}

void Nsga2::initialize(Rng& rng) {
    population_.clear();
    population_.reserve(config_.mu);
    for (std::size_t i = 0; i < config_.mu; ++i) {
        population_.emplace_back(BitString::random(n_, rng), objective_);
    }
}

void Nsga2::initialize(std::span<const BitString> genotypes) {
    if (genotypes.size() != config_.mu) {
        throw ContractViolation("NSGA-II initial population must have exactly mu members");
    }
    population_.clear();
    for (const auto& g : genotypes) {
        if (g.size() != n_) throw ContractViolation("initial genotype has the wrong length");
        population_.emplace_back(g, objective_);
    }
}

GenerationMetrics Nsga2::step(Rng& rng) {
    if (population_.size() != config_.mu) throw ContractViolation("NSGA-II not initialised");

    evaluator_.stamp_generation(evaluator_.generation() + 1);
    for (auto& parent : population_) evaluator_.evaluate(parent, rng);
    const auto layers = non_dominated_sort(std::span<Individual>(population_));
    assign_crowding(population_, layers);

    auto genotypes = make_offspring(population_, config_, n_, rng);

    std::vector<Individual> combined = std::move(population_);
    combined.reserve(2 * config_.mu);
    for (auto& g : genotypes) {
        combined.emplace_back(std::move(g), objective_);
        evaluator_.evaluate(combined.back(), rng);
    }
    population_ = survival_select(std::move(combined), config_.mu, rng, observer_);

    return {evaluator_.generation(), evaluator_.evaluations(), coverage(), population_.size()};
}

std::size_t Nsga2::coverage() const {
    return front_.count(population_,
                        [](const Individual& ind) -> const FitnessVector& { return ind.true_fitness; });
}

} // namespace noisyemo
