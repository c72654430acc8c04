#include <doctest.h>

#include <cmath>

#include "noisyemo/errors.hpp"
#include "noisyemo/nsga2.hpp"
#include "noisyemo/theory_probe.hpp"

using namespace noisyemo;

namespace {

std::vector<Individual> ranked_layer(const std::vector<NoisyFitness>& fitness) {
    std::vector<Individual> pop;
    for (const auto& f : fitness) {
        Individual ind(BitString(4), ObjectiveId::Lotz);
        NoisyEvaluation e;
        e.true_fitness = ind.true_fitness;
        e.noisy_fitness = f;
        e.generation = 1;
        ind.eval = e;
        pop.push_back(std::move(ind));
    }
    const auto layers = non_dominated_sort(std::span<Individual>(pop));
    assign_crowding(pop, layers);
    return pop;
}

} // namespace

TEST_CASE("(C, D) classification") {
    CHECK(classify_point({0, 0}, 0, 5) == CdClass::CdPoint);
    CHECK(classify_point({5, 5}, 0, 5) == CdClass::CdPoint);
    CHECK(classify_point({6, 6}, 0, 5) == CdClass::Superior);
    CHECK(classify_point({6, 0}, 0, 5) == CdClass::Other);
    const std::vector<NoisyFitness> pop{{0, 0}, {6, 6}, {6, 0}, {2, 3}};
    const auto c = classify_cd(pop, 0, 5);
    CHECK(c.cd_points == 2);
    CHECK(c.superior_points == 1);
    CHECK(c.other_points == 1);
    CHECK(c.total() == pop.size());
    CHECK_FALSE(c.separated());
}

TEST_CASE("crowding bound on duplicated layers") {
    const auto pop = ranked_layer(std::vector<NoisyFitness>(100, NoisyFitness{2, 2}));
    const auto r = check_crowding_bound(pop, 0, 4);
    CHECK(r.layers_checked == 1);
    CHECK(r.max_positive <= 4);
    CHECK(r.passed());
    CHECK(r.bound == 20);

    const auto bad = ranked_layer({{9, 0}, {1, 1}});
    CHECK_THROWS_AS(check_crowding_bound(bad, 0, 4), ContractViolation);
}

TEST_CASE("crowding bound holds on live noisy NSGA-II") {
    Rng rng(4);
    const std::size_t n = 10;
    Nsga2Config c;
    c.mu = 9 * (n + 1);
    Nsga2 algo(ObjectiveId::Lotz, n, NoiseModel::bernoulli(n + 1, 0.3), c);
    algo.initialize(rng);
    CrowdingBoundReport total;
    algo.set_survival_observer([&](std::span<const Individual> r) {
        std::vector<NoisyFitness> f;
        for (const auto& ind : r) f.push_back(ind.noisy());
        REQUIRE(classify_cd(f, 0, n).separated());
        total.merge(check_crowding_bound(r, 0, n));
    });
    for (int g = 0; g < 40; ++g) algo.step(rng);
    CHECK(total.layers_checked > 0);
    CHECK(total.passed());
    CHECK(total.max_positive <= 4 * (n + 1));
}

TEST_CASE("Wilson interval") {
    const auto e = binomial_estimate(50, 100);
    CHECK(e.estimate == 0.5);
    CHECK(e.lower < 0.5);
    CHECK(e.upper > 0.5);
    CHECK(e.upper - e.lower == doctest::Approx(0.25).epsilon(0.05));
    const auto zero = binomial_estimate(0, 1000);
    CHECK(zero.lower == 0.0);
    CHECK(zero.upper > 0.0);
    CHECK_THROWS_AS(binomial_estimate(3, 2), ContractViolation);
}

TEST_CASE("LOTZ Pareto set membership") {
    CHECK(on_lotz_pareto_set(BitString::from_string("1100")));
    CHECK(on_lotz_pareto_set(BitString::from_string("0000")));
    CHECK(on_lotz_pareto_set(BitString::from_string("1111")));
    CHECK_FALSE(on_lotz_pareto_set(BitString::from_string("1010")));
}

TEST_CASE("mutation-to-front estimates stay under the bounds") {
    Rng rng(1);
    const std::size_t n = 20;
    const auto on = estimate_mutation_to_front(n, ParentClass::OnFront, 100000, rng);
    CHECK(on.upper <= mutation_to_front_bound(n, ParentClass::OnFront));
    // Cloning alone lands on F.
    CHECK(on.upper >= clone_probability(n, 1.0 / n));
    const auto off = estimate_mutation_to_front(n, ParentClass::OffFront, 100000, rng);
    CHECK(off.upper <= mutation_to_front_bound(n, ParentClass::OffFront));

    // A parent one flip away from F is the hardest off-front case.
    auto near = BitString::ones_then_zeros(n, 10);
    near.flip(15);
    const auto hard = estimate_mutation_to_front(near, 100000, rng);
    CHECK(hard.upper <= 3.0 / n);
    CHECK(hard.estimate > 0.0);

    const auto clone = estimate_mutation_to_front(BitString::ones_then_zeros(n, n), 100000, rng);
    CHECK(clone.upper >= clone_probability(n, 1.0 / n));
    CHECK_THROWS_AS(estimate_mutation_to_front(n, ParentClass::OnFront, 10, rng), ConfigError);
    CHECK_THROWS_AS(estimate_mutation_to_front(2, ParentClass::OffFront, 10000, rng), ConfigError);
}

TEST_CASE("shrinking-step statistics") {
    // p = 0.25, alpha = 21 -> threshold 7.
    const std::vector<std::size_t> sizes{7, 3, 8, 9, 7, 10, 2};
    const auto r = shrinking_step_stats(sizes, 0.25, 21);
    CHECK(r.threshold == 7);
    CHECK(r.frequency.trials == 5);
    CHECK(r.frequency.successes == 3);
    CHECK(r.verdict == ProbeVerdict::Inconclusive);
    CHECK(shrinking_step_stats(sizes, 0.0, 21).verdict == ProbeVerdict::Descriptive);
    CHECK(shrinking_step_stats(sizes, 1.0, 21).verdict == ProbeVerdict::Descriptive);

    const std::vector<std::vector<std::size_t>> episodes{{8, 9}, {2, 9}};
    const auto pooled = shrinking_step_stats(std::span<const std::vector<std::size_t>>(episodes), 0.25, 21);
    CHECK(pooled.frequency.trials == 1);
}

TEST_CASE("GSEMO shrink episodes meet the p/2 rate") {
    Rng rng(7);
    const std::size_t n = 20;
    const auto episodes = gsemo_shrink_episodes(ObjectiveId::Lotz, n, NoiseModel::bernoulli(n + 1, 0.25),
                                                GsemoConfig{}, n + 1, 2000, 10000, rng);
    for (const auto& e : episodes) CHECK(e.front() == n + 1);
    const auto r = shrinking_step_stats(std::span<const std::vector<std::size_t>>(episodes), 0.25, n + 1);
    CHECK(r.frequency.trials >= 2000);
    CHECK(r.verdict == ProbeVerdict::Pass);
}

TEST_CASE("max population probe") {
    Rng rng(2);
    const auto free = max_population_probe(ObjectiveId::Lotz, 10, NoiseModel::none(), GsemoConfig{},
                                           10'000'000, rng);
    CHECK(free.covered);
    CHECK(free.max_population == 11);
    const auto noisy = max_population_probe(ObjectiveId::OneMinMax, 20, NoiseModel::bernoulli(21, 0.25),
                                            GsemoConfig{}, 80000, rng);
    CHECK_FALSE(noisy.covered);
    CHECK(noisy.max_population < 21);
    CHECK(noisy.evaluations > 80000);

    const auto sizes = gsemo_size_trace(ObjectiveId::Lotz, 8, NoiseModel::none(), GsemoConfig{}, 100, rng);
    CHECK(sizes.size() == 101);
    CHECK(sizes.front() == 1);
}

TEST_CASE("probe suite with reduced effort") {
    ProbeSuiteConfig c;
    c.mutation_trials = 20000;
    c.crowding_generations = 50;
    c.shrink_min_qualifying = 2000;
    c.maxpop_n = 20;
    c.maxpop_runs = 2;
    const auto a = run_probe_suite(c);
    const auto b = run_probe_suite(c);
    CHECK(a.mutation.size() == 2);
    CHECK(a.crowding.size() == 2);
    CHECK(a.passed());
    CHECK(a.shrink.frequency.successes == b.shrink.frequency.successes);
    CHECK(a.clone.estimate.successes == b.clone.estimate.successes);
}
