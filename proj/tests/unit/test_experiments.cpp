#include <doctest.h>

#include <algorithm>

#include "noisyemo/errors.hpp"
#include "noisyemo/experiments.hpp"

using namespace noisyemo;

namespace {

ExperimentConfig small(Algorithm a = Algorithm::Nsga2) {
    ExperimentConfig c;
    c.algorithm = a;
    c.n = 8;
    c.runs = 6;
    c.seed = 42;
    return c;
}

} // namespace

TEST_CASE("defaults") {
    CHECK(default_budget(20) == 80000);
    CHECK(default_mu(20) == 189);
    const auto r = small().resolved();
    CHECK(r.budget == 5120);
    CHECK(r.nsga2.mu == 81);
    CHECK(r.crossover_prob() == 0.9);
    CHECK_THROWS_AS(parse_algorithm("GSEMO"), ConfigError);
    CHECK_THROWS_AS(parse_algorithm("moead"), ConfigError);
}

TEST_CASE("validation") {
    auto c = small().resolved();
    c.runs = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small().resolved();
    c.n = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small();
    c.budget = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("noise-free NSGA-II covers the front well under budget") {
    auto c = small();
    c.n = 12;
    c.trace = true;
    const auto rec = run_single(c.resolved(), 0);
    CHECK(rec.outcome == Outcome::Covered);
    CHECK(rec.final_coverage_count == 13);
    CHECK(rec.evaluations_used < default_budget(12));
    REQUIRE_FALSE(rec.trace.empty());
    CHECK(rec.trace.front().generation == 0);
    CHECK(rec.trace.back().coverage == 13);
    CHECK(rec.trace.size() == rec.generations_used + 1);
}

TEST_CASE("budget exhaustion overshoots by at most one generation") {
    auto c = small();
    c.n = 10;
    c.noise = NoiseModel::bernoulli(11, 0.5);
    c.budget = 3000;
    const auto cfg = c.resolved();
    const auto rec = run_single(cfg, 0);
    if (rec.outcome == Outcome::BudgetExhausted) {
        CHECK(rec.evaluations_used > cfg.budget);
        CHECK(rec.evaluations_used <= cfg.budget + 2 * cfg.nsga2.mu);
    }
}

TEST_CASE("GSEMO under noise fails within the budget") {
    auto c = small(Algorithm::Gsemo);
    c.n = 12;
    c.noise = NoiseModel::bernoulli(13, 0.25);
    const auto rep = run_batch(c, 1);
    CHECK(rep.success_rate == 0.0);
    for (const auto& r : rep.runs) {
        CHECK(r.outcome == Outcome::BudgetExhausted);
        CHECK(r.max_population_size < 13);
    }
}

TEST_CASE("aggregate statistics") {
    const auto c = small().resolved();
    std::vector<RunRecord> runs(4);
    const std::uint64_t evals[] = {10, 20, 30, 100};
    for (std::size_t i = 0; i < 4; ++i) {
        runs[i].run_index = i;
        runs[i].evaluations_used = evals[i];
        runs[i].outcome = i < 3 ? Outcome::Covered : Outcome::BudgetExhausted;
    }
    const auto a = aggregate(c, runs);
    CHECK(a.success_rate == 0.75);
    CHECK(a.mean_evals == 40.0);
    CHECK(a.median_evals == 25.0);
    CHECK(a.stddev_evals == doctest::Approx(40.8248290463863));
    CHECK(a.front_size == 9);
}

TEST_CASE("batches do not depend on the worker count") {
    auto c = small();
    c.noise = NoiseModel::bernoulli(9, 0.3);
    c.trace = true;
    const auto one = run_batch(c, 1);
    const auto three = run_batch(c, 3);
    CHECK(one.runs == three.runs);
    CHECK(one.mean_evals == three.mean_evals);
}

TEST_CASE("grid expansion") {
    CHECK(expand_grid(table1_grid(ExperimentConfig{})).size() == 72);
    CHECK(expand_grid(table2_grid(ExperimentConfig{})).size() == 30);

    SweepGrid g;
    g.objectives = {ObjectiveId::Lotz};
    g.ns = {10, 20};
    g.noise_values = {0.1, 0.2};
    const auto cells = expand_grid(g);
    REQUIRE(cells.size() == 4);
    CHECK(cells[0].noise.delta == 11.0);
    CHECK(cells[2].noise.delta == 21.0);
    CHECK(cells[2].nsga2.mu == 189);
    CHECK(cells[2].budget == 80000);
    std::vector<std::uint64_t> seeds;
    for (const auto& c : cells) seeds.push_back(c.seed);
    std::sort(seeds.begin(), seeds.end());
    CHECK(std::unique(seeds.begin(), seeds.end()) == seeds.end());

    g.noise_kind = NoiseKind::Gaussian;
    g.noise_values = {0.5};
    CHECK(expand_grid(g)[1].noise.sigma == 10.0);

    g.noise_values.clear();
    CHECK_THROWS_AS(expand_grid(g), ConfigError);
    g.noise_values = {0.5};
    g.ns.clear();
    CHECK_THROWS_AS(expand_grid(g), ConfigError);
}

TEST_CASE("parallel_for visits every index and rethrows") {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    CHECK_THROWS_AS(parallel_for(10, 2, [](std::size_t i) {
                        if (i == 7) throw ConfigError("boom");
                    }),
                    ConfigError);
}
