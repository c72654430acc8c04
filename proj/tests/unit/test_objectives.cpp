#include <doctest.h>

#include "noisyemo/errors.hpp"
#include "noisyemo/objectives.hpp"
#include "noisyemo/pareto.hpp"
#include "noisyemo/rng.hpp"

using namespace noisyemo;

TEST_CASE("LOTZ values") {
    CHECK(evaluate_true(ObjectiveId::Lotz, BitString::from_string("1100")) == FitnessVector{2, 2});
    CHECK(evaluate_true(ObjectiveId::Lotz, BitString::from_string("1111")) == FitnessVector{4, 0});
    CHECK(evaluate_true(ObjectiveId::Lotz, BitString::from_string("0000")) == FitnessVector{0, 4});
    CHECK(evaluate_true(ObjectiveId::Lotz, BitString::from_string("1010")) == FitnessVector{1, 1});
    CHECK(evaluate_true(ObjectiveId::Lotz, BitString::from_string("0101")) == FitnessVector{0, 0});
}

TEST_CASE("OneMinMax values") {
    CHECK(evaluate_true(ObjectiveId::OneMinMax, BitString::from_string("1100")) == FitnessVector{2, 2});
    CHECK(evaluate_true(ObjectiveId::OneMinMax, BitString::from_string("1110")) == FitnessVector{3, 1});
    CHECK(evaluate_true(ObjectiveId::OneMinMax, BitString::from_string("0000")) == FitnessVector{0, 4});
}

TEST_CASE("objective sums respect the box") {
    Rng rng(1);
    for (int t = 0; t < 1000; ++t) {
        const auto x = BitString::random(37, rng);
        const auto lotz = evaluate_true(ObjectiveId::Lotz, x);
        const auto omm = evaluate_true(ObjectiveId::OneMinMax, x);
        CHECK(lotz[0] + lotz[1] <= 37);
        CHECK(omm[0] + omm[1] == 37);
        CHECK(lotz[0] == static_cast<std::int64_t>(leading_ones(x)));
        CHECK(lotz[1] == static_cast<std::int64_t>(trailing_zeros(x)));
    }
}

TEST_CASE("objective names parse both ways") {
    CHECK(parse_objective("lotz") == ObjectiveId::Lotz);
    CHECK(parse_objective("LOTZ") == ObjectiveId::Lotz);
    CHECK(parse_objective("omm") == ObjectiveId::OneMinMax);
    CHECK(parse_objective("OneMinMax") == ObjectiveId::OneMinMax);
    CHECK_THROWS_AS(parse_objective("zdt1"), ConfigError);
    for (const auto& entry : objective_registry()) CHECK(parse_objective(entry.name) == entry.id);
}

TEST_CASE("closed-form fronts match enumeration for n up to 12") {
    for (const auto id : {ObjectiveId::Lotz, ObjectiveId::OneMinMax}) {
        for (std::size_t n = 1; n <= 12; ++n) {
            CAPTURE(n);
            const auto front = pareto_front_oracle(id, n);
            CHECK(front.size() == n + 1);
            CHECK(front == brute_force_front(id, n));
            CHECK(objective_meta(id, n).pareto_front_size == n + 1);
        }
    }
    CHECK(pareto_front_oracle("omm", 3).size() == 4);
    CHECK_THROWS_AS(pareto_front_oracle("nope", 3), ConfigError);
    CHECK_THROWS_AS(brute_force_front(ObjectiveId::Lotz, 21), ContractViolation);
}

TEST_CASE("coverage counts distinct front vectors only") {
    const auto front = pareto_front_oracle(ObjectiveId::Lotz, 3);
    const std::vector<FitnessVector> pop{{3, 0}, {3, 0}, {1, 1}, {0, 3}, {2, 1}};
    CHECK(coverage_count(pop, front) == 3);
    CHECK(coverage_count(std::vector<FitnessVector>{}, front) == 0);
    const FrontIndex index(front);
    CHECK(index.count(front, [](const FitnessVector& f) -> const FitnessVector& { return f; }) == 4);
}
