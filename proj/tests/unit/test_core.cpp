#include <doctest.h>

#include <cmath>
#include <set>

#include "noisyemo/bitstring.hpp"
#include "noisyemo/errors.hpp"
#include "noisyemo/fitness.hpp"
#include "noisyemo/rng.hpp"

using namespace noisyemo;

TEST_CASE("mix_seed separates nearby inputs") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t base = 0; base < 16; ++base) {
        for (std::uint64_t salt = 0; salt < 16; ++salt) seen.insert(mix_seed(base, salt));
    }
    CHECK(seen.size() == 256);
    CHECK(mix_seed(1, 2) == mix_seed(1, 2));
    CHECK(mix_seed(1, 2) != mix_seed(2, 1));
}

TEST_CASE("uniform01 stays in [0, 1) with mean near one half") {
    Rng rng(7);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = uniform01(rng);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("uniform_below is bounded and roughly flat") {
    Rng rng(11);
    std::array<int, 7> counts{};
    for (int i = 0; i < 70000; ++i) ++counts[uniform_below(rng, 7)];
    for (int c : counts) CHECK(std::abs(c - 10000) < 500);
    CHECK(uniform_below(rng, 1) == 0);
    CHECK_THROWS_AS(uniform_below(rng, 0), ContractViolation);
}

TEST_CASE("bernoulli and coin_flip frequencies") {
    Rng rng(3);
    int hits = 0, heads = 0;
    for (int i = 0; i < 100000; ++i) {
        hits += bernoulli(rng, 0.3);
        heads += coin_flip(rng);
    }
    CHECK(hits / 1e5 == doctest::Approx(0.3).epsilon(0.02));
    CHECK(heads / 1e5 == doctest::Approx(0.5).epsilon(0.02));
    CHECK_FALSE(bernoulli(rng, 0.0));
    CHECK(bernoulli(rng, 1.0));
}

TEST_CASE("standard_normal moments and fixed draw count") {
    Rng rng(5);
    double s1 = 0.0, s2 = 0.0;
    const int m = 200000;
    for (int i = 0; i < m; ++i) {
        const double z = standard_normal(rng);
        REQUIRE(std::isfinite(z));
        s1 += z;
        s2 += z * z;
    }
    CHECK(std::abs(s1 / m) < 0.01);
    CHECK(s2 / m == doctest::Approx(1.0).epsilon(0.02));

    Rng a(9), b(9);
    (void)standard_normal(a);
    b.discard(2);
    CHECK(a() == b());
}

TEST_CASE("BitString basics") {
    CHECK_THROWS_AS(BitString(0), ContractViolation);
    auto x = BitString::from_string("1100");
    CHECK(x.size() == 4);
    CHECK(x[0]);
    CHECK_FALSE(x[2]);
    CHECK(x.count_ones() == 2);
    CHECK(x.count_zeros() == 2);
    CHECK(x.leading_ones() == 2);
    CHECK(x.trailing_zeros() == 2);
    CHECK(x.to_string() == "1100");
    x.flip(3);
    CHECK(x.to_string() == "1101");
    CHECK(x.trailing_zeros() == 0);
    x.set(0, false);
    CHECK(x.leading_ones() == 0);
    x.complement();
    CHECK(x.to_string() == "1010");
    CHECK_THROWS(BitString::from_string("10x"));
    CHECK_THROWS(BitString::from_string(""));
}

TEST_CASE("BitString word boundaries") {
    for (std::size_t n : {63u, 64u, 65u, 127u, 128u, 130u}) {
        CAPTURE(n);
        for (std::size_t ones : {std::size_t{0}, std::size_t{1}, n / 2, n - 1, n}) {
            const auto x = BitString::ones_then_zeros(n, ones);
            CHECK(x.leading_ones() == ones);
            CHECK(x.trailing_zeros() == n - ones);
            CHECK(x.count_ones() == ones);
        }
        BitString all(n);
        all.complement();
        CHECK(all.count_ones() == n);
        CHECK(all.leading_ones() == n);
        CHECK(all.trailing_zeros() == 0);
        // Padding stays clear, so equality is by value.
        all.complement();
        CHECK(all == BitString(n));
    }
}

TEST_CASE("BitString::random is unbiased per position") {
    Rng rng(21);
    const std::size_t n = 70;
    std::vector<int> ones(n, 0);
    const int m = 10000;
    for (int t = 0; t < m; ++t) {
        const auto x = BitString::random(n, rng);
        for (std::size_t i = 0; i < n; ++i) ones[i] += x[i];
    }
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ones[i] / double(m) - 0.5) < 0.02);
}

TEST_CASE("dominance under maximisation") {
    const FitnessVector a{2, 2}, b{1, 1}, c{2, 1}, d{1, 2};
    CHECK(dominates(a, b));
    CHECK(dominates(a, c));
    CHECK_FALSE(dominates(c, d));
    CHECK_FALSE(dominates(d, c));
    CHECK_FALSE(dominates(a, a));
    CHECK(weakly_dominates(a, a));
    CHECK(weakly_dominates(a, c));
    CHECK_FALSE(weakly_dominates(b, c));
    CHECK_THROWS_AS(dominates(FitnessVector{1, 2}, FitnessVector{1, 2, 3}), ContractViolation);
}

TEST_CASE("fitness helpers") {
    const FitnessVector f{3, 4};
    const auto g = to_noisy(f).shifted(2.5);
    CHECK(g[0] == 5.5);
    CHECK(g[1] == 6.5);
    CHECK(to_string(f) == "(3,4)");
    CHECK(FitnessVector::zeros(3).size() == 3);
    CHECK_THROWS_AS(FitnessVector::zeros(0), ContractViolation);
    CHECK_THROWS_AS(FitnessVector::zeros(kMaxObjectives + 1), ContractViolation);
}
