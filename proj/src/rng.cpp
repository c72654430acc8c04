#include "noisyemo/rng.hpp"

#include <cmath>
#include <numbers>

#include "noisyemo/errors.hpp"

namespace noisyemo {

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) noexcept {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(Rng& rng) noexcept {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound == 0) throw ContractViolation("uniform_below: empty range");
    // Reject the lowest (2^64 mod bound) raw values.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

bool bernoulli(Rng& rng, double p) noexcept { return uniform01(rng) < p; }

bool coin_flip(Rng& rng) noexcept { return (rng() & 1u) != 0; }

double standard_normal(Rng& rng) noexcept {
    const double u1 = 1.0 - uniform01(rng);  // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace noisyemo
