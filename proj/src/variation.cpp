#include "noisyemo/variation.hpp"

#include <cmath>
#include <string>

#include "noisyemo/errors.hpp"

namespace noisyemo {

std::string_view crossover_name(CrossoverKind kind) noexcept {
    return kind == CrossoverKind::OnePoint ? "onepoint" : "uniform";
}

CrossoverKind parse_crossover(std::string_view name) {
    if (name == "onepoint") return CrossoverKind::OnePoint;
    if (name == "uniform") return CrossoverKind::Uniform;
    throw ConfigError("unknown crossover '" + std::string(name) + "' (expected onepoint or uniform)");
}

std::pair<BitString, BitString> one_point_crossover_at(const BitString& a, const BitString& b,
                                                       std::size_t cut) {
    if (a.size() != b.size()) throw ContractViolation("crossover parents differ in length");
    if (cut > a.size()) throw ContractViolation("crossover cut beyond string end");
    BitString first = a;
    BitString second = b;
    for (std::size_t i = cut; i < a.size(); ++i) {
        first.set(i, b[i]);
        second.set(i, a[i]);
    }
    return {std::move(first), std::move(second)};
}

std::pair<BitString, BitString> one_point_crossover(const BitString& a, const BitString& b,
                                                    Rng& rng) {
    if (a.size() != b.size()) throw ContractViolation("crossover parents differ in length");
    if (a.size() == 1) return {a, b};
    const std::size_t cut = 1 + static_cast<std::size_t>(uniform_below(rng, a.size() - 1));
    return one_point_crossover_at(a, b, cut);
}

std::pair<BitString, BitString> uniform_crossover(const BitString& a, const BitString& b,
                                                  Rng& rng) {
    if (a.size() != b.size()) throw ContractViolation("crossover parents differ in length");
    BitString first = a;
    BitString second = b;
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((i & 63) == 0) bits = rng();
        if ((bits >> (i & 63)) & 1u) {
            first.set(i, b[i]);
            second.set(i, a[i]);
        }
    }
    return {std::move(first), std::move(second)};
}

std::pair<BitString, BitString> crossover(CrossoverKind kind, const BitString& a,
                                          const BitString& b, Rng& rng) {
    return kind == CrossoverKind::OnePoint ? one_point_crossover(a, b, rng)
                                           : uniform_crossover(a, b, rng);
}

BitString bitwise_mutation(const BitString& x, double rate, Rng& rng) {
    if (!(rate >= 0.0 && rate <= 1.0)) throw ContractViolation("mutation rate outside [0, 1]");
    BitString y = x;
    if (rate == 0.0) return y;
    if (rate == 1.0) {
        y.complement();
        return y;
    }
    // Gap to the next flipped position is Geometric(rate) on {0, 1, ...}.
    const double log_keep = std::log1p(-rate);
    const auto n = static_cast<double>(x.size());
    double pos = 0.0;
    for (;;) {
        const double u = 1.0 - uniform01(rng);  // (0, 1]
        pos += std::floor(std::log(u) / log_keep);
        if (pos >= n) break;
        y.flip(static_cast<std::size_t>(pos));
        pos += 1.0;
    }
    return y;
}

} // namespace noisyemo
