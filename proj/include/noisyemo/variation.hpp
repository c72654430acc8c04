#pragma once

#include <cstddef>
#include <string_view>
#include <utility>

#include "noisyemo/bitstring.hpp"
#include "noisyemo/rng.hpp"

namespace noisyemo {

enum class CrossoverKind { OnePoint, Uniform };

std::string_view crossover_name(CrossoverKind kind) noexcept;
/// "onepoint" | "uniform"; throws ConfigError otherwise.
CrossoverKind parse_crossover(std::string_view name);

/// Children (a[1..c] b[c+1..n], b[1..c] a[c+1..n]) for an explicit cut c in [0, n].
std::pair<BitString, BitString> one_point_crossover_at(const BitString& a, const BitString& b,
                                                       std::size_t cut);

/// Cut drawn uniformly from [1, n-1]. For n == 1 the parents are copied and no
/// randomness is consumed.
std::pair<BitString, BitString> one_point_crossover(const BitString& a, const BitString& b,
                                                    Rng& rng);

/// Each position is swapped between the children with probability 1/2.
std::pair<BitString, BitString> uniform_crossover(const BitString& a, const BitString& b,
                                                  Rng& rng);

std::pair<BitString, BitString> crossover(CrossoverKind kind, const BitString& a,
                                          const BitString& b, Rng& rng);

/// Flips every bit independently with probability `rate`.
///
/// For 0 < rate < 1 the flipped positions are generated by geometric skips,
/// one uniform draw per flip plus one to run off the end. rate 0 and rate 1
/// consume no randomness.
BitString bitwise_mutation(const BitString& x, double rate, Rng& rng);

} // namespace noisyemo
