#pragma once

#include <cstdint>
#include <random>

namespace noisyemo {

/// Every run owns exactly one of these. The Mersenne Twister output sequence is
/// fixed by the standard, and all derived variates below are computed by hand,
/// so a (seed, config) pair reproduces bit-identical runs on any conforming
/// implementation.
using Rng = std::mt19937_64;

/// SplitMix64 finaliser applied to the pair; used to derive cell and run seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) noexcept;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform01(Rng& rng) noexcept;

/// Uniform integer in [0, bound). Unbiased (rejection on the low remainder).
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// One uniform01 draw compared against p.
bool bernoulli(Rng& rng, double p) noexcept;

/// One raw draw, lowest bit.
bool coin_flip(Rng& rng) noexcept;

/// Box-Muller (cosine branch) on two uniform01 draws, u1 mapped to (0, 1].
/// Consumes exactly two draws per call; nothing is cached between calls.
double standard_normal(Rng& rng) noexcept;

} // namespace noisyemo
