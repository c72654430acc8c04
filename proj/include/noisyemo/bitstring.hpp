#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "noisyemo/rng.hpp"

namespace noisyemo {

/// Fixed-length genotype x in {0,1}^n, packed 64 bits per word.
///
/// Position i (0-based, i.e. x_{i+1}) lives in word i / 64 at bit i % 64.
/// Bits of the last word beyond n are always zero, which lets equality and
/// popcount work word-wise.
class BitString {
  public:
    /// All-zero string of length n. Throws ContractViolation for n == 0.
    explicit BitString(std::size_t n);

    /// Parses a string of '0'/'1' characters, x_1 first.
    static BitString from_string(std::string_view bits);
    static BitString random(std::size_t n, Rng& rng);
    /// 1^ones 0^(n - ones), the LOTZ Pareto set shape.
    static BitString ones_then_zeros(std::size_t n, std::size_t ones);

    std::size_t size() const noexcept { return n_; }

    bool operator[](std::size_t i) const noexcept {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(std::size_t i, bool value) noexcept;
    void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    void complement() noexcept;

    std::size_t count_ones() const noexcept;
    std::size_t count_zeros() const noexcept { return n_ - count_ones(); }
    /// Length of the longest all-ones prefix.
    std::size_t leading_ones() const noexcept;
    /// Length of the longest all-zeros suffix.
    std::size_t trailing_zeros() const noexcept;

    std::span<const std::uint64_t> words() const noexcept { return words_; }
    std::string to_string() const;

    friend bool operator==(const BitString&, const BitString&) = default;

  private:
    void clear_padding() noexcept;

    std::size_t n_;
    std::vector<std::uint64_t> words_;
};

} // namespace noisyemo
