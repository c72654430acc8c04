#include "noisyemo/bitstring.hpp"

#include <bit>

#include "noisyemo/errors.hpp"

namespace noisyemo {

namespace {
std::size_t word_count(std::size_t n) { return (n + 63) / 64; }
} // namespace

BitString::BitString(std::size_t n) : n_(n), words_(word_count(n), 0) {
    if (n == 0) throw ContractViolation("BitString length must be at least 1");
}

BitString BitString::from_string(std::string_view bits) {
    BitString x(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            x.set(i, true);
        } else if (bits[i] != '0') {
            throw ContractViolation("BitString::from_string: expected '0' or '1'");
        }
    }
    return x;
}

BitString BitString::random(std::size_t n, Rng& rng) {
    BitString x(n);
    for (auto& w : x.words_) w = rng();
    x.clear_padding();
    return x;
}

BitString BitString::ones_then_zeros(std::size_t n, std::size_t ones) {
    if (ones > n) throw ContractViolation("ones_then_zeros: more ones than bits");
    BitString x(n);
    std::size_t i = 0;
    for (; i + 64 <= ones; i += 64) x.words_[i >> 6] = ~std::uint64_t{0};
    if (i < ones) x.words_[i >> 6] = (std::uint64_t{1} << (ones - i)) - 1;
    return x;
}

void BitString::set(std::size_t i, bool value) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
        words_[i >> 6] |= mask;
    } else {
        words_[i >> 6] &= ~mask;
    }
}

void BitString::complement() noexcept {
    for (auto& w : words_) w = ~w;
    clear_padding();
}

std::size_t BitString::count_ones() const noexcept {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::size_t BitString::leading_ones() const noexcept {
    // Padding bits are zero, so the scan stops at n on its own.
    std::size_t total = 0;
    for (auto w : words_) {
        const int run = std::countr_one(w);
        total += static_cast<std::size_t>(run);
        if (run < 64) break;
    }
    return total;
}

std::size_t BitString::trailing_zeros() const noexcept {
    const std::size_t last = words_.size() - 1;
    std::size_t valid = n_ - 64 * last;
    std::size_t total = 0;
    for (std::size_t k = words_.size(); k-- > 0;) {
        const std::uint64_t w = words_[k];
        if (w == 0) {
            total += valid;
        } else {
            total += static_cast<std::size_t>(std::countl_zero(w)) - (64 - valid);
            break;
        }
        valid = 64;
    }
    return total;
}

std::string BitString::to_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i) {
        if ((*this)[i]) s[i] = '1';
    }
    return s;
}

void BitString::clear_padding() noexcept {
    const std::size_t used = n_ & 63;
    if (used != 0) words_.back() &= (std::uint64_t{1} << used) - 1;
}

} // namespace noisyemo
