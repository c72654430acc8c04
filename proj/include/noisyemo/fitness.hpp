#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>

#include "noisyemo/errors.hpp"

namespace noisyemo {

inline constexpr std::size_t kMaxObjectives = 4;

/// Small fixed-capacity objective vector (f_1, ..., f_d). Stored inline so
/// populations stay contiguous; unused slots are zero.
template <typename T>
class BasicFitness {
  public:
    using value_type = T;

    BasicFitness() = default;
    BasicFitness(std::initializer_list<T> values) {
        if (values.size() == 0 || values.size() > kMaxObjectives) {
            throw ContractViolation("fitness vector needs 1.." + std::to_string(kMaxObjectives) +
                                    " objectives");
        }
        std::copy(values.begin(), values.end(), values_.begin());
        size_ = static_cast<std::uint8_t>(values.size());
    }

    /// d objectives, all zero.
    static BasicFitness zeros(std::size_t d) {
        if (d == 0 || d > kMaxObjectives) {
            throw ContractViolation("fitness vector needs 1.." + std::to_string(kMaxObjectives) +
                                    " objectives");
        }
        BasicFitness out;
        out.size_ = static_cast<std::uint8_t>(d);
        return out;
    }

    std::size_t size() const noexcept { return size_; }
    T operator[](std::size_t k) const noexcept { return values_[k]; }
    T& operator[](std::size_t k) noexcept { return values_[k]; }
    std::span<const T> values() const noexcept { return {values_.data(), size_}; }

    /// Adds the same scalar to every coordinate.
    BasicFitness shifted(T delta) const noexcept {
        BasicFitness out = *this;
        for (std::size_t k = 0; k < size_; ++k) out.values_[k] += delta;
        return out;
    }

    friend bool operator==(const BasicFitness&, const BasicFitness&) = default;
    friend auto operator<=>(const BasicFitness&, const BasicFitness&) = default;

  private:
    std::array<T, kMaxObjectives> values_{};
    std::uint8_t size_ = 0;
};

/// True (noise-free) objective values.
using FitnessVector = BasicFitness<std::int64_t>;
/// Observed objective values. Real-valued because the Bernoulli shift is any
/// real and Gaussian noise is continuous; integers below 2^53 stay exact.
using NoisyFitness = BasicFitness<double>;

NoisyFitness to_noisy(const FitnessVector& f);
std::string to_string(const FitnessVector& f);

namespace detail {
[[noreturn]] void throw_dimension_mismatch(std::size_t a, std::size_t b);
} // namespace detail

/// a_k >= b_k for every objective k (maximisation).
template <typename T>
bool weakly_dominates(const BasicFitness<T>& a, const BasicFitness<T>& b) {
    if (a.size() != b.size()) detail::throw_dimension_mismatch(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] < b[k]) return false;
    }
    return true;
}

/// Weak dominance with at least one strict coordinate.
template <typename T>
bool dominates(const BasicFitness<T>& a, const BasicFitness<T>& b) {
    if (a.size() != b.size()) detail::throw_dimension_mismatch(a.size(), b.size());
    bool strict = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] < b[k]) return false;
        strict = strict || a[k] > b[k];
    }
    return strict;
}

} // namespace noisyemo
