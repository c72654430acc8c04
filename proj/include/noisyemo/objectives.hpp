#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "noisyemo/bitstring.hpp"
#include "noisyemo/fitness.hpp"

namespace noisyemo {

enum class ObjectiveId { Lotz, OneMinMax };

struct ObjectiveMeta {
    std::string name;
    std::size_t n = 0;
    std::int64_t f_min = 0;
    std::int64_t f_max = 0;
    std::size_t pareto_front_size = 0;
};

/// Registry entry. Algorithms only ever go through this table, so adding a
/// benchmark means adding a row in objectives.cpp.
struct Objective {
    ObjectiveId id;
    std::string_view name;
    FitnessVector (*evaluate)(const BitString& x);
    /// Closed-form Pareto front of the true objective for size n, sorted ascending.
    std::vector<FitnessVector> (*pareto_front)(std::size_t n);
    std::int64_t (*f_min)(std::size_t n);
    std::int64_t (*f_max)(std::size_t n);
};

std::span<const Objective> objective_registry() noexcept;
const Objective& objective(ObjectiveId id) noexcept;
/// Accepts the registry names ("lotz", "omm"), case-insensitive. Throws ConfigError.
ObjectiveId parse_objective(std::string_view name);
std::string_view objective_name(ObjectiveId id) noexcept;

std::size_t leading_ones(const BitString& x) noexcept;
std::size_t trailing_zeros(const BitString& x) noexcept;

/// LOTZ(x) = (LO(x), TZ(x)); OneMinMax(x) = (|x|_1, |x|_0).
FitnessVector evaluate_true(ObjectiveId id, const BitString& x);

/// Throws ContractViolation for n == 0.
ObjectiveMeta objective_meta(ObjectiveId id, std::size_t n);

} // namespace noisyemo
