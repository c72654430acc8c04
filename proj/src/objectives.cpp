#include "noisyemo/objectives.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "noisyemo/errors.hpp"

namespace noisyemo {

namespace {

FitnessVector lotz(const BitString& x) {
    return FitnessVector{static_cast<std::int64_t>(x.leading_ones()),
                         static_cast<std::int64_t>(x.trailing_zeros())};
}

FitnessVector one_min_max(const BitString& x) {
    const auto ones = static_cast<std::int64_t>(x.count_ones());
    return FitnessVector{ones, static_cast<std::int64_t>(x.size()) - ones};
}

// Both shipped objectives have front {(i, n - i) : i in [0, n]}.
std::vector<FitnessVector> antidiagonal_front(std::size_t n) {
    std::vector<FitnessVector> front;
    front.reserve(n + 1);
    const auto size = static_cast<std::int64_t>(n);
    for (std::int64_t i = 0; i <= size; ++i) front.push_back(FitnessVector{i, size - i});
    return front;
}

std::int64_t zero(std::size_t) { return 0; }
std::int64_t n_value(std::size_t n) { return static_cast<std::int64_t>(n); }

constexpr std::array<Objective, 2> kRegistry{{
    {ObjectiveId::Lotz, "lotz", &lotz, &antidiagonal_front, &zero, &n_value},
    {ObjectiveId::OneMinMax, "omm", &one_min_max, &antidiagonal_front, &zero, &n_value},
}};

} // namespace

std::span<const Objective> objective_registry() noexcept { return kRegistry; }

const Objective& objective(ObjectiveId id) noexcept {
    return kRegistry[static_cast<std::size_t>(id)];
}

ObjectiveId parse_objective(std::string_view name) {
    std::string lowered(name);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lowered == "oneminmax") lowered = "omm";
    for (const auto& entry : kRegistry) {
        if (entry.name == lowered) return entry.id;
    }
    throw ConfigError("unknown objective '" + std::string(name) + "' (expected lotz or omm)");
}

std::string_view objective_name(ObjectiveId id) noexcept { return objective(id).name; }

std::size_t leading_ones(const BitString& x) noexcept { return x.leading_ones(); }
std::size_t trailing_zeros(const BitString& x) noexcept { return x.trailing_zeros(); }

FitnessVector evaluate_true(ObjectiveId id, const BitString& x) { return objective(id).evaluate(x); }

ObjectiveMeta objective_meta(ObjectiveId id, std::size_t n) {
    if (n == 0) throw ContractViolation("objective_meta: n must be at least 1");
    const Objective& obj = objective(id);
    return ObjectiveMeta{std::string(obj.name), n, obj.f_min(n), obj.f_max(n),
                         obj.pareto_front(n).size()};
}

} // namespace noisyemo
