#include "noisyemo/pareto.hpp"

#include <algorithm>
#include <cstdint>

#include "noisyemo/bitstring.hpp"
#include "noisyemo/errors.hpp"

namespace noisyemo {

std::vector<FitnessVector> pareto_front_oracle(ObjectiveId id, std::size_t n) {
    if (n == 0) throw ContractViolation("pareto_front_oracle: n must be at least 1");
    auto front = objective(id).pareto_front(n);
    std::sort(front.begin(), front.end());
    return front;
}

std::vector<FitnessVector> pareto_front_oracle(std::string_view objective_name, std::size_t n) {
    return pareto_front_oracle(parse_objective(objective_name), n);
}

std::vector<FitnessVector> brute_force_front(ObjectiveId id, std::size_t n) {
    if (n == 0 || n > 20) throw ContractViolation("brute_force_front: need 1 <= n <= 20");

    std::vector<FitnessVector> values;
    values.reserve(std::size_t{1} << n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        BitString x(n);
        for (std::size_t i = 0; i < n; ++i) x.set(i, (mask >> i) & 1u);
        values.push_back(evaluate_true(id, x));
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    std::vector<FitnessVector> front;
    for (const auto& candidate : values) {
        const bool dominated = std::any_of(values.begin(), values.end(), [&](const auto& other) {
            return dominates(other, candidate);
        });
        if (!dominated) front.push_back(candidate);
    }
    return front;
}

std::size_t coverage_count(std::span<const FitnessVector> population,
                           std::span<const FitnessVector> front) {
    std::vector<FitnessVector> sorted(front.begin(), front.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const FrontIndex index(std::move(sorted));
    return index.count(population, [](const FitnessVector& f) -> const FitnessVector& { return f; });
}

FrontIndex::FrontIndex(std::vector<FitnessVector> front) : front_(std::move(front)) {
    std::sort(front_.begin(), front_.end());
    front_.erase(std::unique(front_.begin(), front_.end()), front_.end());
}

std::ptrdiff_t FrontIndex::find(const FitnessVector& f) const noexcept {
    const auto it = std::lower_bound(front_.begin(), front_.end(), f);
    if (it == front_.end() || !(*it == f)) return -1;
    return it - front_.begin();
}

} // namespace noisyemo
