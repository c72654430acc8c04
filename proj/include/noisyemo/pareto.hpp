#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "noisyemo/fitness.hpp"
#include "noisyemo/objectives.hpp"

namespace noisyemo {

/// Exact Pareto front of the true objective (closed form), sorted ascending.
std::vector<FitnessVector> pareto_front_oracle(ObjectiveId id, std::size_t n);
/// Same, looked up by registry name; unknown names raise ConfigError.
std::vector<FitnessVector> pareto_front_oracle(std::string_view objective_name, std::size_t n);

/// Non-dominated set of {f(x) : x in {0,1}^n} by full enumeration. Limited to n <= 20.
std::vector<FitnessVector> brute_force_front(ObjectiveId id, std::size_t n);

/// Number of distinct front vectors present among the population's true fitnesses.
std::size_t coverage_count(std::span<const FitnessVector> population,
                           std::span<const FitnessVector> front);

/// Precomputed front for repeated coverage queries inside a run.
class FrontIndex {
  public:
    explicit FrontIndex(std::vector<FitnessVector> front);

    std::size_t size() const noexcept { return front_.size(); }
    std::span<const FitnessVector> front() const noexcept { return front_; }

    template <typename Range, typename Proj>
    std::size_t count(const Range& population, Proj proj) const {
        std::vector<unsigned char> seen(front_.size(), 0);
        std::size_t covered = 0;
        for (const auto& member : population) {
            const std::ptrdiff_t slot = find(proj(member));
            if (slot >= 0 && !seen[static_cast<std::size_t>(slot)]) {
                seen[static_cast<std::size_t>(slot)] = 1;
                ++covered;
            }
        }
        return covered;
    }

  private:
    std::ptrdiff_t find(const FitnessVector& f) const noexcept;

    std::vector<FitnessVector> front_;
};

} // namespace noisyemo
