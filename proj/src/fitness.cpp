#include "noisyemo/fitness.hpp"

namespace noisyemo {

NoisyFitness to_noisy(const FitnessVector& f) {
    auto out = NoisyFitness::zeros(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = static_cast<double>(f[k]);
    return out;
}

std::string to_string(const FitnessVector& f) {
    std::string s = "(";
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (k > 0) s += ',';
        s += std::to_string(f[k]);
    }
    s += ')';
    return s;
}

namespace detail {
void throw_dimension_mismatch(std::size_t a, std::size_t b) {
    throw ContractViolation("fitness vectors of different dimension compared (" +
                            std::to_string(a) + " vs " + std::to_string(b) + ")");
}
} // namespace detail

} // namespace noisyemo
