#include "noisyemo/noise.hpp"

#include <cmath>
#include <string>

#include "noisyemo/errors.hpp"

namespace noisyemo {

std::string_view noise_kind_name(NoiseKind kind) noexcept {
    switch (kind) {
    case NoiseKind::None: return "none";
    case NoiseKind::Bernoulli: return "bernoulli";
    case NoiseKind::Gaussian: return "gaussian";
    }
    return "none";
}

NoiseKind parse_noise_kind(std::string_view name) {
    if (name == "none") return NoiseKind::None;
    if (name == "bernoulli") return NoiseKind::Bernoulli;
    if (name == "gaussian") return NoiseKind::Gaussian;
    throw ConfigError("unknown noise model '" + std::string(name) +
                      "' (expected none, bernoulli or gaussian)");
}

NoiseModel NoiseModel::bernoulli(double delta, double p) {
    NoiseModel m{NoiseKind::Bernoulli, delta, p, 0.0};
    m.validate();
    return m;
}

NoiseModel NoiseModel::gaussian(double sigma) {
    NoiseModel m{NoiseKind::Gaussian, 0.0, 0.0, sigma};
    m.validate();
    return m;
}

void NoiseModel::validate() const {
    switch (kind) {
    case NoiseKind::None: return;
    case NoiseKind::Bernoulli:
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ConfigError("Bernoulli noise probability must lie in [0, 1], got " +
                              std::to_string(p));
        }
        if (!std::isfinite(delta)) throw ConfigError("Bernoulli noise strength must be finite");
        return;
    case NoiseKind::Gaussian:
        if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
            throw ConfigError("Gaussian noise sigma must be finite and >= 0, got " +
                              std::to_string(sigma));
        }
        return;
    }
}

NoisyEvaluation draw_noisy_fitness(const NoiseModel& model, const FitnessVector& true_fitness,
                                   Rng& rng, std::uint64_t generation) {
    NoisyEvaluation out{true_fitness, to_noisy(true_fitness), false, generation};
    switch (model.kind) {
    case NoiseKind::None: break;
    case NoiseKind::Bernoulli:
        if (bernoulli(rng, model.p)) {
            out.noisy_fitness = out.noisy_fitness.shifted(model.delta);
            out.was_noisy = true;
        }
        break;
    case NoiseKind::Gaussian:
        out.noisy_fitness = out.noisy_fitness.shifted(model.sigma * standard_normal(rng));
        break;
    }
    return out;
}

} // namespace noisyemo
