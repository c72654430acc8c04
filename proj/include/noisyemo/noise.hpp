#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "noisyemo/fitness.hpp"
#include "noisyemo/rng.hpp"

namespace noisyemo {

enum class NoiseKind { None, Bernoulli, Gaussian };

std::string_view noise_kind_name(NoiseKind kind) noexcept;
/// "none" | "bernoulli" | "gaussian"; throws ConfigError otherwise.
NoiseKind parse_noise_kind(std::string_view name);

/// Posterior noise applied to the whole fitness vector after evaluation.
///
/// Bernoulli(delta, p): with probability p every objective is shifted by delta.
/// Gaussian(sigma): every objective is shifted by one shared N(0, sigma^2) draw.
struct NoiseModel {
    NoiseKind kind = NoiseKind::None;
    double delta = 0.0;
    double p = 0.0;
    double sigma = 0.0;

    static NoiseModel none() noexcept { return {}; }
    static NoiseModel bernoulli(double delta, double p);
    static NoiseModel gaussian(double sigma);

    /// Throws ConfigError if p is outside [0, 1] or sigma is negative / not finite.
    void validate() const;

    friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

struct NoisyEvaluation {
    FitnessVector true_fitness;
    NoisyFitness noisy_fitness;
    bool was_noisy = false;
    std::uint64_t generation = 0;
};

/// One fresh draw. RNG consumption per call is fixed by the model kind:
/// None takes nothing, Bernoulli one uniform, Gaussian two uniforms.
NoisyEvaluation draw_noisy_fitness(const NoiseModel& model, const FitnessVector& true_fitness,
                                   Rng& rng, std::uint64_t generation = 0);

/// Per-run noisy evaluation cache.
///
/// An evaluation is valid only for the generation it was drawn in. Asking for
/// a member's noisy fitness inside the current generation returns its first
/// draw; after stamp_generation() moves on, every member is re-drawn on its
/// next evaluation. Only fresh draws are counted as fitness evaluations.
template <typename Member>
class NoisyEvaluator {
  public:
    explicit NoisyEvaluator(NoiseModel model) : model_(model) { model_.validate(); }

    const NoiseModel& model() const noexcept { return model_; }
    std::uint64_t generation() const noexcept { return generation_; }
    std::uint64_t evaluations() const noexcept { return evaluations_; }

    /// Generations must strictly increase within a run.
    void stamp_generation(std::uint64_t generation) {
        if (generation <= generation_ && started_) {
            throw ContractViolation("generation stamp must strictly increase (current " +
                                    std::to_string(generation_) + ", requested " +
                                    std::to_string(generation) + ")");
        }
        generation_ = generation;
        started_ = true;
    }

    const NoisyEvaluation& evaluate(Member& member, Rng& rng) {
        if (!is_current(member)) {
            member.eval = draw_noisy_fitness(model_, member.true_fitness, rng, generation_);
            ++evaluations_;
        }
        return *member.eval;
    }

    /// Cached draw of the current generation; a stale or missing stamp is a contract violation.
    const NoisyEvaluation& cached(const Member& member) const {
        if (!is_current(member)) {
            throw ContractViolation("noisy fitness queried with a stale generation stamp");
        }
        return *member.eval;
    }

    bool is_current(const Member& member) const noexcept {
        return member.eval.has_value() && member.eval->generation == generation_;
    }

  private:
    NoiseModel model_;
    std::uint64_t generation_ = 0;
    std::uint64_t evaluations_ = 0;
    bool started_ = false;
};

} // namespace noisyemo
