#include "noisyemo/theory_probe.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noisyemo/errors.hpp"
#include "noisyemo/experiments.hpp"
#include "noisyemo/nsga2.hpp"
#include "noisyemo/variation.hpp"

namespace noisyemo {

CdClass classify_point(const NoisyFitness& f, std::int64_t c, std::int64_t d) {
    if (f.size() != 2) throw ContractViolation("(C, D)-classification needs two objectives");
    const double lo = static_cast<double>(c);
    const double hi = static_cast<double>(c + d);
    auto inside = [&](double v) { return v >= lo && v <= hi; };
    if (inside(f[0]) && inside(f[1])) return CdClass::CdPoint;
    if (f[0] > hi && f[1] > hi) return CdClass::Superior;
    return CdClass::Other;
}

CdClassification classify_cd(std::span<const NoisyFitness> population, std::int64_t c,
                             std::int64_t d) {
    if (d < 0) throw ContractViolation("(C, D)-classification needs D >= 0");
    CdClassification out;
    out.c = c;
    out.d = d;
    for (const auto& f : population) {
        switch (classify_point(f, c, d)) {
            case CdClass::CdPoint: ++out.cd_points; break;
            case CdClass::Superior: ++out.superior_points; break;
            case CdClass::Other: ++out.other_points; break;
        }
    }
    return out;
}

void CrowdingBoundReport::merge(const CrowdingBoundReport& other) noexcept {
    bound = std::max(bound, other.bound);
    layers_checked += other.layers_checked;
    max_positive = std::max(max_positive, other.max_positive);
    violations += other.violations;
}

CrowdingBoundReport check_crowding_bound(std::span<const Individual> ranked, std::int64_t c,
                                         std::int64_t d) {
    std::vector<NoisyFitness> fitness;
    fitness.reserve(ranked.size());
    for (const auto& ind : ranked) fitness.push_back(ind.noisy());
    const auto cls = classify_cd(fitness, c, d);
    if (!cls.separated()) {
        throw ContractViolation("population is not (" + std::to_string(c) + ", " +
                                std::to_string(d) + ")-separated: " +
                                std::to_string(cls.other_points) + " of " +
                                std::to_string(cls.total()) + " points fall outside both classes");
    }

    CrowdingBoundReport report;
    report.bound = static_cast<std::size_t>(4 * (d + 1));

    std::size_t layers = 0;
    for (const auto& ind : ranked) layers = std::max(layers, ind.rank);
    // Per layer: number of members, members with positive crowding, and
    // whether every member is a (C, D)-point.
    std::vector<std::size_t> members(layers + 1, 0), positive(layers + 1, 0);
    std::vector<bool> pure(layers + 1, true);
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const std::size_t r = ranked[i].rank;
        if (r == 0) throw ContractViolation("check_crowding_bound: individual without a rank");
        ++members[r];
        if (ranked[i].crowding > 0.0) ++positive[r];
        if (classify_point(fitness[i], c, d) != CdClass::CdPoint) pure[r] = false;
    }
    for (std::size_t r = 1; r <= layers; ++r) {
        if (members[r] == 0 || !pure[r]) continue;
        ++report.layers_checked;
        report.max_positive = std::max(report.max_positive, positive[r]);
        if (positive[r] > report.bound) ++report.violations;
    }
    return report;
}

ProbabilityEstimate binomial_estimate(std::uint64_t successes, std::uint64_t trials, double z) {
    if (successes > trials) throw ContractViolation("binomial_estimate: successes > trials");
    ProbabilityEstimate e;
    e.successes = successes;
    e.trials = trials;
    if (trials == 0) return e;
    const double nt = static_cast<double>(trials);
    const double ph = static_cast<double>(successes) / nt;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nt;
    const double centre = (ph + z2 / (2.0 * nt)) / denom;
    const double half = z * std::sqrt(ph * (1.0 - ph) / nt + z2 / (4.0 * nt * nt)) / denom;
    e.estimate = ph;
    e.lower = std::max(0.0, centre - half);
    e.upper = std::min(1.0, centre + half);
    return e;
}

std::string_view parent_class_name(ParentClass c) noexcept {
    return c == ParentClass::OnFront ? "on_front" : "off_front";
}

bool on_lotz_pareto_set(const BitString& x) noexcept {
    return x.leading_ones() + x.trailing_zeros() == x.size();
}

double mutation_to_front_bound(std::size_t n, ParentClass parent) noexcept {
    const double three_over_n = 3.0 / static_cast<double>(n);
    return parent == ParentClass::OnFront ? std::exp(-1.0) + three_over_n : three_over_n;
}

double clone_probability(std::size_t n, double rate) noexcept {
    return std::pow(1.0 - rate, static_cast<double>(n));
}

namespace {

void require_trials(std::uint64_t trials) {
    if (trials < 10'000) {
        throw ConfigError("mutation probe needs at least 10^4 trials, got " + std::to_string(trials));
    }
}

BitString sample_parent(std::size_t n, ParentClass parent, Rng& rng) {
    if (parent == ParentClass::OnFront) {
        return BitString::ones_then_zeros(n, static_cast<std::size_t>(uniform_below(rng, n + 1)));
    }
    for (;;) {
        auto x = BitString::random(n, rng);
        if (!on_lotz_pareto_set(x)) return x;
    }
}

} // namespace

ProbabilityEstimate estimate_mutation_to_front(std::size_t n, ParentClass parent,
                                               std::uint64_t trials, Rng& rng) {
    require_trials(trials);
    if (parent == ParentClass::OffFront && n < 3) {
        throw ConfigError("off-front mutation probe needs n >= 3");
    }
    const double rate = 1.0 / static_cast<double>(n);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        if (on_lotz_pareto_set(bitwise_mutation(sample_parent(n, parent, rng), rate, rng))) ++hits;
    }
    return binomial_estimate(hits, trials);
}

ProbabilityEstimate estimate_mutation_to_front(const BitString& parent, std::uint64_t trials,
                                               Rng& rng) {
    require_trials(trials);
    const double rate = 1.0 / static_cast<double>(parent.size());
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        if (on_lotz_pareto_set(bitwise_mutation(parent, rate, rng))) ++hits;
    }
    return binomial_estimate(hits, trials);
}

std::string_view verdict_name(ProbeVerdict v) noexcept {
    switch (v) {
        case ProbeVerdict::Pass: return "pass";
        case ProbeVerdict::Fail: return "fail";
        case ProbeVerdict::Inconclusive: return "inconclusive";
        case ProbeVerdict::Descriptive: return "descriptive";
    }
    return "unknown";
}

ShrinkReport shrinking_step_stats(std::span<const std::size_t> sizes, double p, std::size_t alpha) {
    const std::vector<std::vector<std::size_t>> one{std::vector<std::size_t>(sizes.begin(), sizes.end())};
    return shrinking_step_stats(std::span<const std::vector<std::size_t>>(one), p, alpha);
}

ShrinkReport shrinking_step_stats(std::span<const std::vector<std::size_t>> episodes, double p,
                                  std::size_t alpha) {
    ShrinkReport r;
    r.p = p;
    r.alpha = alpha;
    r.threshold = static_cast<std::size_t>(std::ceil(p * static_cast<double>(alpha))) + 1;
    r.required = p / 2.0 - kProbeSlack;

    std::uint64_t qualifying = 0, shrinking = 0;
    for (const auto& sizes : episodes) {
        for (std::size_t t = 0; t + 1 < sizes.size(); ++t) {
            if (sizes[t] < r.threshold) continue;
            ++qualifying;
            if (sizes[t + 1] <= r.threshold) ++shrinking;
        }
    }
    r.frequency = binomial_estimate(shrinking, qualifying);

    if (p <= 0.0 || p >= 1.0) {
        r.verdict = ProbeVerdict::Descriptive;
    } else if (qualifying < kMinQualifyingSteps) {
        r.verdict = ProbeVerdict::Inconclusive;
    } else {
        r.verdict = r.frequency.lower >= r.required ? ProbeVerdict::Pass : ProbeVerdict::Fail;
    }
    return r;
}

std::vector<std::vector<std::size_t>> gsemo_shrink_episodes(
    ObjectiveId objective, std::size_t n, const NoiseModel& noise, const GsemoConfig& config,
    std::size_t alpha, std::uint64_t min_qualifying, std::uint64_t max_episode_steps, Rng& rng) {
    const double p = noise.kind == NoiseKind::Bernoulli ? noise.p : 0.0;
    const auto threshold = static_cast<std::size_t>(std::ceil(p * static_cast<double>(alpha))) + 1;
    if (n + 1 < threshold) throw ConfigError("shrink episodes: Pareto set smaller than the threshold");
    if (max_episode_steps == 0) throw ConfigError("shrink episodes need at least one step each");

    std::vector<BitString> pareto_set;
    for (std::size_t i = 0; i <= n; ++i) pareto_set.push_back(BitString::ones_then_zeros(n, i));

    std::vector<std::vector<std::size_t>> episodes;
    std::uint64_t qualifying = 0;
    while (qualifying < min_qualifying) {
        Gsemo gsemo(objective, n, noise, config);
        gsemo.initialize(pareto_set);
        std::vector<std::size_t> sizes{gsemo.population().size()};
        for (std::uint64_t s = 0; s < max_episode_steps && sizes.back() >= threshold; ++s) {
            ++qualifying;
            sizes.push_back(gsemo.step(rng).population_size);
        }
        episodes.push_back(std::move(sizes));
    }
    return episodes;
}

std::vector<std::size_t> gsemo_size_trace(ObjectiveId objective, std::size_t n,
                                          const NoiseModel& noise, const GsemoConfig& config,
                                          std::uint64_t generations, Rng& rng) {
    Gsemo gsemo(objective, n, noise, config);
    gsemo.initialize(rng);
    std::vector<std::size_t> sizes;
    sizes.reserve(generations + 1);
    sizes.push_back(gsemo.population().size());
    for (std::uint64_t g = 0; g < generations; ++g) sizes.push_back(gsemo.step(rng).population_size);
    return sizes;
}

MaxPopulationReport max_population_probe(ObjectiveId objective, std::size_t n,
                                         const NoiseModel& noise, const GsemoConfig& config,
                                         std::uint64_t budget, Rng& rng) {
    Gsemo gsemo(objective, n, noise, config);
    gsemo.initialize(rng);
    MaxPopulationReport r;
    r.max_population = gsemo.population().size();
    r.max_coverage = gsemo.coverage();
    while (r.max_coverage < gsemo.front_size() && gsemo.evaluations() <= budget) {
        const auto m = gsemo.step(rng);
        r.max_population = std::max(r.max_population, m.population_size);
        r.max_coverage = std::max(r.max_coverage, m.coverage);
        if (m.coverage == gsemo.front_size()) r.covered = true;
    }
    if (gsemo.coverage() == gsemo.front_size()) r.covered = true;
    r.evaluations = gsemo.evaluations();
    return r;
}

bool ProbeSuiteReport::passed() const noexcept {
    for (const auto& m : mutation) {
        if (m.verdict == ProbeVerdict::Fail) return false;
    }
    if (clone.verdict == ProbeVerdict::Fail) return false;
    for (const auto& c : crowding) {
        if (!c.report.passed() || !c.always_separated) return false;
    }
    if (shrink.verdict != ProbeVerdict::Pass) return false;
    for (const auto& run : max_population.runs) {
        if (run.covered || run.max_population >= max_population.n + 1) return false;
    }
    return true;
}

namespace {

enum Stream : std::uint64_t { kMutation = 1, kClone, kCrowding, kShrink, kMaxPop };

MutationProbe mutation_probe(std::size_t n, ParentClass parent, std::uint64_t trials, Rng& rng) {
    MutationProbe m;
    m.n = n;
    m.parent = parent;
    m.bound = mutation_to_front_bound(n, parent);
    m.estimate = estimate_mutation_to_front(n, parent, trials, rng);
    // Upper confidence bound under the analytic bound passes; a point estimate
    // under it but an interval poking over within slack only warns.
    if (m.estimate.upper <= m.bound) {
        m.verdict = ProbeVerdict::Pass;
    } else if (m.estimate.estimate <= m.bound + kProbeSlack) {
        m.verdict = ProbeVerdict::Inconclusive;
    } else {
        m.verdict = ProbeVerdict::Fail;
    }
    return m;
}

CloneProbe clone_probe(std::size_t n, std::uint64_t trials, Rng& rng) {
    CloneProbe c;
    c.n = n;
    c.exact = clone_probability(n, 1.0 / static_cast<double>(n));
    const BitString parent = BitString::ones_then_zeros(n, n);
    const double rate = 1.0 / static_cast<double>(n);
    std::uint64_t clones = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        if (bitwise_mutation(parent, rate, rng) == parent) ++clones;
    }
    c.estimate = binomial_estimate(clones, trials);
    c.verdict = (c.exact >= c.estimate.lower && c.exact <= c.estimate.upper) ? ProbeVerdict::Pass
                                                                              : ProbeVerdict::Fail;
    return c;
}

CrowdingProbe crowding_probe(ObjectiveId objective, std::size_t n, double p,
                             std::uint64_t generations, Rng& rng) {
    CrowdingProbe probe;
    probe.objective = objective;
    probe.n = n;
    probe.p = p;
    probe.report.bound = 4 * (n + 1);
    const auto d = static_cast<std::int64_t>(n);
    const NoiseModel noise = NoiseModel::bernoulli(static_cast<double>(n + 1), p);
    Nsga2Config config;
    config.mu = default_mu(n);

    // Runs restart after covering the front so every sampled generation is a
    // live one; each survival step contributes its R_t.
    while (probe.generations < generations) {
        Nsga2 algo(objective, n, noise, config);
        algo.initialize(rng);
        algo.set_survival_observer([&](std::span<const Individual> combined) {
            std::vector<NoisyFitness> fitness;
            fitness.reserve(combined.size());
            for (const auto& ind : combined) fitness.push_back(ind.noisy());
            if (!classify_cd(fitness, 0, d).separated()) {
                probe.always_separated = false;
                return;
            }
            probe.report.merge(check_crowding_bound(combined, 0, d));
        });
        ++probe.runs;
        while (probe.generations < generations) {
            const auto m = algo.step(rng);
            ++probe.generations;
            if (m.coverage == algo.front_size()) break;
        }
    }
    return probe;
}

} // namespace

ProbeSuiteReport run_probe_suite(const ProbeSuiteConfig& config) {
    ProbeSuiteReport out;
    out.config = config;

    {
        Rng rng(mix_seed(config.seed, kMutation));
        out.mutation.push_back(
            mutation_probe(config.mutation_n, ParentClass::OnFront, config.mutation_trials, rng));
        out.mutation.push_back(
            mutation_probe(config.mutation_n, ParentClass::OffFront, config.mutation_trials, rng));
    }
    {
        Rng rng(mix_seed(config.seed, kClone));
        out.clone = clone_probe(config.mutation_n, config.mutation_trials, rng);
    }
    for (std::size_t i = 0; i < config.crowding_p.size(); ++i) {
        Rng rng(mix_seed(mix_seed(config.seed, kCrowding), i));
        out.crowding.push_back(crowding_probe(config.crowding_objective, config.crowding_n,
                                              config.crowding_p[i], config.crowding_generations,
                                              rng));
    }
    {
        Rng rng(mix_seed(config.seed, kShrink));
        const std::size_t n = config.shrink_n;
        const std::size_t alpha = n + 1;
        const NoiseModel noise = NoiseModel::bernoulli(static_cast<double>(n + 1), config.shrink_p);
        const auto episodes = gsemo_shrink_episodes(config.shrink_objective, n, noise, GsemoConfig{},
                                                    alpha, config.shrink_min_qualifying, 10'000, rng);
        out.shrink_episodes = episodes.size();
        for (const auto& e : episodes) out.shrink_generations += e.size() - 1;
        out.shrink = shrinking_step_stats(std::span<const std::vector<std::size_t>>(episodes),
                                          config.shrink_p, alpha);
    }
    {
        const std::size_t n = config.maxpop_n;
        auto& mp = out.max_population;
        mp.objective = config.maxpop_objective;
        mp.n = n;
        mp.p = config.maxpop_p;
        mp.budget = default_budget(n);
        const NoiseModel noise = NoiseModel::bernoulli(static_cast<double>(n + 1), config.maxpop_p);
        for (std::size_t r = 0; r < config.maxpop_runs; ++r) {
            Rng rng(mix_seed(mix_seed(config.seed, kMaxPop), r));
            mp.runs.push_back(
                max_population_probe(config.maxpop_objective, n, noise, GsemoConfig{}, mp.budget, rng));
        }
    }
    return out;
}

} // namespace noisyemo
