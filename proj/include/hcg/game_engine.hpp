#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hcg/agent_update.hpp"
#include "hcg/assertion_model.hpp"
#include "hcg/metrics.hpp"

namespace hcg {

struct GameConfig {
    int agents = 40;
    std::int64_t steps = 4000;
    int labels = 5;
    int dimension = 3;
    PriorConfig priors{0.5, 0.0, 0.0};
    HedgeScales hedges{};
    WeightRange weights{};
    std::uint64_t seed = 1;
    // 0 selects steps / 100 (at least 1).
    std::int64_t checkpoint_every = 0;

    std::int64_t effective_checkpoint_every() const noexcept;

    // Throws ConfigError listing the first violated constraint.
    void validate() const;

    friend bool operator==(const GameConfig&, const GameConfig&) = default;
};

struct Population {
    std::vector<Agent> agents;
    std::int64_t round = 0;

    friend bool operator==(const Population&, const Population&) = default;
};

// One speaker/listener exchange, reported to observers after each step.
struct Interaction {
    int speaker = 0;
    int listener = 0;
    Point object;
    Assertion assertion;
    UpdateOutcome outcome;
};

using StepObserver = std::function<void(std::int64_t round, std::span<const Interaction>)>;

Population initialize(const GameConfig& cfg);

// Advances one round: random perfect matching, one object per pair, speaker
// asserts, listener updates against the speaker's weight, then every weight
// ages by 1/steps and agents at the maximum weight are reborn. All
// randomness is drawn from substreams keyed by (seed, round, pair/agent).
void step(Population& pop, const GameConfig& cfg, std::vector<Interaction>* trace = nullptr);

struct RunRecord {
    GameConfig config;
    std::vector<MetricSample> checkpoints;
    double wall_seconds = 0.0;

    std::uint64_t seed() const noexcept { return config.seed; }
    const MetricSample& final_sample() const { return checkpoints.back(); }
};

// Initialises, runs cfg.steps rounds and records APD/ALO at round 0, every
// checkpoint interval, and at the final round.
RunRecord run(const GameConfig& cfg, const StepObserver& observer = {});

} // namespace hcg
