#include "hcg/game_engine.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>
#include <utility>

#include "hcg/errors.hpp"
#include "hcg/rng.hpp"

namespace hcg {

std::int64_t GameConfig::effective_checkpoint_every() const noexcept {
    if (checkpoint_every > 0) {
        return checkpoint_every;
    }
    return std::max<std::int64_t>(1, steps / 100);
}

void GameConfig::validate() const {
    if (agents < 2 || agents % 2 != 0) {
        throw ConfigError("agents must be an even number >= 2, got " + std::to_string(agents));
    }
    if (steps < 0) {
        throw ConfigError("steps must be non-negative");
    }
    if (labels < 2) {
        throw ConfigError("labels per agent must be at least 2, got " + std::to_string(labels));
    }
    if (dimension < 1) {
        throw ConfigError("dimension must be at least 1");
    }
    if (checkpoint_every < 0) {
        throw ConfigError("checkpoint interval must be non-negative");
    }
    if (steps > 0 && steps % effective_checkpoint_every() != 0) {
        throw ConfigError("checkpoint interval " + std::to_string(effective_checkpoint_every()) +
                          " does not divide steps " + std::to_string(steps));
    }
    priors.validate();
    hedges.validate();
    weights.validate();
}

Population initialize(const GameConfig& cfg) {
    cfg.validate();
    Population pop;
    pop.agents.reserve(static_cast<std::size_t>(cfg.agents));
    for (int i = 0; i < cfg.agents; ++i) {
        Stream rng = substream(cfg.seed, StreamTag::init, static_cast<std::uint64_t>(i));
        pop.agents.push_back(random_agent(i, static_cast<std::size_t>(cfg.labels),
                                          static_cast<std::size_t>(cfg.dimension), cfg.weights, rng));
    }
    return pop;
}

void step(Population& pop, const GameConfig& cfg, std::vector<Interaction>* trace) {
    const std::size_t n_agents = pop.agents.size();
    const auto round = static_cast<std::uint64_t>(pop.round);
    const auto dim = static_cast<std::size_t>(cfg.dimension);

    std::vector<int> order(n_agents);
    std::iota(order.begin(), order.end(), 0);
    Stream pairing = substream(cfg.seed, StreamTag::pairing, round);
    for (std::size_t i = n_agents; i > 1; --i) {
        const auto j = static_cast<std::size_t>(pairing.below(i));
        std::swap(order[i - 1], order[j]);
    }

    if (trace) {
        trace->clear();
        trace->reserve(n_agents / 2);
    }
    // Pairs touch disjoint agents, so their order within the round is irrelevant.
    for (std::size_t p = 0; p < n_agents / 2; ++p) {
        const int s = order[2 * p];
        const int l = order[2 * p + 1];
        Stream rng = substream(cfg.seed, StreamTag::interaction, round, p);
        Point x = Point::uniform(dim, rng);

        const Agent& speaker = pop.agents[static_cast<std::size_t>(s)];
        const Assertion said = choose_assertion(speaker.labels, cfg.hedges, x, cfg.priors);
        const UpdateOutcome outcome =
            listener_update(pop.agents[static_cast<std::size_t>(l)], said, x, speaker.weight, cfg.hedges);
        if (trace) {
            trace->push_back({s, l, std::move(x), said, outcome});
        }
    }

    const double increment = cfg.steps > 0 ? 1.0 / static_cast<double>(cfg.steps) : 0.0;
    for (auto& agent : pop.agents) {
        agent.weight += increment;
        if (agent.weight >= cfg.weights.max) {
            Stream rng = substream(cfg.seed, StreamTag::rebirth, round, static_cast<std::uint64_t>(agent.id));
            agent = reborn(agent, dim, cfg.weights, rng);
        }
    }
    ++pop.round;
}

RunRecord run(const GameConfig& cfg, const StepObserver& observer) {
    const auto started = std::chrono::steady_clock::now();
    RunRecord record;
    record.config = cfg;

    Population pop = initialize(cfg);
    record.checkpoints.push_back(measure(pop.agents, 0));

    const std::int64_t every = cfg.effective_checkpoint_every();
    std::vector<Interaction> trace;
    for (std::int64_t t = 0; t < cfg.steps; ++t) {
        step(pop, cfg, observer ? &trace : nullptr);
        if (observer) {
            observer(pop.round, trace);
        }
        if (pop.round % every == 0) {
            record.checkpoints.push_back(measure(pop.agents, pop.round));
        }
    }

    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return record;
}

} // namespace hcg
