#include "hcg/agent_update.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hcg/errors.hpp"

namespace hcg {

void WeightRange::validate() const {
    if (!(min > 0.0 && max < 1.0 && min < max)) {
        throw ConfigError("weight range must satisfy 0 < w-min < w-max < 1, got [" + std::to_string(min) + ", " +
                          std::to_string(max) + "]");
    }
}

UpdateOutcome compute_update(const LabelDef& label, const Assertion& assertion, const Point& x,
                             double speaker_weight, const HedgeScales& hedges) {
    UpdateOutcome out;
    out.label_index = assertion.label;

    const double w = speaker_weight;
    const double k = hedges.scale(assertion.hedge);
    const double b = label.bound;
    const double d = distance(x, label.prototype);

    if (assertion.polarity == Polarity::positive) {
        const double mu = std::clamp(1.0 - d / (k * b), 0.0, 1.0);
        if (mu >= w) {
            return out;
        }
        const double reach = (1.0 - w) * k;
        out.applied = true;
        if (reach < 1.0) {
            out.alpha = d / b + 1.0 - reach;
            out.lambda = (1.0 - reach) * (1.0 - reach * b / d);
        } else {
            out.alpha = d / (reach * b);
            out.lambda = 0.0;
        }
        return out;
    }

    const double mu = std::min(d / (k * b), 1.0);
    if (mu >= w) {
        return out;
    }
    const double reach = w * k;
    out.applied = true;
    if (d < degenerate_distance) {
        out.alpha = degenerate_distance / (reach * b);
        out.lambda = 0.0;
    } else if (reach < 1.0) {
        out.alpha = d / b + 1.0 - reach;
        out.lambda = (1.0 - reach) * (1.0 - reach * b / d);
    } else {
        out.alpha = d / (reach * b);
        out.lambda = 0.0;
    }
    return out;
}

void apply_update(LabelDef& label, const UpdateOutcome& outcome, const Point& x) {
    if (!outcome.applied) {
        return;
    }
    if (outcome.lambda != 0.0) {
        label.prototype = interpolate_clamped(label.prototype, x, outcome.lambda);
    }
    label.bound *= outcome.alpha;
}

UpdateOutcome listener_update(Agent& listener, const Assertion& assertion, const Point& x, double speaker_weight,
                              const HedgeScales& hedges) {
    if (assertion.label < 0 || static_cast<std::size_t>(assertion.label) >= listener.labels.size()) {
        throw ConfigError("assertion refers to label " + std::to_string(assertion.label) +
                          " but listener has " + std::to_string(listener.labels.size()));
    }
    if (!(speaker_weight > 0.0 && speaker_weight < 1.0)) {
        throw ConfigError("speaker weight must lie in (0,1)");
    }
    auto& label = listener.labels[static_cast<std::size_t>(assertion.label)];
    const UpdateOutcome out = compute_update(label, assertion, x, speaker_weight, hedges);
    apply_update(label, out, x);
    return out;
}

Agent random_agent(int id, std::size_t label_count, std::size_t dimension, const WeightRange& weights,
                   Stream& rng) {
    Agent agent;
    agent.id = id;
    agent.labels.reserve(label_count);
    for (std::size_t i = 0; i < label_count; ++i) {
        agent.labels.push_back(random_label(static_cast<int>(i), dimension, rng));
    }
    agent.weight = rng.uniform(weights.min, weights.max);
    return agent;
}

Agent reborn(const Agent& agent, std::size_t dimension, const WeightRange& weights, Stream& rng) {
    Agent fresh;
    fresh.id = agent.id;
    fresh.labels.reserve(agent.labels.size());
    for (std::size_t i = 0; i < agent.labels.size(); ++i) {
        fresh.labels.push_back(random_label(static_cast<int>(i), dimension, rng));
    }
    fresh.weight = weights.min;
    return fresh;
}

} // namespace hcg
