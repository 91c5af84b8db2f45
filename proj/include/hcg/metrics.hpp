#pragma once

#include <cstdint>
#include <span>

#include "hcg/agent_update.hpp"
#include "hcg/conceptual_space.hpp"

namespace hcg {

struct MetricSample {
    std::int64_t round = 0;
    double apd = 0.0;
    double alo = 0.0;

    friend bool operator==(const MetricSample&, const MetricSample&) = default;
};

// Hausdorff-style distance between two label neighbourhoods: prototype
// distance plus the difference of threshold bounds.
double label_distance(const LabelDef& a, const LabelDef& b);

// Sum of label_distance over matching label indices.
double ipd(const Agent& j, const Agent& k);

// Mean ipd over all unordered agent pairs. Requires at least two agents.
double apd(std::span<const Agent> agents);

// max_x min(mu_a(x), mu_b(x)) for two basic labels. The two cones meet on
// the segment between prototypes, which lies in the cube by convexity:
// clamp(1 - |Pa - Pb| / (ba + bb), 0, 1).
double pair_overlap(const LabelDef& a, const LabelDef& b);

// Mean pair_overlap over the agent's unordered label pairs. Requires n >= 2.
double ilo(const Agent& agent);

// Mean ilo over agents. Requires at least one agent.
double alo(std::span<const Agent> agents);

MetricSample measure(std::span<const Agent> agents, std::int64_t round);

} // namespace hcg
