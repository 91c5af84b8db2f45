#pragma once

#include <cstddef>
#include <vector>

#include "hcg/assertion_model.hpp"
#include "hcg/conceptual_space.hpp"
#include "hcg/rng.hpp"

namespace hcg {

struct WeightRange {
    double min = 0.2;
    double max = 0.8;

    void validate() const;

    friend bool operator==(const WeightRange&, const WeightRange&) = default;
};

struct Agent {
    std::vector<LabelDef> labels;
    double weight = 0.2;
    int id = 0;

    friend bool operator==(const Agent&, const Agent&) = default;
};

// Expected prototype shift `lambda` (P' = P + lambda (x - P)) and bound
// scale `alpha` (b' = alpha b) for one listener update.
struct UpdateOutcome {
    bool applied = false;
    double lambda = 0.0;
    double alpha = 1.0;
    int label_index = 0;
};

// Below this object-to-prototype distance a negated update skips the
// prototype move and only shrinks the bound.
inline constexpr double degenerate_distance = 1e-12;

// Computes the update the listener would make to `label` on hearing
// `assertion` about x from a speaker of weight `speaker_weight`. Pure.
// When the asserted literal already has appropriateness >= w the outcome
// is the identity (applied = false).
UpdateOutcome compute_update(const LabelDef& label, const Assertion& assertion, const Point& x,
                             double speaker_weight, const HedgeScales& hedges);

// Applies an outcome to a label. Prototype is clamped into the cube; the
// bound is rescaled without a cap.
void apply_update(LabelDef& label, const UpdateOutcome& outcome, const Point& x);

UpdateOutcome listener_update(Agent& listener, const Assertion& assertion, const Point& x, double speaker_weight,
                              const HedgeScales& hedges);

// Fresh agent: uniform prototypes, bounds ~ U[0.5, 2], weight ~ U[min, max].
Agent random_agent(int id, std::size_t label_count, std::size_t dimension, const WeightRange& weights, Stream& rng);

// Replaces the label set with a random one and resets the weight to the
// minimum. Only the id is kept.
Agent reborn(const Agent& agent, std::size_t dimension, const WeightRange& weights, Stream& rng);

} // namespace hcg
