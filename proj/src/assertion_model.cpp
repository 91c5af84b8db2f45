#include "hcg/assertion_model.hpp"

#include <algorithm>
#include <cmath>

#include "hcg/errors.hpp"

namespace hcg {

namespace {

// Sort key for hedges within equal appropriateness: quite < basic < very.
int hedge_tie_rank(HedgeKind h) {
    switch (h) {
    case HedgeKind::quite: return 0;
    case HedgeKind::basic: return 1;
    case HedgeKind::very: return 2;
    }
    return 3;
}

} // namespace

std::size_t assertion_index(const Assertion& a, std::size_t label_count) {
    if (a.label < 0 || static_cast<std::size_t>(a.label) >= label_count) {
        throw ConfigError("assertion label " + std::to_string(a.label) + " out of range");
    }
    return (static_cast<std::size_t>(a.polarity) * 3 + static_cast<std::size_t>(a.hedge)) * label_count +
           static_cast<std::size_t>(a.label);
}

Assertion assertion_at(std::size_t index, std::size_t label_count) {
    if (label_count == 0 || index >= assertion_count(label_count)) {
        throw ConfigError("assertion index out of range");
    }
    Assertion a;
    a.label = static_cast<int>(index % label_count);
    const std::size_t group = index / label_count;
    a.hedge = static_cast<HedgeKind>(group % 3);
    a.polarity = static_cast<Polarity>(group / 3);
    return a;
}

std::string to_string(const Assertion& a) {
    std::string s;
    if (a.polarity == Polarity::negated) {
        s += "not ";
    }
    if (a.hedge != HedgeKind::basic) {
        s += to_string(a.hedge);
        s += ' ';
    }
    s += "L" + std::to_string(a.label + 1);
    return s;
}

double PriorConfig::hedge_factor(HedgeKind h) const noexcept {
    switch (h) {
    case HedgeKind::very: return pv;
    case HedgeKind::quite: return pq;
    case HedgeKind::basic: break;
    }
    return pb();
}

void PriorConfig::validate() const {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(pp)) {
        throw ConfigError("pp must lie in [0,1], got " + std::to_string(pp));
    }
    if (!in_unit(pv) || !in_unit(pq)) {
        throw ConfigError("pv and pq must lie in [0,1]");
    }
    if (pv + pq > 1.0 + 1e-12) {
        throw ConfigError("pv + pq must not exceed 1, got " + std::to_string(pv + pq));
    }
}

double assertion_prior(const Assertion& a, const PriorConfig& priors, std::size_t label_count) {
    if (label_count == 0) {
        throw ConfigError("label count must be at least 1");
    }
    // The hedge factor is clamped so that pv + pq = 1 within rounding gives pb = 0, not -1e-17.
    const double hedge = std::max(0.0, priors.hedge_factor(a.hedge));
    return priors.polarity_factor(a.polarity) * hedge / static_cast<double>(label_count);
}

std::size_t MassChain::rank_of(const HedgedLabel& h) const {
    for (std::size_t r = 0; r < order.size(); ++r) {
        if (order[r].label == h) {
            return r;
        }
    }
    throw ConfigError("hedged label not present in chain");
}

MassChain consonant_mass(std::vector<ChainEntry> entries) {
    std::stable_sort(entries.begin(), entries.end(), [](const ChainEntry& a, const ChainEntry& b) {
        if (a.appropriateness != b.appropriateness) {
            return a.appropriateness > b.appropriateness;
        }
        if (a.label.label != b.label.label) {
            return a.label.label < b.label.label;
        }
        return hedge_tie_rank(a.label.hedge) < hedge_tie_rank(b.label.hedge);
    });

    MassChain chain;
    const std::size_t size = entries.size();
    chain.prefix_mass.assign(size + 1, 0.0);
    if (size == 0) {
        chain.prefix_mass[0] = 1.0;
    } else {
        chain.prefix_mass[0] = 1.0 - entries.front().appropriateness;
        for (std::size_t k = 1; k < size; ++k) {
            chain.prefix_mass[k] = entries[k - 1].appropriateness - entries[k].appropriateness;
        }
        chain.prefix_mass[size] = entries.back().appropriateness;
    }
    chain.order = std::move(entries);
    return chain;
}

MassChain consonant_mass(std::span<const LabelDef> labels, const HedgeScales& hedges, const Point& x) {
    std::vector<ChainEntry> entries;
    entries.reserve(3 * labels.size());
    for (const auto& label : labels) {
        // Distance computed once per label; the three hedges only rescale it.
        const double d = distance(x, label.prototype);
        for (HedgeKind h : all_hedges) {
            const double mu = std::clamp(1.0 - d / (hedges.scale(h) * label.bound), 0.0, 1.0);
            entries.push_back({{h, label.index}, mu});
        }
    }
    return consonant_mass(std::move(entries));
}

Posterior::Posterior(std::size_t label_count, std::vector<double> probabilities)
    : label_count_(label_count), probs_(std::move(probabilities)) {
    if (probs_.size() != assertion_count(label_count_)) {
        throw ConfigError("posterior size does not match label count");
    }
}

Assertion Posterior::argmax() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < probs_.size(); ++i) {
        if (probs_[i] > probs_[best]) {
            best = i;
        }
    }
    return assertion_at(best, label_count_);
}

Posterior posterior(const MassChain& chain, const PriorConfig& priors, std::size_t label_count) {
    const std::size_t size = chain.size();
    if (size != 3 * label_count) {
        throw ConfigError("mass chain must cover all 3n hedged labels");
    }

    std::vector<double> pos_prior(size);
    std::vector<double> neg_prior(size);
    for (std::size_t r = 0; r < size; ++r) {
        const auto& h = chain.order[r].label;
        pos_prior[r] = assertion_prior({Polarity::positive, h.hedge, h.label}, priors, label_count);
        neg_prior[r] = assertion_prior({Polarity::negated, h.hedge, h.label}, priors, label_count);
    }

    // P(G_k) = sum of positive priors over the first k entries plus negated
    // priors over the rest.
    std::vector<double> neg_suffix(size + 1, 0.0);
    for (std::size_t r = size; r-- > 0;) {
        neg_suffix[r] = neg_suffix[r + 1] + neg_prior[r];
    }
    std::vector<double> weight(size + 1, 0.0);
    double pos_prefix = 0.0;
    bool dropped = false;
    for (std::size_t k = 0; k <= size; ++k) {
        if (k > 0) {
            pos_prefix += pos_prior[k - 1];
        }
        const double mass = chain.prefix_mass[k];
        if (mass <= 0.0) {
            continue;
        }
        const double normaliser = pos_prefix + neg_suffix[k];
        if (normaliser > 0.0) {
            weight[k] = mass / normaliser;
        } else {
            dropped = true;
        }
    }

    // Positive entry r belongs to G_k for k > r; its negation for k <= r.
    std::vector<double> weight_prefix(size + 2, 0.0);
    for (std::size_t k = 0; k <= size; ++k) {
        weight_prefix[k + 1] = weight_prefix[k] + weight[k];
    }
    const double weight_total = weight_prefix[size + 1];

    std::vector<double> probs(assertion_count(label_count), 0.0);
    for (std::size_t r = 0; r < size; ++r) {
        const auto& h = chain.order[r].label;
        const double above = weight_total - weight_prefix[r + 1];
        const double upto = weight_prefix[r + 1];
        probs[assertion_index({Polarity::positive, h.hedge, h.label}, label_count)] = pos_prior[r] * above;
        probs[assertion_index({Polarity::negated, h.hedge, h.label}, label_count)] = neg_prior[r] * upto;
    }

    if (dropped) {
        double total = 0.0;
        for (double p : probs) {
            total += p;
        }
        if (!(total > 0.0)) {
            throw UndefinedError("posterior undefined: every massed assertion set has zero prior");
        }
        for (double& p : probs) {
            p /= total;
        }
    }
    return Posterior(label_count, std::move(probs));
}

Posterior posterior(std::span<const LabelDef> labels, const HedgeScales& hedges, const Point& x,
                    const PriorConfig& priors) {
    if (labels.empty()) {
        throw ConfigError("label set must not be empty");
    }
    return posterior(consonant_mass(labels, hedges, x), priors, labels.size());
}

Assertion choose_assertion(std::span<const LabelDef> labels, const HedgeScales& hedges, const Point& x,
                           const PriorConfig& priors) {
    return posterior(labels, hedges, x, priors).argmax();
}

} // namespace hcg
