#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hcg/conceptual_space.hpp"

namespace hcg {

enum class Polarity : int { positive = 0, negated = 1 };

// A literal of the assertion set: (not)? (very|quite)? L_i.
struct Assertion {
    Polarity polarity = Polarity::positive;
    HedgeKind hedge = HedgeKind::basic;
    int label = 0;

    friend bool operator==(const Assertion&, const Assertion&) = default;
};

// Fixed enumeration order over the 6n assertions: polarity (positive
// first), then hedge (very, basic, quite), then label index. Argmax ties
// resolve to the lowest index.
std::size_t assertion_index(const Assertion& a, std::size_t label_count);
Assertion assertion_at(std::size_t index, std::size_t label_count);
inline std::size_t assertion_count(std::size_t label_count) { return 6 * label_count; }

// "quite L1", "not very L3", ... (labels printed 1-based).
std::string to_string(const Assertion& a);

// Priors over the assertion set: pp for positive polarity, pv/pq for the
// very/quite hedges. pn = 1 - pp and pb = 1 - pv - pq.
struct PriorConfig {
    double pp = 0.5;
    double pv = 0.0;
    double pq = 0.0;

    double pn() const noexcept { return 1.0 - pp; }
    double pb() const noexcept { return 1.0 - pv - pq; }

    double polarity_factor(Polarity p) const noexcept { return p == Polarity::positive ? pp : pn(); }
    double hedge_factor(HedgeKind h) const noexcept;

    void validate() const;

    friend bool operator==(const PriorConfig&, const PriorConfig&) = default;
};

// Prior of one assertion: polarity factor * hedge factor / n.
double assertion_prior(const Assertion& a, const PriorConfig& priors, std::size_t label_count);

struct HedgedLabel {
    HedgeKind hedge = HedgeKind::basic;
    int label = 0;

    friend bool operator==(const HedgedLabel&, const HedgedLabel&) = default;
};

struct ChainEntry {
    HedgedLabel label;
    double appropriateness = 0.0;
};

// Consonant mass function over the nested prefix sets F_k of hedged labels
// sorted by non-increasing appropriateness.
//   mass(F_k) = mu_(k) - mu_(k+1) for 1 <= k < size, mass(F_size) = mu_(size),
//   mass(empty) = 1 - mu_(1).
struct MassChain {
    std::vector<ChainEntry> order;
    // prefix_mass[k] is the mass of the first k entries; prefix_mass[0] is the empty set.
    std::vector<double> prefix_mass;

    std::size_t size() const noexcept { return order.size(); }
    double empty_mass() const { return prefix_mass.front(); }
    double mass_of_prefix(std::size_t k) const { return prefix_mass.at(k); }
    // Position of a hedged label in the sorted order; throws if absent.
    std::size_t rank_of(const HedgedLabel& h) const;
};

// Sorts by appropriateness (descending), ties broken by label index
// ascending then hedge order quite < basic < very, and builds the masses.
MassChain consonant_mass(std::vector<ChainEntry> entries);

// All 3n hedged labels of a label set evaluated at x.
MassChain consonant_mass(std::span<const LabelDef> labels, const HedgeScales& hedges, const Point& x);

// P(theta | x) for every assertion, indexed by assertion_index.
class Posterior {
public:
    Posterior(std::size_t label_count, std::vector<double> probabilities);

    std::size_t label_count() const noexcept { return label_count_; }
    double operator[](const Assertion& a) const { return probs_[assertion_index(a, label_count_)]; }
    std::span<const double> values() const noexcept { return probs_; }

    // First maximal entry in enumeration order.
    Assertion argmax() const;

private:
    std::size_t label_count_;
    std::vector<double> probs_;
};

// Posterior from a mass chain over the 3n hedged labels of `label_count`
// labels. Only G_k = F_k + {not h : h outside F_k} carry mass. Assertions
// with zero prior never count towards P(G_k); a G_k with mass but P(G_k) = 0
// is dropped and the remainder renormalised. Throws UndefinedError when no
// mass survives.
Posterior posterior(const MassChain& chain, const PriorConfig& priors, std::size_t label_count);

Posterior posterior(std::span<const LabelDef> labels, const HedgeScales& hedges, const Point& x,
                    const PriorConfig& priors);

// The speaker's most probable assertion.
Assertion choose_assertion(std::span<const LabelDef> labels, const HedgeScales& hedges, const Point& x,
                           const PriorConfig& priors);

} // namespace hcg
