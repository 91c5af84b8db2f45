#include <cmath>
#include <numeric>

#include "doctest.h"

#include "hcg/assertion_model.hpp"
#include "hcg/errors.hpp"
#include "oracles.hpp"

using namespace hcg;

namespace {

constexpr int L1 = 0;
constexpr int L2 = 1;

// Appropriateness values of the two-label worked example.
std::vector<ChainEntry> worked_example_entries() {
    return {
        {{HedgeKind::very, L1}, 0.0}, {{HedgeKind::basic, L1}, 0.0}, {{HedgeKind::quite, L1}, 0.3},
        {{HedgeKind::very, L2}, 0.1}, {{HedgeKind::basic, L2}, 0.7}, {{HedgeKind::quite, L2}, 0.9},
    };
}

std::vector<oracle::Level> as_levels(const std::vector<ChainEntry>& entries) {
    std::vector<oracle::Level> out;
    for (const auto& e : entries) {
        out.push_back({e.label, e.appropriateness});
    }
    return out;
}

std::vector<LabelDef> random_labels(std::size_t n, Stream& rng) {
    std::vector<LabelDef> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(random_label(static_cast<int>(i), 3, rng));
    }
    return labels;
}

PriorConfig random_nondegenerate_priors(Stream& rng) {
    PriorConfig p;
    p.pp = rng.uniform(0.05, 0.95);
    p.pv = rng.uniform(0.05, 0.45);
    p.pq = rng.uniform(0.05, 0.45);
    return p;
}

} // namespace

TEST_CASE("assertion enumeration order") {
    const std::size_t n = 3;
    CHECK(assertion_count(n) == 18);
    CHECK(assertion_index({Polarity::positive, HedgeKind::very, 0}, n) == 0);
    CHECK(assertion_index({Polarity::positive, HedgeKind::very, 2}, n) == 2);
    CHECK(assertion_index({Polarity::positive, HedgeKind::basic, 0}, n) == 3);
    CHECK(assertion_index({Polarity::negated, HedgeKind::very, 0}, n) == 9);
    CHECK(assertion_index({Polarity::negated, HedgeKind::quite, 2}, n) == 17);
    for (std::size_t i = 0; i < assertion_count(n); ++i) {
        CHECK(assertion_index(assertion_at(i, n), n) == i);
    }
    CHECK_THROWS_AS(assertion_index({Polarity::positive, HedgeKind::basic, 3}, n), ConfigError);
    CHECK(to_string(Assertion{Polarity::negated, HedgeKind::quite, 1}) == "not quite L2");
    CHECK(to_string(Assertion{Polarity::positive, HedgeKind::basic, 0}) == "L1");
}

TEST_CASE("consonant mass reproduces the worked example") {
    const MassChain chain = consonant_mass(worked_example_entries());
    REQUIRE(chain.size() == 6);
    // Order: qL2, L2, qL1, vL2, L1, vL1.
    CHECK(chain.order[0].label == HedgedLabel{HedgeKind::quite, L2});
    CHECK(chain.order[1].label == HedgedLabel{HedgeKind::basic, L2});
    CHECK(chain.order[2].label == HedgedLabel{HedgeKind::quite, L1});
    CHECK(chain.order[3].label == HedgedLabel{HedgeKind::very, L2});
    CHECK(chain.order[4].label == HedgedLabel{HedgeKind::basic, L1});
    CHECK(chain.order[5].label == HedgedLabel{HedgeKind::very, L1});

    const double expected[7] = {0.1, 0.2, 0.4, 0.2, 0.1, 0.0, 0.0}; // empty, F1..F6
    for (std::size_t k = 0; k <= 6; ++k) {
        CHECK(std::abs(chain.mass_of_prefix(k) - expected[k]) <= 1e-12);
    }
}

TEST_CASE("consonant mass degenerate cases") {
    SUBCASE("nothing applies") {
        std::vector<ChainEntry> entries;
        for (int i = 0; i < 2; ++i) {
            for (HedgeKind h : all_hedges) {
                entries.push_back({{h, i}, 0.0});
            }
        }
        const MassChain chain = consonant_mass(entries);
        CHECK(chain.empty_mass() == 1.0);
        for (std::size_t k = 1; k <= chain.size(); ++k) {
            CHECK(chain.mass_of_prefix(k) == 0.0);
        }
    }
    SUBCASE("single certain label") {
        const MassChain chain = consonant_mass({{{HedgeKind::basic, 0}, 1.0}});
        CHECK(chain.mass_of_prefix(1) == 1.0);
        CHECK(chain.empty_mass() == 0.0);
    }
}

TEST_CASE("tie-break: label index then quite < basic < very") {
    const MassChain chain = consonant_mass({
        {{HedgeKind::very, 1}, 0.5},
        {{HedgeKind::basic, 1}, 0.5},
        {{HedgeKind::quite, 0}, 0.5},
        {{HedgeKind::quite, 1}, 0.5},
    });
    CHECK(chain.order[0].label == HedgedLabel{HedgeKind::quite, 0});
    CHECK(chain.order[1].label == HedgedLabel{HedgeKind::quite, 1});
    CHECK(chain.order[2].label == HedgedLabel{HedgeKind::basic, 1});
    CHECK(chain.order[3].label == HedgedLabel{HedgeKind::very, 1});
}

TEST_CASE("assertion priors") {
    const PriorConfig p{0.7, 0.7, 0.2};
    CHECK(assertion_prior({Polarity::negated, HedgeKind::very, L2}, p, 2) == doctest::Approx(0.105).epsilon(1e-14));
    CHECK(assertion_prior({Polarity::positive, HedgeKind::quite, L1}, p, 2) == doctest::Approx(0.07).epsilon(1e-14));
    CHECK(assertion_prior({Polarity::positive, HedgeKind::basic, 0}, PriorConfig{1.0, 0.0, 0.0}, 1) == 1.0);

    Stream rng(3);
    for (int t = 0; t < 100; ++t) {
        PriorConfig q{rng.uniform(), rng.uniform(0, 0.5), rng.uniform(0, 0.5)};
        const std::size_t n = 1 + rng.below(6);
        double total = 0.0;
        for (std::size_t i = 0; i < assertion_count(n); ++i) {
            total += assertion_prior(assertion_at(i, n), q, n);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("prior config validation") {
    CHECK_NOTHROW((PriorConfig{0.5, 0.7, 0.3}.validate()));
    CHECK_THROWS_AS((PriorConfig{1.2, 0.0, 0.0}.validate()), ConfigError);
    CHECK_THROWS_AS((PriorConfig{0.5, 0.7, 0.4}.validate()), ConfigError);
    CHECK_THROWS_AS((PriorConfig{0.5, -0.1, 0.4}.validate()), ConfigError);
}

TEST_CASE("posterior reproduces the worked example") {
    const MassChain chain = consonant_mass(worked_example_entries());
    const Posterior post = posterior(chain, PriorConfig{0.7, 0.7, 0.2}, 2);
    CHECK(post[{Polarity::positive, HedgeKind::very, L1}] == 0.0);
    const double expected = 0.07 * (0.1 / 0.54 + 0.2 / 0.4);
    CHECK(std::abs(post[{Polarity::positive, HedgeKind::quite, L1}] - expected) <= 1e-9);
    double total = 0.0;
    for (double v : post.values()) {
        total += v;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("worked-example argmax against exact rational enumeration") {
    const auto entries = worked_example_entries();
    const PriorConfig priors{0.7, 0.7, 0.2};
    const auto exact = oracle::posterior_by_enumeration<oracle::Rational>(as_levels(entries), priors, 2);
    const Posterior post = posterior(consonant_mass(entries), priors, 2);

    std::size_t exact_best = 0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        CHECK(std::abs(post.values()[i] - exact[i].convert_to<double>()) < 1e-12);
        if (exact[i] > exact[exact_best]) {
            exact_best = i;
        }
    }
    // Frozen from the enumeration: "not very L1" with 3493/12240 (decimal inputs treated exactly).
    const Assertion best = post.argmax();
    CHECK(best == Assertion{Polarity::negated, HedgeKind::very, L1});
    CHECK(assertion_index(best, 2) == exact_best);
    CHECK(post[best] == doctest::Approx(3493.0 / 12240.0).epsilon(1e-12));
    CHECK(post[{Polarity::positive, HedgeKind::quite, L2}] == doctest::Approx(15323.0 / 91800.0).epsilon(1e-12));
}

TEST_CASE("posterior degenerate priors") {
    SUBCASE("single basic label at its prototype, only basic positives allowed") {
        const std::vector<LabelDef> labels{{Point{0.3, 0.3, 0.3}, 1.0, 0}};
        const Point x{0.3, 0.3, 0.3};
        const PriorConfig priors{1.0, 0.0, 0.0};
        CHECK(choose_assertion(labels, HedgeScales{}, x, priors) == Assertion{Polarity::positive, HedgeKind::basic, 0});
        CHECK(posterior(labels, HedgeScales{}, x, priors)[{Polarity::positive, HedgeKind::basic, 0}] == 1.0);
    }
    SUBCASE("nothing applies: mass on the all-negations set") {
        std::vector<LabelDef> labels{{Point{0.0, 0.0, 0.0}, 0.1, 0}, {Point{1.0, 1.0, 1.0}, 0.1, 1}};
        const Point x{0.5, 0.5, 0.5};
        const PriorConfig priors{0.6, 0.2, 0.3};
        const Posterior post = posterior(labels, HedgeScales{}, x, priors);
        for (std::size_t i = 0; i < 3 * labels.size(); ++i) {
            CHECK(post.values()[i] == 0.0);
        }
        CHECK(post.argmax().polarity == Polarity::negated);
        const auto oracle_post = oracle::posterior_by_enumeration<double>(oracle::levels_for(labels, HedgeScales{}, x), priors, 2);
        CHECK(assertion_index(post.argmax(), 2) ==
              static_cast<std::size_t>(std::max_element(oracle_post.begin(), oracle_post.end()) - oracle_post.begin()));
    }
    SUBCASE("baseline priors never assert a hedge") {
        Stream rng(31);
        for (int t = 0; t < 2000; ++t) {
            const auto labels = random_labels(4, rng);
            const Point x = Point::uniform(3, rng);
            const PriorConfig priors{rng.uniform(0.1, 0.9), 0.0, 0.0};
            const Posterior post = posterior(labels, HedgeScales{}, x, priors);
            CHECK(post.argmax().hedge == HedgeKind::basic);
            double total = std::accumulate(post.values().begin(), post.values().end(), 0.0);
            CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("all mass dropped is undefined") {
        // pp = 1 leaves negations without prior; nothing applies, so only the
        // all-negations set has mass.
        const std::vector<LabelDef> labels{{Point{0.0, 0.0, 0.0}, 0.1, 0}, {Point{1.0, 1.0, 1.0}, 0.1, 1}};
        CHECK_THROWS_AS(posterior(labels, HedgeScales{}, Point{0.5, 0.5, 0.5}, PriorConfig{1.0, 0.0, 0.0}), UndefinedError);
    }
    SUBCASE("partially dropped mass renormalises") {
        const std::vector<LabelDef> labels{{Point{0.5, 0.5, 0.5}, 1.0, 0}, {Point{1.0, 1.0, 1.0}, 0.2, 1}};
        const Point x{0.6, 0.5, 0.5};
        const PriorConfig priors{1.0, 0.3, 0.3};
        const Posterior post = posterior(labels, HedgeScales{}, x, priors);
        const double total = std::accumulate(post.values().begin(), post.values().end(), 0.0);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        const auto oracle_post = oracle::posterior_by_enumeration<double>(oracle::levels_for(labels, HedgeScales{}, x), priors, 2);
        for (std::size_t i = 0; i < oracle_post.size(); ++i) {
            CHECK(std::abs(post.values()[i] - oracle_post[i]) < 1e-12);
        }
    }
}

TEST_CASE("mass and posterior normalisation on random configurations") {
    Stream rng(77);
    for (int t = 0; t < 100; ++t) {
        const auto labels = random_labels(1 + rng.below(6), rng);
        const Point x = Point::uniform(3, rng);
        const PriorConfig priors = random_nondegenerate_priors(rng);
        const MassChain chain = consonant_mass(labels, HedgeScales{}, x);
        double mass = 0.0;
        for (double m : chain.prefix_mass) {
            CHECK(m >= 0.0);
            mass += m;
        }
        CHECK(std::abs(mass - 1.0) <= 1e-12);
        const Posterior post = posterior(chain, priors, labels.size());
        const double total = std::accumulate(post.values().begin(), post.values().end(), 0.0);
        CHECK(std::abs(total - 1.0) <= 1e-9);
    }
}

TEST_CASE("chain nestedness and hedge ordering") {
    Stream rng(101);
    for (int t = 0; t < 500; ++t) {
        const auto labels = random_labels(1 + rng.below(5), rng);
        const Point x = Point::uniform(3, rng);
        const MassChain chain = consonant_mass(labels, HedgeScales{}, x);
        for (std::size_t r = 1; r < chain.size(); ++r) {
            CHECK(chain.order[r - 1].appropriateness >= chain.order[r].appropriateness);
        }
        for (const auto& l : labels) {
            const auto rv = chain.rank_of({HedgeKind::very, l.index});
            const auto rb = chain.rank_of({HedgeKind::basic, l.index});
            const auto rq = chain.rank_of({HedgeKind::quite, l.index});
            CHECK(rq < rb);
            CHECK(rb < rv);
        }
    }
}

TEST_CASE("nested-chain posterior equals explicit G-set enumeration") {
    Stream rng(404);
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 1 + rng.below(3);
        const auto labels = random_labels(n, rng);
        const Point x = Point::uniform(3, rng);
        const PriorConfig priors = random_nondegenerate_priors(rng);
        const Posterior fast = posterior(labels, HedgeScales{}, x, priors);
        const auto slow = oracle::posterior_by_enumeration<double>(oracle::levels_for(labels, HedgeScales{}, x), priors, n);
        for (std::size_t i = 0; i < slow.size(); ++i) {
            worst = std::max(worst, std::abs(fast.values()[i] - slow[i]));
        }
    }
    CHECK(worst < 1e-12);
}
