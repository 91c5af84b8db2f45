#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace hcg {

// SplitMix64 finaliser; used both as a generator step and for keying
// substreams, so every stream is a pure function of its key.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Folds a sequence of words into one seed. Order-sensitive.
constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words) noexcept {
    std::uint64_t h = 0x6a09e667f3bcc909ULL;
    for (auto w : words) {
        h = mix64(h ^ mix64(w));
    }
    return h;
}

// Small counter-based generator satisfying UniformRandomBitGenerator.
// The standard distributions are implementation-defined, so the helpers
// below are used instead to keep streams identical across toolchains.
class Stream {
public:
    using result_type = std::uint64_t;

    explicit constexpr Stream(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1) with 53 bits of resolution.
    double uniform() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, bound). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t r;
        do {
            r = (*this)();
        } while (r >= limit);
        return r % bound;
    }

    constexpr std::uint64_t state() const noexcept { return state_; }

    friend constexpr bool operator==(const Stream&, const Stream&) = default;

private:
    std::uint64_t state_;
};

// Domain tags keep substreams for different purposes disjoint.
enum class StreamTag : std::uint64_t {
    init = 1,
    pairing = 2,
    interaction = 3,
    rebirth = 4,
};

inline Stream substream(std::uint64_t seed, StreamTag tag, std::uint64_t a = 0, std::uint64_t b = 0) {
    return Stream(derive_seed({seed, static_cast<std::uint64_t>(tag), a, b}));
}

} // namespace hcg
