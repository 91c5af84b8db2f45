#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "hcg/rng.hpp"

namespace hcg {

// A point of the unit hypercube [0,1]^m.
class Point {
public:
    Point() = default;
    explicit Point(std::vector<double> coords);
    Point(std::initializer_list<double> coords);

    std::size_t dimension() const noexcept { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    std::span<const double> coords() const noexcept { return coords_; }

    // Throws ConfigError when a coordinate is outside [0,1] or non-finite.
    void validate() const;

    static Point uniform(std::size_t dimension, Stream& rng);

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

// Euclidean distance. Throws ConfigError on dimension mismatch.
double distance(const Point& x, const Point& y);

// from + t * (to - from), clamped coordinate-wise into [0,1].
// t may be negative (moves away from `to`).
Point interpolate_clamped(const Point& from, const Point& to, double t);

enum class HedgeKind : int { very = 0, basic = 1, quite = 2 };

inline constexpr std::array<HedgeKind, 3> all_hedges{HedgeKind::very, HedgeKind::basic, HedgeKind::quite};

std::string_view to_string(HedgeKind kind) noexcept;

// Threshold scale factors for the contraction ("very") and expansion
// ("quite") hedges. The basic label has scale 1.
struct HedgeScales {
    double very = 0.5;
    double quite = 2.0;

    double scale(HedgeKind kind) const noexcept {
        switch (kind) {
        case HedgeKind::very: return very;
        case HedgeKind::quite: return quite;
        case HedgeKind::basic: break;
        }
        return 1.0;
    }

    // Requires 0 < very < 1 < quite.
    void validate() const;

    friend bool operator==(const HedgeScales&, const HedgeScales&) = default;
};

// A concept: prototype plus the upper limit `bound` of its uniform
// threshold distribution, epsilon ~ U(0, bound).
struct LabelDef {
    Point prototype;
    double bound = 1.0;
    int index = 0;

    void validate() const;

    friend bool operator==(const LabelDef&, const LabelDef&) = default;
};

inline constexpr double min_initial_bound = 0.5;
inline constexpr double max_initial_bound = 2.0;

// Uniform prototype on the cube, bound ~ U[0.5, 2].
LabelDef random_label(int index, std::size_t dimension, Stream& rng);

// P(epsilon >= d(x, P)) for epsilon ~ U(0, scale * bound), i.e.
// clamp(1 - d / (scale * bound), 0, 1).
double appropriateness(const LabelDef& label, double scale, const Point& x);

// Appropriateness of the negated label: 1 - appropriateness.
double negated_appropriateness(const LabelDef& label, double scale, const Point& x);

} // namespace hcg
