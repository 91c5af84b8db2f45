#include "hcg/conceptual_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hcg/errors.hpp"

namespace hcg {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {}

Point::Point(std::initializer_list<double> coords) : coords_(coords) {}

void Point::validate() const {
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        const double c = coords_[i];
        if (!(c >= 0.0 && c <= 1.0)) {
            throw ConfigError("point coordinate " + std::to_string(i) + " = " + std::to_string(c) +
                              " outside [0,1]");
        }
    }
}

Point Point::uniform(std::size_t dimension, Stream& rng) {
    std::vector<double> c(dimension);
    for (auto& v : c) {
        v = rng.uniform();
    }
    return Point(std::move(c));
}

double distance(const Point& x, const Point& y) {
    if (x.dimension() != y.dimension()) {
        throw ConfigError("dimension mismatch: " + std::to_string(x.dimension()) + " vs " +
                          std::to_string(y.dimension()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < x.dimension(); ++i) {
        const double d = x[i] - y[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

Point interpolate_clamped(const Point& from, const Point& to, double t) {
    if (from.dimension() != to.dimension()) {
        throw ConfigError("dimension mismatch in interpolation");
    }
    std::vector<double> c(from.dimension());
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] = std::clamp(from[i] + t * (to[i] - from[i]), 0.0, 1.0);
    }
    return Point(std::move(c));
}

std::string_view to_string(HedgeKind kind) noexcept {
    switch (kind) {
    case HedgeKind::very: return "very";
    case HedgeKind::basic: return "basic";
    case HedgeKind::quite: return "quite";
    }
    return "?";
}

void HedgeScales::validate() const {
    if (!(very > 0.0 && very < 1.0)) {
        throw ConfigError("very-scale must lie in (0,1), got " + std::to_string(very));
    }
    if (!(quite > 1.0 && std::isfinite(quite))) {
        throw ConfigError("quite-scale must exceed 1, got " + std::to_string(quite));
    }
}

void LabelDef::validate() const {
    if (!(bound > 0.0 && std::isfinite(bound))) {
        throw ConfigError("label bound must be positive, got " + std::to_string(bound));
    }
    prototype.validate();
}

LabelDef random_label(int index, std::size_t dimension, Stream& rng) {
    LabelDef label;
    label.prototype = Point::uniform(dimension, rng);
    label.bound = rng.uniform(min_initial_bound, max_initial_bound);
    label.index = index;
    return label;
}

double appropriateness(const LabelDef& label, double scale, const Point& x) {
    const double d = distance(x, label.prototype);
    return std::clamp(1.0 - d / (scale * label.bound), 0.0, 1.0);
}

double negated_appropriateness(const LabelDef& label, double scale, const Point& x) {
    const double d = distance(x, label.prototype);
    return std::min(d / (scale * label.bound), 1.0);
}

} // namespace hcg
